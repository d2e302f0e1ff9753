#include "nff/pair_interactions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nff {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_index(std::size_t j, const ParticleChain& chain) {
  if (j >= chain.size()) throw std::out_of_range("particle index out of range");
}

void check_distance(double d) {
  if (!(d >= 0.0)) throw std::invalid_argument("separation must be non-negative");
}

}  // namespace

double spectral_force_density(std::size_t j, const ParticleChain& chain,
                              double omega, const Spectrum& spectrum) {
  check_index(j, chain);
  const double n = spectrum.refractive_index;

  // Lorentzian density in angular frequency; zero-linewidth lines carry their
  // whole weight at a single frequency and do not contribute pointwise.
  double density = 0.0;
  for (const SpectralLine& line : spectrum.lines) {
    if (line.linewidth == 0.0) continue;
    const double omega_m = line.wavenumber * speed_of_light / n;
    const double detune = n * (omega - omega_m);
    density += line.intensity / kPi * speed_of_light * line.linewidth /
               (speed_of_light * speed_of_light * line.linewidth * line.linewidth +
                detune * detune);
  }

  double geometry = 0.0;
  for (std::size_t l = 0; l < chain.size(); ++l) {
    if (l == j) continue;
    const double phase = n * omega * chain.separation(j, l) / speed_of_light;
    geometry += (l > j) ? std::cos(phase) : -std::cos(phase);
  }
  return density / speed_of_light * geometry;
}

double pair_force(double distance, const Spectrum& spectrum) {
  check_distance(distance);
  const double nc = spectrum.refractive_index * speed_of_light;
  double force = 0.0;
  for (const SpectralLine& line : spectrum.lines) {
    force += line.intensity / nc * std::exp(-line.linewidth * distance) *
             std::cos(line.wavenumber * distance);
  }
  return force;
}

double pair_potential(double distance, const Spectrum& spectrum) {
  check_distance(distance);
  const double nc = spectrum.refractive_index * speed_of_light;
  double energy = 0.0;
  for (const SpectralLine& line : spectrum.lines) {
    const double k = line.wavenumber, g = line.linewidth;
    energy += line.intensity * std::exp(-g * distance) *
              (k * std::sin(k * distance) - g * std::cos(k * distance)) /
              (nc * (k * k + g * g));
  }
  return energy;
}

double force_on_particle(std::size_t j, const ParticleChain& chain,
                         const Spectrum& spectrum) {
  check_index(j, chain);
  double force = 0.0;
  for (std::size_t l = j + 1; l < chain.size(); ++l)
    force += pair_force(chain.separation(j, l), spectrum);
  for (std::size_t l = 0; l < j; ++l)
    force -= pair_force(chain.separation(j, l), spectrum);
  return force;
}

double single_particle_potential(std::size_t j, const ParticleChain& chain,
                                 const Spectrum& spectrum) {
  check_index(j, chain);
  double energy = 0.0;
  for (std::size_t l = 0; l < chain.size(); ++l) {
    if (l != j) energy += pair_potential(chain.separation(j, l), spectrum);
  }
  return energy;
}

double total_potential(const ParticleChain& chain, const Spectrum& spectrum,
                       const std::optional<LatticePotential>& lattice) {
  // Summing each pair once over distances sorted by value keeps the result
  // independent of particle labeling, so mirror-image chains tie exactly.
  std::vector<double> separations;
  separations.reserve(chain.size() * (chain.size() - 1) / 2);
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (std::size_t l = j + 1; l < chain.size(); ++l)
      separations.push_back(chain.separation(j, l));
  std::sort(separations.begin(), separations.end());

  double energy = 0.0;
  for (double d : separations) energy += pair_potential(d, spectrum);
  if (lattice) {
    for (double x : chain.positions())
      energy += lattice_potential_value(x, *lattice);
  }
  return energy;
}

double lattice_potential_value(double x, const LatticePotential& lattice) {
  const double c = std::cos(lattice.wavenumber * x);
  return -lattice.depth * c * c;
}

double lattice_force(double x, const LatticePotential& lattice) {
  return -lattice.depth * lattice.wavenumber *
         std::sin(2.0 * lattice.wavenumber * x);
}

HarmonicExpansion harmonic_expansion(const std::vector<int>& well_indices,
                                     const Spectrum& spectrum,
                                     const LatticePotential& lattice) {
  for (const SpectralLine& line : spectrum.lines) {
    if (line.linewidth != 0.0)
      throw std::invalid_argument(
          "harmonic expansion requires zero-linewidth lines");
  }
  for (std::size_t j = 0; j + 1 < well_indices.size(); ++j) {
    if (well_indices[j] >= well_indices[j + 1])
      throw std::invalid_argument("well indices must be strictly increasing");
  }

  const double nc = spectrum.refractive_index * speed_of_light;
  HarmonicExpansion expansion;
  expansion.trap_curvature =
      lattice.depth * lattice.wavenumber * lattice.wavenumber;

  for (std::size_t j = 0; j < well_indices.size(); ++j) {
    for (std::size_t l = j + 1; l < well_indices.size(); ++l) {
      const double wells_apart = well_indices[l] - well_indices[j];
      PairCoupling coupling;
      coupling.left = j;
      coupling.right = l;
      for (const SpectralLine& line : spectrum.lines) {
        const double arg =
            kPi * wells_apart * line.wavenumber / lattice.wavenumber;
        const double s = std::sin(arg), c = std::cos(arg);
        coupling.constant += line.intensity / (nc * line.wavenumber) * s;
        coupling.linear += line.intensity / nc * c;
        coupling.quadratic -= line.intensity * line.wavenumber / (2.0 * nc) * s;
      }
      expansion.couplings.push_back(coupling);
    }
  }
  return expansion;
}

}  // namespace nff
