#include "nff/optimizer.hpp"

#include "nff/pair_interactions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace nff {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pair energy of raw sorted positions, accumulated over value-sorted
// separations exactly like total_potential, plus optional lattice terms.
double configuration_energy(const std::vector<double>& x, const Spectrum& spectrum,
                            const std::optional<LatticePotential>& lattice) {
  std::vector<double> separations;
  separations.reserve(x.size() * (x.size() - 1) / 2);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t l = j + 1; l < x.size(); ++l)
      separations.push_back(x[l] - x[j]);
  std::sort(separations.begin(), separations.end());
  double energy = 0.0;
  for (double d : separations) energy += pair_potential(d, spectrum);
  if (lattice) {
    for (double xj : x) energy += lattice_potential_value(xj, *lattice);
  }
  return energy;
}

std::vector<double> net_forces(const std::vector<double>& x,
                               const Spectrum& spectrum,
                               const std::optional<LatticePotential>& lattice) {
  const std::size_t n = x.size();
  std::vector<double> f(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = j + 1; l < n; ++l)
      f[j] += pair_force(x[l] - x[j], spectrum);
    for (std::size_t l = 0; l < j; ++l)
      f[j] -= pair_force(x[j] - x[l], spectrum);
    if (lattice) f[j] += lattice_force(x[j], *lattice);
  }
  return f;
}

bool ordered(const std::vector<double>& x) {
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    if (!(x[j] < x[j + 1])) return false;
  }
  return true;
}

}  // namespace

WellRanking enumerate_well_configs(int num_particles, int wells_min, int wells_max,
                                   const Spectrum& spectrum,
                                   const LatticePotential& lattice,
                                   std::uint64_t cap, int threads) {
  if (num_particles < 1)
    throw std::invalid_argument("need at least one particle");
  const int width = wells_max - wells_min + 1;
  if (width < num_particles)
    throw std::invalid_argument("well range is smaller than the particle count");
  if (!(lattice.wavenumber > 0.0))
    throw std::invalid_argument("lattice wavenumber must be positive");

  // C(width, num_particles), bailing out as soon as the cap is passed.
  std::uint64_t count = 1;
  for (int i = 1; i <= num_particles; ++i) {
    count = count * static_cast<std::uint64_t>(width - num_particles + i) /
            static_cast<std::uint64_t>(i);
    if (count > cap)
      throw std::invalid_argument(
          "assignment count exceeds the configured cap");
  }

  WellRanking ranking;
  ranking.entries.reserve(count);
  std::vector<int> wells(num_particles);
  for (int i = 0; i < num_particles; ++i) wells[i] = wells_min + i;
  // Odometer over strictly increasing assignments, in lexicographic order.
  while (true) {
    ranking.entries.push_back({wells, 0.0});
    int pos = num_particles - 1;
    while (pos >= 0 && wells[pos] == wells_max - (num_particles - 1 - pos)) --pos;
    if (pos < 0) break;
    ++wells[pos];
    for (int i = pos + 1; i < num_particles; ++i) wells[i] = wells[pos] + i - pos;
  }

  const double spacing = kPi / lattice.wavenumber;
  auto assignment_energy = [&](const std::vector<int>& z) {
    // Separations from integer well differences so that mirror-image
    // assignments produce bit-identical energies; particles sit at exact well
    // bottoms, where each contributes exactly -depth of lattice energy.
    std::vector<double> separations;
    separations.reserve(z.size() * (z.size() - 1) / 2);
    for (std::size_t j = 0; j < z.size(); ++j)
      for (std::size_t l = j + 1; l < z.size(); ++l)
        separations.push_back(static_cast<double>(z[l] - z[j]) * spacing);
    std::sort(separations.begin(), separations.end());
    double energy = -lattice.depth * static_cast<double>(z.size());
    for (double d : separations) energy += pair_potential(d, spectrum);
    return energy;
  };

  const std::size_t total = ranking.entries.size();
  threads = std::max(1, threads);
  if (threads == 1 || total < 2048) {
    for (WellAssignment& entry : ranking.entries)
      entry.energy = assignment_energy(entry.wells);
  } else {
    // Fixed-size chunks claimed by an atomic counter; every entry's energy is
    // written to its own slot, so the result is identical for any thread count.
    constexpr std::size_t kChunk = 1024;
    std::atomic<std::size_t> next_chunk{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t begin = next_chunk.fetch_add(1) * kChunk;
        if (begin >= total) return;
        const std::size_t end = std::min(begin + kChunk, total);
        for (std::size_t i = begin; i < end; ++i)
          ranking.entries[i].energy = assignment_energy(ranking.entries[i].wells);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const WellAssignment& a, const WellAssignment& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.wells < b.wells;
            });
  return ranking;
}

RelaxResult local_relax(const ParticleChain& chain, const Spectrum& spectrum,
                        const std::optional<LatticePotential>& lattice,
                        double tolerance, int max_iterations) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  double k_scale = lattice ? lattice->wavenumber : 0.0;
  if (!lattice) {
    for (const SpectralLine& line : spectrum.lines)
      k_scale = std::max(k_scale, line.wavenumber);
    if (k_scale == 0.0) k_scale = 1.0;
  }
  const double step_init = 0.01 / k_scale;

  std::vector<double> x = chain.positions();
  const std::vector<double> x0 = x;
  double energy = configuration_energy(x, spectrum, lattice);

  RelaxReport report;
  double step = step_init;
  while (report.iterations < max_iterations) {
    const std::vector<double> f = net_forces(x, spectrum, lattice);
    double f_max = 0.0;
    for (double fj : f) f_max = std::max(f_max, std::abs(fj));
    report.residual = f_max;
    if (f_max < tolerance) {
      report.converged = true;
      break;
    }

    // Move along the force direction, at most `step` per particle; halve on
    // uphill moves and on moves that would reorder the chain.
    bool accepted = false;
    while (step > 1e-16 * step_init) {
      std::vector<double> trial = x;
      for (std::size_t j = 0; j < x.size(); ++j)
        trial[j] += step * f[j] / f_max;
      if (ordered(trial)) {
        const double trial_energy = configuration_energy(trial, spectrum, lattice);
        if (trial_energy < energy) {
          x = std::move(trial);
          energy = trial_energy;
          report.energies.push_back(energy);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    ++report.iterations;
    if (!accepted) break;  // stalled at numerical precision
    step = std::min(2.0 * step, step_init);
  }

  report.left_well.assign(x.size(), false);
  if (lattice) {
    const double half_well = kPi / (2.0 * lattice->wavenumber);
    for (std::size_t j = 0; j < x.size(); ++j) {
      report.left_well[j] = std::abs(x[j] - x0[j]) > half_well;
      report.any_left_well = report.any_left_well || report.left_well[j];
    }
  }
  return RelaxResult{ParticleChain(x), report};
}

LandscapeCurve landscape_scan(std::size_t j, const ParticleChain& chain,
                              const Spectrum& spectrum,
                              const LatticePotential& lattice, double grid_min,
                              double grid_max, std::size_t grid_samples) {
  if (j >= chain.size()) throw std::out_of_range("particle index out of range");
  if (grid_samples < 2 || !(grid_max > grid_min))
    throw std::invalid_argument("scan grid needs at least two ordered points");
  if (j > 0 && !(grid_min > chain[j - 1]))
    throw std::invalid_argument("scan range reaches the left neighbor");
  if (j + 1 < chain.size() && !(grid_max < chain[j + 1]))
    throw std::invalid_argument("scan range reaches the right neighbor");

  LandscapeCurve curve;
  curve.xs.resize(grid_samples);
  curve.interaction.resize(grid_samples);
  curve.lattice.resize(grid_samples);
  for (std::size_t i = 0; i < grid_samples; ++i) {
    const double x = grid_min + (grid_max - grid_min) * static_cast<double>(i) /
                                    static_cast<double>(grid_samples - 1);
    double u = 0.0;
    for (std::size_t l = 0; l < chain.size(); ++l) {
      if (l != j) u += pair_potential(std::abs(x - chain[l]), spectrum);
    }
    curve.xs[i] = x;
    curve.interaction[i] = u;
    curve.lattice[i] = lattice_potential_value(x, lattice);
  }
  return curve;
}

}  // namespace nff
