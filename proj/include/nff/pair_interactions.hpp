#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nff/core_types.hpp"

// Closed-form weak-coupling interactions: spectral force density, integrated
// pair forces and potentials, N-particle sums, the external lattice, and the
// harmonic expansion around lattice well bottoms.
//
// Sign convention: pair_force(d) is the force on the LEFT particle of a pair;
// positive values push it toward +x, i.e. toward its partner (attraction).

namespace nff {

// Spectral density of the force on particle j at angular frequency omega:
// (I(omega)/c) * (sum_{l>j} cos(n omega (x_l-x_j)/c)
//                - sum_{l<j} cos(n omega (x_j-x_l)/c)).
// I(omega) sums the Lorentzian profiles of the broadened lines only;
// zero-linewidth lines have no pointwise density (their weight sits at a
// single frequency and appears in the integrated quantities below).
double spectral_force_density(std::size_t j, const ParticleChain& chain,
                              double omega, const Spectrum& spectrum);

// Frequency-integrated force between two particles at separation d >= 0:
// sum_m (I_m/(n c)) e^{-gamma_m d} cos(k_m d).
double pair_force(double distance, const Spectrum& spectrum);

// Pair interaction energy, with pair_force = d(pair_potential)/dd:
// sum_m I_m e^{-gamma_m d} (k_m sin(k_m d) - gamma_m cos(k_m d))
//       / (n c (k_m^2 + gamma_m^2)).
double pair_potential(double distance, const Spectrum& spectrum);

// Net light-induced force on particle j of a chain:
// sum_{l>j} pair_force(d_jl) - sum_{l<j} pair_force(d_jl).
double force_on_particle(std::size_t j, const ParticleChain& chain,
                         const Spectrum& spectrum);

// Light-induced potential seen by particle j: sum_{l != j} pair_potential(d_jl).
// Its negative derivative in x_j is force_on_particle(j).
double single_particle_potential(std::size_t j, const ParticleChain& chain,
                                 const Spectrum& spectrum);

// Total energy: half the sum of single-particle potentials (each pair counted
// once) plus, if given, the lattice energy of every particle. The pair part is
// accumulated in a label-independent order so mirror-image chains produce
// bit-identical energies.
double total_potential(const ParticleChain& chain, const Spectrum& spectrum,
                       const std::optional<LatticePotential>& lattice = {});

// V(x) = -depth cos^2(k_V x) and its force -dV/dx = -depth k_V sin(2 k_V x).
double lattice_potential_value(double x, const LatticePotential& lattice);
double lattice_force(double x, const LatticePotential& lattice);

// Second-order expansion of the pair energy for particles trapped near well
// bottoms x_j = z_j pi/k_V + Delta_j, valid for monochromatic lines only.
// For the pair (left, right) with well distance D = z_right - z_left and
// delta = Delta_right - Delta_left:
//   U_pair ~ constant + linear * delta + quadratic * delta^2
// with constant  = sum_m (I_m/(n c k_m)) sin(pi D k_m/k_V),
//      linear    = sum_m (I_m/(n c))     cos(pi D k_m/k_V),
//      quadratic = -sum_m (I_m k_m/(2 n c)) sin(pi D k_m/k_V).
struct PairCoupling {
  std::size_t left = 0;
  std::size_t right = 0;
  double constant = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
};

// The lattice itself contributes trap_curvature * Delta_j^2 = V0 k_V^2 Delta_j^2
// per particle on top of the pair couplings.
struct HarmonicExpansion {
  double trap_curvature = 0.0;
  std::vector<PairCoupling> couplings;  // one entry per pair, left < right
};

// Builds the expansion for particles at the given strictly increasing well
// indices. Throws std::invalid_argument if any line has a nonzero linewidth
// (the expansion assumes undamped cosine interactions) or if the well indices
// are not strictly increasing.
HarmonicExpansion harmonic_expansion(const std::vector<int>& well_indices,
                                     const Spectrum& spectrum,
                                     const LatticePotential& lattice);

}  // namespace nff
