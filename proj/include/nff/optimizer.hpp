#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nff/core_types.hpp"

// Minimum-energy particle configurations: exhaustive ranking of lattice-well
// assignments and continuous local relaxation.

namespace nff {

struct WellAssignment {
  std::vector<int> wells;  // strictly increasing well indices
  double energy = 0.0;     // total potential with particles at the well bottoms
};

struct WellRanking {
  std::vector<WellAssignment> entries;  // sorted by energy, ties lexicographic
};

// Places num_particles at well bottoms x = z pi/k_V for every strictly
// increasing choice of z in [wells_min, wells_max] and ranks all C(W, N)
// assignments by total potential (ascending; exact energy ties broken by
// lexicographic assignment order). Throws std::invalid_argument when the
// assignment count would exceed `cap`. `threads` parallelizes the scan over
// fixed index chunks; results are identical for any thread count.
WellRanking enumerate_well_configs(int num_particles, int wells_min, int wells_max,
                                   const Spectrum& spectrum,
                                   const LatticePotential& lattice,
                                   std::uint64_t cap = 10'000'000,
                                   int threads = 1);

struct RelaxReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max |F_j| at exit
  std::vector<double> energies;  // total potential after each accepted move
  std::vector<bool> left_well;   // |x_j - x_j(0)| > pi/(2 k_V); lattice only
  bool any_left_well = false;
};

struct RelaxResult {
  ParticleChain chain;
  RelaxReport report;
};

// Gradient descent with backtracking line search (largest per-particle move
// starts at 0.01/k_V, halved until the energy decreases) to a stationary
// point with max |F_j| < tolerance. Particle ordering is enforced; moves that
// would reorder are rejected like uphill ones.
RelaxResult local_relax(const ParticleChain& chain, const Spectrum& spectrum,
                        const std::optional<LatticePotential>& lattice,
                        double tolerance = 1e-8, int max_iterations = 200000);

struct LandscapeCurve {
  std::vector<double> xs;
  std::vector<double> interaction;  // single_particle_potential with x_j = x
  std::vector<double> lattice;      // V(x)
};

// Samples the potential seen by particle j as it is moved between its
// neighbors with all other particles fixed. The scan range must stay strictly
// inside (x_{j-1}, x_{j+1}) (or the chain ends for the outermost particles).
LandscapeCurve landscape_scan(std::size_t j, const ParticleChain& chain,
                              const Spectrum& spectrum,
                              const LatticePotential& lattice, double grid_min,
                              double grid_max, std::size_t grid_samples);

}  // namespace nff
