#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nff/core_types.hpp"

// Time integration of the N-particle chain under the closed-form pair forces,
// optional friction, and an optional external lattice.

namespace nff {

// Characteristic time scales: t_mu = M/mu (momentum relaxation, needs mu > 0)
// and t_0 = sqrt(M n c (1/sum_m I_m + 1/I_V)) with I_V = V0 n k_V c / 2
// (needs a lattice).
struct CharacteristicTimes {
  std::optional<double> t_mu;
  std::optional<double> t_0;
};

CharacteristicTimes characteristic_times(const DynamicsConfig& config,
                                         const Spectrum& spectrum,
                                         const std::optional<LatticePotential>& lattice);

// State advanced by `step`: plain position/velocity arrays, kept ordered.
struct PhaseState {
  std::vector<double> positions;
  std::vector<double> velocities;
};

using ForcesFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Advances one step of length config.timestep. If the update would cross two
// particles, the step is retried with halved substeps up to
// config.max_step_halvings times before SimulationError is thrown with the
// offending indices. Overdamped integration requires friction > 0.
PhaseState step(const PhaseState& state, const ForcesFn& forces,
                const DynamicsConfig& config);

// Integrates the chain for config.duration, recording every
// config.record_stride steps (the initial and final states always included).
// Forces are force_on_particle plus lattice_force when a lattice is given.
Trajectory simulate(const ParticleChain& chain, const Spectrum& spectrum,
                    const std::optional<LatticePotential>& lattice,
                    const DynamicsConfig& config);

// Same, with explicit initial velocities (default: all zero).
Trajectory simulate(const ParticleChain& chain, std::vector<double> velocities,
                    const Spectrum& spectrum,
                    const std::optional<LatticePotential>& lattice,
                    const DynamicsConfig& config);

}  // namespace nff
