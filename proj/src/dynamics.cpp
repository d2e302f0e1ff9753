#include "nff/dynamics.hpp"

#include "nff/pair_interactions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nff {

namespace {

// Phase advance per step across the fastest force oscillation above which the
// trajectory is flagged as under-resolved.
constexpr double kPhaseWarnLimit = 0.2;

void validate_config(const DynamicsConfig& config) {
  if (!(config.mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(config.friction >= 0.0))
    throw std::invalid_argument("friction must be non-negative");
  if (!(config.timestep > 0.0))
    throw std::invalid_argument("timestep must be positive");
  if (!(config.duration > 0.0))
    throw std::invalid_argument("duration must be positive");
  if (config.record_stride < 1)
    throw std::invalid_argument("record_stride must be at least 1");
  if (config.integrator == Integrator::overdamped && !(config.friction > 0.0))
    throw std::invalid_argument("overdamped integration requires friction > 0");
}

int first_disorder(const std::vector<double>& x) {
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    if (!(x[j] < x[j + 1])) return static_cast<int>(j);
  }
  return -1;
}

// One raw integrator step of length dt, without crossing checks.
void raw_step(std::vector<double>& x, std::vector<double>& v,
              const ForcesFn& forces, const DynamicsConfig& config, double dt) {
  const std::size_t n = x.size();
  if (config.integrator == Integrator::overdamped) {
    const std::vector<double> f = forces(x);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = f[j] / config.friction;
      x[j] += dt * v[j];
    }
    return;
  }

  // Velocity Verlet; friction enters as an exact momentum decay wrapped
  // symmetrically around the drift, which reduces to plain Verlet at mu = 0.
  const double decay =
      std::exp(-config.friction * dt / (2.0 * config.mass));
  std::vector<double> f = forces(x);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] += 0.5 * dt * f[j] / config.mass;
    v[j] *= decay;
    x[j] += dt * v[j];
  }
  f = forces(x);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] *= decay;
    v[j] += 0.5 * dt * f[j] / config.mass;
  }
}

// Advances one interval of length dt; a resulting particle crossing is retried
// as two half-intervals, recursively, up to config.max_step_halvings levels.
void advance_interval(std::vector<double>& x, std::vector<double>& v,
                      const ForcesFn& forces, const DynamicsConfig& config,
                      double dt, int depth) {
  std::vector<double> x_try = x, v_try = v;
  raw_step(x_try, v_try, forces, config, dt);
  const int bad = first_disorder(x_try);
  if (bad < 0) {
    x = std::move(x_try);
    v = std::move(v_try);
    return;
  }
  if (depth >= config.max_step_halvings)
    throw SimulationError("particles " + std::to_string(bad) + " and " +
                          std::to_string(bad + 1) +
                          " cross even at the smallest retry step; the "
                          "configuration is collapsing or the timestep is "
                          "far too large");
  advance_interval(x, v, forces, config, 0.5 * dt, depth + 1);
  advance_interval(x, v, forces, config, 0.5 * dt, depth + 1);
}

}  // namespace

CharacteristicTimes characteristic_times(
    const DynamicsConfig& config, const Spectrum& spectrum,
    const std::optional<LatticePotential>& lattice) {
  CharacteristicTimes times;
  if (config.friction > 0.0) times.t_mu = config.mass / config.friction;
  if (lattice) {
    double intensity_sum = 0.0;
    for (const SpectralLine& line : spectrum.lines)
      intensity_sum += line.intensity;
    const double n = spectrum.refractive_index;
    const double lattice_intensity =
        lattice->depth * n * lattice->wavenumber * speed_of_light / 2.0;
    if (intensity_sum > 0.0 && lattice_intensity > 0.0) {
      times.t_0 = std::sqrt(config.mass * n * speed_of_light *
                            (1.0 / intensity_sum + 1.0 / lattice_intensity));
    }
  }
  return times;
}

PhaseState step(const PhaseState& state, const ForcesFn& forces,
                const DynamicsConfig& config) {
  validate_config(config);
  if (state.positions.size() != state.velocities.size())
    throw std::invalid_argument("positions and velocities differ in size");
  PhaseState next = state;
  advance_interval(next.positions, next.velocities, forces, config,
                   config.timestep, 0);
  return next;
}

Trajectory simulate(const ParticleChain& chain, const Spectrum& spectrum,
                    const std::optional<LatticePotential>& lattice,
                    const DynamicsConfig& config) {
  return simulate(chain, std::vector<double>(chain.size(), 0.0), spectrum,
                  lattice, config);
}

Trajectory simulate(const ParticleChain& chain, std::vector<double> velocities,
                    const Spectrum& spectrum,
                    const std::optional<LatticePotential>& lattice,
                    const DynamicsConfig& config) {
  validate_config(config);
  if (velocities.size() != chain.size())
    throw std::invalid_argument("one initial velocity per particle required");

  // Forces must be evaluable on trial positions that have already crossed
  // (the crossing check runs after the half-kick), so the pair term is taken
  // by magnitude and signed by the actual relative position.
  const ForcesFn forces = [&spectrum, &lattice](const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j) continue;
        const double dx = x[l] - x[j];
        if (dx > 0.0)
          f[j] += pair_force(dx, spectrum);
        else if (dx < 0.0)
          f[j] -= pair_force(-dx, spectrum);
      }
      if (lattice) f[j] += lattice_force(x[j], *lattice);
    }
    return f;
  };

  double k_fastest = 0.0;
  for (const SpectralLine& line : spectrum.lines)
    k_fastest = std::max(k_fastest, line.wavenumber);
  if (lattice) k_fastest = std::max(k_fastest, 2.0 * lattice->wavenumber);

  const long long steps = std::max<long long>(
      1, std::llround(config.duration / config.timestep));

  std::vector<double> x = chain.positions();
  std::vector<double> v = std::move(velocities);

  Trajectory traj;
  auto record = [&traj, &x, &v](double time) {
    traj.times.push_back(time);
    traj.positions.push_back(x);
    traj.velocities.push_back(v);
  };
  record(0.0);

  for (long long s = 1; s <= steps; ++s) {
    advance_interval(x, v, forces, config, config.timestep, 0);
    double v_max = 0.0;
    for (double vj : v) v_max = std::max(v_max, std::abs(vj));
    if (config.timestep * k_fastest * v_max > kPhaseWarnLimit)
      traj.timestep_warning = true;
    if (s % config.record_stride == 0 || s == steps)
      record(static_cast<double>(s) * config.timestep);
  }

  const std::vector<double> f_end = forces(x);
  double f_max = 0.0, v_max = 0.0;
  for (double fj : f_end) f_max = std::max(f_max, std::abs(fj));
  for (double vj : v) v_max = std::max(v_max, std::abs(vj));
  traj.converged = f_max < config.force_tol && v_max < config.velocity_tol;
  return traj;
}

}  // namespace nff
