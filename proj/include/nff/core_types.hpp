#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types and unit conventions.
//
// Everything in the library is dimensionless:
//   k1 = 1 (reference wavenumber), I1/(n c) = 1 (reference line strength),
//   eps0 = 1, c = 1.
// Wavenumbers are in units of k1, intensities in units of I1, positions and
// separations in units of 1/k1. The refractive index n enters explicitly
// through Spectrum::refractive_index.

namespace nff {

inline constexpr double vacuum_permittivity = 1.0;
inline constexpr double speed_of_light = 1.0;

// Raised when a field solve produces an unusable linear system
// (resonant polarizability, ill-conditioned chain).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when adaptive integration fails to reach the requested tolerance
// within the allowed refinement depth.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when time integration cannot proceed (e.g. a particle crossing that
// persists after the step-halving retries).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Lorentzian line of the transverse illumination.
// linewidth = 0 means an ideal monochromatic (delta-like) line.
struct SpectralLine {
  double intensity = 0.0;   // I_m, signed in units of I1
  double wavenumber = 1.0;  // k_m > 0 in units of k1
  double linewidth = 0.0;   // gamma_m >= 0 in units of k1
};

// A set of spectral lines plus the (frequency-independent) refractive index.
// `physical` marks spectra whose intensities are meant to be realizable
// (I_m >= 0); designed spectra with signed Fourier coefficients leave it false.
struct Spectrum {
  std::vector<SpectralLine> lines;
  double refractive_index = 1.0;  // n > 0
  bool physical = false;
};

// Diagnostic result of validate_spectrum; never thrown.
struct SpectrumValidation {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks Spectrum invariants and reports every violation as a message.
// Purely diagnostic: callers decide whether to proceed.
SpectrumValidation validate_spectrum(const Spectrum& spectrum);

// Pointlike scatterer parameters shared by all particles of a chain.
struct ScattererParams {
  std::complex<double> zeta = {0.0, 0.0};  // polarizability; Im >= 0
  double eta = 1.0;                        // transverse pump amplitude, >= 0
};

// Strictly ordered particle positions x_0 < x_1 < ... < x_{N-1}.
// Construction rejects unsorted or duplicate positions instead of sorting:
// silently reordering would desynchronize caller-side per-particle data.
class ParticleChain {
 public:
  explicit ParticleChain(std::vector<double> positions);

  std::size_t size() const { return positions_.size(); }
  double operator[](std::size_t j) const { return positions_[j]; }
  const std::vector<double>& positions() const { return positions_; }

  // |x_l - x_j|
  double separation(std::size_t j, std::size_t l) const;

 private:
  std::vector<double> positions_;
};

// External trap V(x) = -depth * cos^2(wavenumber * x).
// Well bottoms sit at x = z * pi / wavenumber for integer z.
struct LatticePotential {
  double depth = 0.0;       // V0 >= 0
  double wavenumber = 1.0;  // k_V > 0
};

// Guided-mode amplitudes per particle: A (outgoing left-mover) and
// B (incoming right-mover) on the left side, C (incoming left-mover) and
// D (outgoing right-mover) on the right side.
struct FieldState {
  std::vector<std::complex<double>> A;
  std::vector<std::complex<double>> B;
  std::vector<std::complex<double>> C;
  std::vector<std::complex<double>> D;

  std::size_t size() const { return A.size(); }
};

// Controls the per-line frequency integration of the exact force.
// `window` is the half-width of the integration range in linewidths; the
// Lorentzian tail beyond it is dropped, so the reachable relative accuracy is
// floored at roughly 2/(pi*window) regardless of rel_tol. Raise the window
// when tighter agreement with the closed-form limits is needed.
struct QuadratureConfig {
  double window = 40.0;    // half-width in units of gamma_m
  double rel_tol = 1e-8;   // relative tolerance of the adaptive refinement
  int max_depth = 20;      // maximum panel-splitting depth
};

enum class Integrator {
  undamped_newtonian,  // velocity Verlet, no friction
  damped_newtonian,    // velocity Verlet with exact friction decay splitting
  overdamped,          // first-order drift x' = F/mu
};

struct DynamicsConfig {
  double mass = 1.0;          // M > 0
  double friction = 0.0;      // mu >= 0
  double timestep = 1e-3;     // dt > 0
  double duration = 1.0;      // total integration time > 0
  Integrator integrator = Integrator::undamped_newtonian;
  int record_stride = 1;      // frames recorded every this many steps
  double force_tol = 1e-8;    // convergence: max |F_j| below this ...
  double velocity_tol = 1e-8; // ... and max |v_j| below this
  int max_step_halvings = 40; // retry budget when a step causes a crossing
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> positions;   // one vector of N per frame
  std::vector<std::vector<double>> velocities;  // same shape
  bool converged = false;         // force and velocity tolerances met at end
  bool timestep_warning = false;  // dt * max(k_m) * max|v| grew beyond 0.2
};

}  // namespace nff
