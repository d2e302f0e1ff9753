#pragma once

#include <cstddef>
#include <vector>

#include "nff/core_types.hpp"

// Fourier synthesis of pair-force profiles: preset spectra, cosine-series
// design of a target force curve, and truncation-error reporting.
//
// Only even (symmetric) force profiles are reachable: the pair force is a pure
// cosine series in the separation, so the odd part of any target projects to
// zero and a constant offset cannot be realized.

namespace nff {

enum class TargetKind {
  triangle_wave,     // (pi/4)(pi/2 - |d|) on [-pi, pi], continued periodically
  square_wave,       // +pi/4 for |d| < pi/2, -pi/4 for pi/2 < |d| < pi, period 2pi
  gaussian_cluster,  // finite line sum of the gaussian_cluster preset
  lorentz_comb,      // finite line sum of the lorentz_comb preset
  sampled,           // caller-provided uniform samples over one period
};

// A desired pair-force profile, treated as an even periodic function of the
// separation. The named closed forms above use the period fields belonging to
// their definitions (2pi for triangle/square/comb, 20pi for the cluster) when
// period is left at 0. Sampled targets give values at d = i*period/samples.size().
struct TargetProfile {
  TargetKind kind = TargetKind::sampled;
  double period = 0.0;
  std::vector<double> samples;
};

// Evaluates the target at separation d (periodically continued).
double target_value(const TargetProfile& target, double distance);

enum class PresetName { triangle, square, gaussian_cluster, lorentz_comb };

// The four reference spectra with their standard parameterizations:
//   triangle:         I_m = 1/(2m-1)^2,        k_m = (2m-1) k1
//   square:           I_m = sin(m pi/2)/m,     k_m = m k1      (even lines 0)
//   gaussian_cluster: I_m = e^{-(m-10)^2/10} e^{8.1}, k_m = (1 + 0.1 m) k1
//   lorentz_comb:     I_m = 1 - (m-1)/10,      k_m = m k1
// With broadened = true the standard linewidth variants are applied:
//   triangle:         gamma_1 = 0.1 k1, others 0
//   square:           gamma_m = 0.1 (1 - 1/m) k1
//   gaussian_cluster: gamma_m = 0.1 m k1 except gamma_9..gamma_12 = 0
//   lorentz_comb:     gamma_m = 0.03 m k1
Spectrum preset_spectrum(PresetName name, int m_max, bool broadened = false);

// Result of a cosine-series design. The mean of the target cannot be realized
// as a force and is reported here after being dropped.
struct DesignResult {
  Spectrum spectrum;
  double discarded_mean = 0.0;
};

// Computes the cosine coefficients a_m of the target over its period P and
// returns lines at k_m = 2 pi m / P with intensities I_m = n c a_m and zero
// linewidth, for m = 1..m_max (zero coefficients are kept as zero-intensity
// lines). Coefficients are computed by composite trapezoid integration on
// `quadrature_samples` uniform points (the target's own grid for sampled
// targets). Throws std::invalid_argument on NaN samples or if a sampled
// target has fewer than 2*m_max+1 points.
DesignResult cosine_coefficients(const TargetProfile& target, int m_max,
                                 std::size_t quadrature_samples = 4096);

// Pointwise comparison of the force realized by `spectrum` against the target.
struct DesignReport {
  double l2 = 0.0;    // root mean square error over the grid
  double linf = 0.0;  // maximum absolute error over the grid
  std::vector<double> pointwise;  // signed error at each grid point
  bool physical = false;          // all intensities non-negative
};

DesignReport evaluate_design(const Spectrum& spectrum, const TargetProfile& target,
                             double grid_min, double grid_max,
                             std::size_t grid_samples);

}  // namespace nff
