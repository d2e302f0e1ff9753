#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "nff/core_types.hpp"

// Exact monochromatic field solver for a chain of beam-splitter scatterers
// with a common transverse pump, and the per-frequency and spectrally
// integrated forces derived from the solved fields.

namespace nff {

using Mat3 = std::array<std::array<std::complex<double>, 3>, 3>;

// Transfer matrix across one scatterer, mapping the right-side field vector
// (C_j, D_j, eta) to the left-side vector (A_j, B_j, eta):
//   [[1+iz,  iz, (1-iz)/sqrt2],
//    [ -iz, 1-iz, (iz-1)/sqrt2],
//    [   0,   0,            1]]
Mat3 beam_splitter_matrix(const ScattererParams& params);

// Free propagation across a gap of length `distance`:
// diag(e^{ikd}, e^{-ikd}, 1). Rejects negative distances.
Mat3 propagation_matrix(double wavenumber, double distance);

// Transmission and reflection amplitudes of a single scatterer,
// t = 1/(1 - i zeta), r = i zeta/(1 - i zeta); |t|^2 + |r|^2 = 1 for real zeta.
std::pair<std::complex<double>, std::complex<double>> scattering_coefficients(
    const ScattererParams& params);

// Solves the guided field at every particle for one wavenumber, with no light
// injected into the guide from either end (all guided light originates from
// pump scattering). The force spectrum is even in k, so only |k| matters.
FieldState solve_fields(const ParticleChain& chain, const ScattererParams& params,
                        double wavenumber);

// Variant with externally injected guided amplitudes: b_in enters from the far
// left (right-mover), c_in from the far right (left-mover). Exists for
// momentum-bookkeeping checks; the physical setup pumps transversely only.
FieldState solve_fields(const ParticleChain& chain, const ScattererParams& params,
                        double wavenumber, std::complex<double> b_in,
                        std::complex<double> c_in);

// Net force on particle j from the solved monochromatic field:
// (eps0/2)(|A|^2 + |B|^2 - |C|^2 - |D|^2). Positive pushes toward +x.
double force_per_frequency(const FieldState& state, std::size_t particle_index);

// Forces with the full spectrum: each zero-linewidth line contributes its
// monochromatic force directly; each broadened line is integrated over its
// Lorentzian profile within quadrature.window linewidths. Intensities set the
// per-line pump power, so params.eta does not enter (the solver runs at unit
// pump and is rescaled per line).
std::vector<double> total_force_exact(const ParticleChain& chain,
                                      const ScattererParams& params,
                                      const Spectrum& spectrum,
                                      const QuadratureConfig& quadrature);

}  // namespace nff
