#include "nff/transfer_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nff {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr double kSqrt2 = 1.4142135623730951;

// Relative residual above which a field solution is considered unusable.
constexpr double kResidualLimit = 1e-8;

}  // namespace

Mat3 beam_splitter_matrix(const ScattererParams& params) {
  const complex<double> iz = kI * params.zeta;
  return Mat3{{{1.0 + iz, iz, (1.0 - iz) / kSqrt2},
               {-iz, 1.0 - iz, (iz - 1.0) / kSqrt2},
               {0.0, 0.0, 1.0}}};
}

Mat3 propagation_matrix(double wavenumber, double distance) {
  if (distance < 0.0)
    throw std::invalid_argument("propagation distance must be non-negative");
  const complex<double> phase = std::exp(kI * wavenumber * distance);
  return Mat3{{{phase, 0.0, 0.0}, {0.0, std::conj(phase), 0.0}, {0.0, 0.0, 1.0}}};
}

std::pair<complex<double>, complex<double>> scattering_coefficients(
    const ScattererParams& params) {
  const complex<double> denom = 1.0 - kI * params.zeta;
  if (std::abs(denom) < 1e-12)
    throw SolverError("resonant polarizability: 1 - i zeta vanishes");
  return {1.0 / denom, kI * params.zeta / denom};
}

FieldState solve_fields(const ParticleChain& chain, const ScattererParams& params,
                        double wavenumber) {
  return solve_fields(chain, params, wavenumber, 0.0, 0.0);
}

FieldState solve_fields(const ParticleChain& chain, const ScattererParams& params,
                        double wavenumber, complex<double> b_in,
                        complex<double> c_in) {
  const auto [t, r] = scattering_coefficients(params);
  const std::size_t n = chain.size();
  const complex<double> source = params.eta / kSqrt2;

  // Unknowns per particle j: A, B, C, D at columns 4j..4j+3. The scatterer
  // relations are A = r B + t C + source and D = t B + r C + source; each gap
  // links D to the next B and the next A to C through the phase e^{ikd};
  // the chain ends fix the injected amplitudes.
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4 * n);

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t a = 4 * j, b = 4 * j + 1, c = 4 * j + 2, d = 4 * j + 3;
    mat(a, a) = 1.0;
    mat(a, b) = -r;
    mat(a, c) = -t;
    rhs(a) = source;
    mat(b, d) = 1.0;
    mat(b, b) = -t;
    mat(b, c) = -r;
    rhs(b) = source;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const complex<double> phase =
        std::exp(kI * wavenumber * (chain[j + 1] - chain[j]));
    const std::size_t row_b = 4 * j + 2, row_c = 4 * j + 3;
    mat(row_b, 4 * (j + 1) + 1) = 1.0;  // B_{j+1} = phase * D_j
    mat(row_b, 4 * j + 3) = -phase;
    mat(row_c, 4 * j + 2) = 1.0;        // C_j = phase * A_{j+1}
    mat(row_c, 4 * (j + 1)) = -phase;
  }
  mat(4 * (n - 1) + 2, 1) = 1.0;  // B_0 = b_in
  rhs(4 * (n - 1) + 2) = b_in;
  mat(4 * (n - 1) + 3, 4 * (n - 1) + 2) = 1.0;  // C_{n-1} = c_in
  rhs(4 * (n - 1) + 3) = c_in;

  const Eigen::VectorXcd sol = mat.partialPivLu().solve(rhs);

  const double residual = (mat * sol - rhs).cwiseAbs().maxCoeff();
  const double scale = mat.cwiseAbs().maxCoeff() * sol.cwiseAbs().maxCoeff() +
                       rhs.cwiseAbs().maxCoeff();
  if (!(residual <= kResidualLimit * (scale > 0.0 ? scale : 1.0)))
    throw SolverError("field solve did not reach a consistent solution "
                      "(relative residual " +
                      std::to_string(residual / (scale > 0.0 ? scale : 1.0)) +
                      ")");

  FieldState state;
  state.A.resize(n);
  state.B.resize(n);
  state.C.resize(n);
  state.D.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    state.A[j] = sol(4 * j);
    state.B[j] = sol(4 * j + 1);
    state.C[j] = sol(4 * j + 2);
    state.D[j] = sol(4 * j + 3);
  }
  return state;
}

double force_per_frequency(const FieldState& state, std::size_t particle_index) {
  if (particle_index >= state.size())
    throw std::out_of_range("particle index out of range");
  const std::size_t j = particle_index;
  return 0.5 * vacuum_permittivity *
         (std::norm(state.A[j]) + std::norm(state.B[j]) - std::norm(state.C[j]) -
          std::norm(state.D[j]));
}

namespace {

// 15-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlPoints = 15;
constexpr double kGlNode[kGlPoints] = {
    0.0,
    -0.2011940939974345, 0.2011940939974345,
    -0.3941513470775634, 0.3941513470775634,
    -0.5709721726085388, 0.5709721726085388,
    -0.7244177313601701, 0.7244177313601701,
    -0.8482065834104272, 0.8482065834104272,
    -0.9372733924007060, 0.9372733924007060,
    -0.9879925180204854, 0.9879925180204854};
constexpr double kGlWeight[kGlPoints] = {
    0.2025782419255613,
    0.1984314853271116, 0.1984314853271116,
    0.1861610000155622, 0.1861610000155622,
    0.1662692058169939, 0.1662692058169939,
    0.1395706779261543, 0.1395706779261543,
    0.1071592204671719, 0.1071592204671719,
    0.0703660474881081, 0.0703660474881081,
    0.0307532419961173, 0.0307532419961173};

struct LineIntegrator {
  const ParticleChain& chain;
  const ScattererParams& unit_params;
  double center;      // k_m
  double half_width;  // gamma_m
  double tol = 0.0;   // absolute tolerance for the whole theta integral
  double total_width = 1.0;
  int max_depth = 20;
  double unresolved = 0.0;  // error left behind by depth-exhausted panels
  double sample_scale = 0.0;  // largest per-particle force magnitude seen

  // Per-particle forces at the wavenumber mapped from theta; the Lorentzian
  // weight is flat in theta after substituting k = k_m + gamma tan(theta).
  std::vector<double> eval(double theta) {
    const double k = center + half_width * std::tan(theta);
    const FieldState state = solve_fields(chain, unit_params, std::abs(k));
    std::vector<double> forces(chain.size());
    for (std::size_t j = 0; j < chain.size(); ++j) {
      forces[j] = force_per_frequency(state, j);
      sample_scale = std::max(sample_scale, std::abs(forces[j]));
    }
    return forces;
  }

  std::vector<double> gauss(double a, double b) {
    std::vector<double> sum(chain.size(), 0.0);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < kGlPoints; ++i) {
      const std::vector<double> f = eval(mid + half * kGlNode[i]);
      for (std::size_t j = 0; j < sum.size(); ++j)
        sum[j] += half * kGlWeight[i] * f[j];
    }
    return sum;
  }

  // Splits [a, b] until the two-half refinement agrees with the whole-panel
  // estimate within the panel's share of the global tolerance.
  void refine(double a, double b, const std::vector<double>& whole, int depth,
              std::vector<double>& accum) {
    const double mid = 0.5 * (a + b);
    const std::vector<double> left = gauss(a, mid);
    const std::vector<double> right = gauss(mid, b);
    double err = 0.0;
    for (std::size_t j = 0; j < whole.size(); ++j)
      err = std::max(err, std::abs(whole[j] - left[j] - right[j]));
    const double budget = tol * (b - a) / total_width;
    if (err <= budget || depth >= max_depth) {
      if (err > budget) unresolved += err;
      for (std::size_t j = 0; j < accum.size(); ++j)
        accum[j] += left[j] + right[j];
      return;
    }
    refine(a, mid, left, depth + 1, accum);
    refine(mid, b, right, depth + 1, accum);
  }
};

}  // namespace

std::vector<double> total_force_exact(const ParticleChain& chain,
                                      const ScattererParams& params,
                                      const Spectrum& spectrum,
                                      const QuadratureConfig& quadrature) {
  if (!(quadrature.window > 0.0) || !(quadrature.rel_tol > 0.0))
    throw std::invalid_argument("quadrature window and tolerance must be positive");
  if (!(spectrum.refractive_index > 0.0))
    throw std::invalid_argument("refractive index must be positive");

  const double n_ref = spectrum.refractive_index;
  const ScattererParams unit{params.zeta, 1.0};
  std::vector<double> result(chain.size(), 0.0);

  for (std::size_t m = 0; m < spectrum.lines.size(); ++m) {
    const SpectralLine& line = spectrum.lines[m];
    if (line.intensity == 0.0) continue;
    // Intensity -> squared pump amplitude: I_m = |eta_m|^2 c eps0 / 2, with an
    // extra 1/n from the frequency-to-wavenumber measure of the line profile.
    const double weight =
        2.0 * line.intensity / (n_ref * speed_of_light * vacuum_permittivity);

    if (line.linewidth == 0.0) {
      const FieldState state = solve_fields(chain, unit, line.wavenumber);
      for (std::size_t j = 0; j < chain.size(); ++j)
        result[j] += weight * force_per_frequency(state, j);
      continue;
    }

    LineIntegrator integ{chain, unit, line.wavenumber, line.linewidth};
    integ.max_depth = quadrature.max_depth;
    const double theta_w = std::atan(quadrature.window);
    integ.total_width = 2.0 * theta_w;

    // Coarse pass fixes the absolute tolerance floor so that particles with
    // vanishing net force (e.g. by symmetry) do not trigger endless splitting.
    constexpr int kInitialPanels = 8;
    std::vector<std::vector<double>> coarse(kInitialPanels);
    std::vector<double> coarse_total(chain.size(), 0.0);
    for (int p = 0; p < kInitialPanels; ++p) {
      const double a = -theta_w + 2.0 * theta_w * p / kInitialPanels;
      const double b = -theta_w + 2.0 * theta_w * (p + 1) / kInitialPanels;
      coarse[p] = integ.gauss(a, b);
      for (std::size_t j = 0; j < chain.size(); ++j)
        coarse_total[j] += coarse[p][j];
    }
    double scale = integ.sample_scale;
    for (double v : coarse_total) scale = std::max(scale, std::abs(v));
    integ.tol = quadrature.rel_tol * (scale > 0.0 ? scale : 1.0);

    std::vector<double> accum(chain.size(), 0.0);
    for (int p = 0; p < kInitialPanels; ++p) {
      const double a = -theta_w + 2.0 * theta_w * p / kInitialPanels;
      const double b = -theta_w + 2.0 * theta_w * (p + 1) / kInitialPanels;
      integ.refine(a, b, coarse[p], 0, accum);
    }
    if (integ.unresolved > integ.tol)
      throw QuadratureError(
          "line " + std::to_string(m) +
          ": frequency integration did not converge (unresolved error " +
          std::to_string(integ.unresolved) + ", tolerance " +
          std::to_string(integ.tol) + "); raise max_depth or rel_tol");

    const double pi = 3.14159265358979323846;
    for (std::size_t j = 0; j < chain.size(); ++j)
      result[j] += weight / pi * accum[j];
  }
  return result;
}

}  // namespace nff
