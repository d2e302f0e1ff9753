#include "nff/spectral_designer.hpp"

#include "nff/pair_interactions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nff {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Wraps u into (-pi, pi]. std::remainder is exact, so arguments already in
// range come back untouched; the square profile relies on that to recognise
// the discontinuity point d = pi/2 exactly.
double wrap_angle(double u) { return std::remainder(u, 2.0 * kPi); }

double canonical_period(TargetKind kind) {
  switch (kind) {
    case TargetKind::gaussian_cluster:
      return 20.0 * kPi;  // line spacing 0.1 k1
    case TargetKind::triangle_wave:
    case TargetKind::square_wave:
    case TargetKind::lorentz_comb:
      return 2.0 * kPi;
    case TargetKind::sampled:
      return 0.0;
  }
  return 0.0;
}

double effective_period(const TargetProfile& target) {
  if (target.period > 0.0) return target.period;
  const double p = canonical_period(target.kind);
  if (p <= 0.0)
    throw std::invalid_argument("sampled target needs an explicit period");
  return p;
}

}  // namespace

double target_value(const TargetProfile& target, double distance) {
  const double period = effective_period(target);

  if (target.kind == TargetKind::sampled) {
    if (target.samples.empty())
      throw std::invalid_argument("sampled target has no samples");
    const std::size_t n = target.samples.size();
    double t = std::fmod(distance / period, 1.0);
    if (t < 0.0) t += 1.0;
    const double pos = t * static_cast<double>(n);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
    const double frac = pos - static_cast<double>(i);
    const double a = target.samples[i];
    const double b = target.samples[(i + 1) % n];
    return a + frac * (b - a);
  }

  // Named profiles keep their canonical shape; a custom period rescales d.
  const double canon = canonical_period(target.kind);
  const double d = (period == canon) ? distance : distance * canon / period;
  switch (target.kind) {
    case TargetKind::triangle_wave: {
      const double u = wrap_angle(d);
      return kPi / 4.0 * (kPi / 2.0 - std::abs(u));
    }
    case TargetKind::square_wave: {
      const double u = std::abs(wrap_angle(d));
      if (u == kPi / 2.0) return 0.0;
      return (u < kPi / 2.0) ? kPi / 4.0 : -kPi / 4.0;
    }
    case TargetKind::gaussian_cluster: {
      double sum = 0.0;
      for (int m = 1; m <= 20; ++m) {
        const double i_m = std::exp(-(m - 10.0) * (m - 10.0) / 10.0) * std::exp(8.1);
        sum += i_m * std::cos((1.0 + 0.1 * m) * d);
      }
      return sum;
    }
    case TargetKind::lorentz_comb: {
      double sum = 0.0;
      for (int m = 1; m <= 10; ++m)
        sum += (1.0 - (m - 1) / 10.0) * std::cos(m * d);
      return sum;
    }
    case TargetKind::sampled:
      break;
  }
  throw std::invalid_argument("unknown target kind");
}

Spectrum preset_spectrum(PresetName name, int m_max, bool broadened) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");

  Spectrum spectrum;
  spectrum.refractive_index = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    SpectralLine line;
    switch (name) {
      case PresetName::triangle:
        line.intensity = 1.0 / ((2.0 * m - 1.0) * (2.0 * m - 1.0));
        line.wavenumber = 2.0 * m - 1.0;
        line.linewidth = (broadened && m == 1) ? 0.1 : 0.0;
        break;
      case PresetName::square:
        // sin(m pi/2)/m without trigonometric roundoff on the zeros.
        if (m % 4 == 1)
          line.intensity = 1.0 / m;
        else if (m % 4 == 3)
          line.intensity = -1.0 / m;
        else
          line.intensity = 0.0;
        line.wavenumber = m;
        line.linewidth = broadened ? 0.1 * (1.0 - 1.0 / m) : 0.0;
        break;
      case PresetName::gaussian_cluster:
        line.intensity =
            std::exp(-(m - 10.0) * (m - 10.0) / 10.0) * std::exp(8.1);
        line.wavenumber = 1.0 + 0.1 * m;
        line.linewidth = (broadened && !(m >= 9 && m <= 12)) ? 0.1 * m : 0.0;
        break;
      case PresetName::lorentz_comb:
        line.intensity = 1.0 - (m - 1) / 10.0;
        line.wavenumber = m;
        line.linewidth = broadened ? 0.03 * m : 0.0;
        break;
    }
    spectrum.lines.push_back(line);
  }
  spectrum.physical = std::all_of(spectrum.lines.begin(), spectrum.lines.end(),
                                  [](const SpectralLine& l) {
                                    return l.intensity >= 0.0;
                                  });
  return spectrum;
}

DesignResult cosine_coefficients(const TargetProfile& target, int m_max,
                                 std::size_t quadrature_samples) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  const double period = effective_period(target);

  std::vector<double> values;
  if (target.kind == TargetKind::sampled) {
    values = target.samples;
    if (values.size() < 2 * static_cast<std::size_t>(m_max) + 1)
      throw std::invalid_argument(
          "sampled target needs at least 2*m_max+1 samples");
  } else {
    const std::size_t count =
        std::max<std::size_t>(quadrature_samples, 2 * m_max + 2);
    values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      values[i] = target_value(target, period * static_cast<double>(i) /
                                           static_cast<double>(count));
  }
  for (double v : values) {
    if (std::isnan(v))
      throw std::invalid_argument("target contains NaN samples");
  }

  // Trapezoid rule over one period on a uniform grid collapses to a plain
  // average; exact for band-limited targets below the grid's Nyquist index.
  const std::size_t count = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(count);

  DesignResult result;
  result.discarded_mean = mean;
  result.spectrum.refractive_index = 1.0;
  const double nc = result.spectrum.refractive_index * speed_of_light;
  for (int m = 1; m <= m_max; ++m) {
    double a_m = 0.0;
    for (std::size_t i = 0; i < count; ++i)
      a_m += values[i] *
             std::cos(2.0 * kPi * m * static_cast<double>(i) /
                      static_cast<double>(count));
    a_m *= 2.0 / static_cast<double>(count);
    SpectralLine line;
    line.intensity = nc * a_m;
    line.wavenumber = 2.0 * kPi * m / period;
    line.linewidth = 0.0;
    result.spectrum.lines.push_back(line);
  }
  result.spectrum.physical =
      std::all_of(result.spectrum.lines.begin(), result.spectrum.lines.end(),
                  [](const SpectralLine& l) { return l.intensity >= 0.0; });
  return result;
}

DesignReport evaluate_design(const Spectrum& spectrum, const TargetProfile& target,
                             double grid_min, double grid_max,
                             std::size_t grid_samples) {
  if (grid_samples < 2 || !(grid_max > grid_min))
    throw std::invalid_argument("evaluation grid needs at least two ordered points");

  DesignReport report;
  report.pointwise.resize(grid_samples);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < grid_samples; ++i) {
    const double d = grid_min + (grid_max - grid_min) * static_cast<double>(i) /
                                    static_cast<double>(grid_samples - 1);
    const double err = pair_force(d, spectrum) - target_value(target, d);
    report.pointwise[i] = err;
    report.linf = std::max(report.linf, std::abs(err));
    sum_sq += err * err;
  }
  report.l2 = std::sqrt(sum_sq / static_cast<double>(grid_samples));
  report.physical = std::all_of(spectrum.lines.begin(), spectrum.lines.end(),
                                [](const SpectralLine& l) {
                                  return l.intensity >= 0.0;
                                });
  return report;
}

}  // namespace nff
