#include "nff/core_types.hpp"

#include <cmath>
#include <stdexcept>

namespace nff {

SpectrumValidation validate_spectrum(const Spectrum& spectrum) {
  SpectrumValidation result;
  auto flag = [&result](std::string message) {
    result.ok = false;
    result.violations.push_back(std::move(message));
  };

  if (spectrum.lines.empty()) flag("spectrum has no lines");
  if (!(spectrum.refractive_index > 0.0))
    flag("refractive index must be positive");

  for (std::size_t m = 0; m < spectrum.lines.size(); ++m) {
    const SpectralLine& line = spectrum.lines[m];
    const std::string where = "line " + std::to_string(m) + ": ";
    if (!std::isfinite(line.intensity)) flag(where + "intensity must be finite");
    if (!(line.wavenumber > 0.0)) flag(where + "wavenumber must be positive");
    if (!(line.linewidth >= 0.0)) flag(where + "linewidth must be non-negative");
    if (spectrum.physical && line.intensity < 0.0)
      flag(where + "negative intensity in a spectrum flagged physical");
  }
  return result;
}

ParticleChain::ParticleChain(std::vector<double> positions)
    : positions_(std::move(positions)) {
  if (positions_.empty())
    throw std::invalid_argument("particle chain needs at least one particle");
  for (std::size_t j = 0; j + 1 < positions_.size(); ++j) {
    if (!(positions_[j] < positions_[j + 1]))
      throw std::invalid_argument(
          "particle positions must be strictly increasing (violated at index " +
          std::to_string(j + 1) + ")");
  }
  for (double x : positions_) {
    if (!std::isfinite(x))
      throw std::invalid_argument("particle positions must be finite");
  }
}

double ParticleChain::separation(std::size_t j, std::size_t l) const {
  return std::abs(positions_.at(l) - positions_.at(j));
}

}  // namespace nff
