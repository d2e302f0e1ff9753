#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nff/core_types.hpp"
#include "nff/spectral_designer.hpp"

// JSON scenario files for the command-line tool. All distance-like values in
// scenario files (positions, velocities, grid bounds, design periods) are
// expressed in units of the reference wavelength lambda_1 = 2 pi / k_1 and
// converted to raw units (k_1 = 1) on load. Wavenumbers, intensities, depths,
// times, and tolerances stay raw. Unknown keys anywhere in the file are
// rejected with the offending dotted path.

namespace nff::cli {

// lambda_1 in raw units.
inline constexpr double wavelength_unit = 6.283185307179586476925287;

struct GridSpec {
  double min = 0.0;   // raw units after load
  double max = 0.0;   // raw units after load
  std::size_t samples = 0;
};

struct DesignSpec {
  TargetProfile target;  // period/samples already in raw units
  int m_max = 10;
};

struct MinimizeSpec {
  int num_particles = 0;
  int wells_min = 0;
  int wells_max = 0;
  std::uint64_t cap = 10'000'000;
  bool relax = false;
};

struct Scenario {
  std::optional<Spectrum> spectrum;
  std::optional<std::vector<double>> positions;   // raw units
  std::optional<std::vector<int>> wells;          // integer well indices
  std::optional<std::vector<double>> velocities;  // raw units
  std::optional<LatticePotential> lattice;
  std::optional<ScattererParams> scatterer;
  DynamicsConfig dynamics;
  QuadratureConfig quadrature;
  std::optional<GridSpec> grid;
  std::optional<DesignSpec> design;
  std::optional<MinimizeSpec> minimize;
  std::optional<std::size_t> landscape_particle;
  std::optional<std::string> output_path;
};

// Parses scenario JSON text. Throws std::invalid_argument with a dotted key
// path on schema violations.
Scenario parse_scenario(const std::string& json_text);

// Reads and parses a scenario file. A bare filename that does not exist in
// the working directory is also looked up under $NFF_SCENARIO_DIR. Throws
// IoError when no file can be read.
Scenario load_scenario(const std::string& path);

// Helpers shared by the subcommands; each throws std::invalid_argument naming
// the missing section.
const Spectrum& require_spectrum(const Scenario& scenario);
ParticleChain build_chain(const Scenario& scenario);

}  // namespace nff::cli
