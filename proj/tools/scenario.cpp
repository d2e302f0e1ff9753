#include "scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "csv.hpp"

namespace nff::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail("scenario section '" + path + "' must be an object");
}

// Hard error on any key outside the allowed set, anywhere in the file.
void expect_keys(const json& v, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  expect_object(v, path);
  for (const auto& item : v.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) fail("unrecognized scenario key '" + path + "." + item.key() + "'");
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail("'" + path + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail("'" + path + "' must be an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail("'" + path + "' must be true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail("'" + path + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> as_number_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail("'" + path + "' must be an array of numbers");
  std::vector<double> values;
  values.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    values.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return values;
}

std::vector<int> as_int_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail("'" + path + "' must be an array of integers");
  std::vector<int> values;
  values.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    values.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
  return values;
}

PresetName preset_from_string(const std::string& name, const std::string& path) {
  if (name == "triangle") return PresetName::triangle;
  if (name == "square") return PresetName::square;
  if (name == "gaussian_cluster") return PresetName::gaussian_cluster;
  if (name == "lorentz_comb") return PresetName::lorentz_comb;
  fail("'" + path + "' must be one of triangle, square, gaussian_cluster, "
       "lorentz_comb");
}

int default_line_count(PresetName name) {
  return name == PresetName::gaussian_cluster ? 20 : 10;
}

Spectrum parse_spectrum(const json& v) {
  expect_keys(v, "spectrum",
              {"preset", "mmax", "variant", "lines", "refractive_index",
               "physical"});
  const bool has_preset = v.contains("preset");
  const bool has_lines = v.contains("lines");
  if (has_preset == has_lines)
    fail("'spectrum' needs exactly one of 'preset' or 'lines'");

  Spectrum spectrum;
  if (has_preset) {
    const PresetName name =
        preset_from_string(as_string(v["preset"], "spectrum.preset"),
                           "spectrum.preset");
    bool broadened = false;
    if (v.contains("variant")) {
      const std::string variant = as_string(v["variant"], "spectrum.variant");
      if (variant == "broadened")
        broadened = true;
      else if (variant != "ideal")
        fail("'spectrum.variant' must be 'ideal' or 'broadened'");
    }
    int m_max = default_line_count(name);
    if (v.contains("mmax")) m_max = as_int(v["mmax"], "spectrum.mmax");
    if (m_max < 1) fail("'spectrum.mmax' must be at least 1");
    spectrum = preset_spectrum(name, m_max, broadened);
  } else {
    if (v.contains("variant"))
      fail("'spectrum.variant' applies to presets only");
    if (v.contains("mmax")) fail("'spectrum.mmax' applies to presets only");
    const json& lines = v["lines"];
    if (!lines.is_array() || lines.empty())
      fail("'spectrum.lines' must be a non-empty array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string path = "spectrum.lines[" + std::to_string(i) + "]";
      expect_keys(lines[i], path, {"intensity", "wavenumber", "linewidth"});
      if (!lines[i].contains("intensity") || !lines[i].contains("wavenumber"))
        fail("'" + path + "' needs 'intensity' and 'wavenumber'");
      SpectralLine line;
      line.intensity = as_number(lines[i]["intensity"], path + ".intensity");
      line.wavenumber = as_number(lines[i]["wavenumber"], path + ".wavenumber");
      if (lines[i].contains("linewidth"))
        line.linewidth = as_number(lines[i]["linewidth"], path + ".linewidth");
      spectrum.lines.push_back(line);
    }
  }

  if (v.contains("refractive_index"))
    spectrum.refractive_index =
        as_number(v["refractive_index"], "spectrum.refractive_index");
  if (v.contains("physical"))
    spectrum.physical = as_bool(v["physical"], "spectrum.physical");

  const SpectrumValidation check = validate_spectrum(spectrum);
  if (!check.ok) {
    std::string message = "invalid spectrum";
    for (const std::string& violation : check.violations)
      message += "; " + violation;
    fail(message);
  }
  return spectrum;
}

void parse_particles(const json& v, Scenario& scenario) {
  expect_keys(v, "particles", {"positions", "wells", "velocities"});
  const bool has_positions = v.contains("positions");
  const bool has_wells = v.contains("wells");
  if (has_positions && has_wells)
    fail("'particles' takes either 'positions' or 'wells', not both");
  if (has_positions) {
    std::vector<double> positions =
        as_number_array(v["positions"], "particles.positions");
    for (double& x : positions) x *= wavelength_unit;
    scenario.positions = std::move(positions);
  }
  if (has_wells) scenario.wells = as_int_array(v["wells"], "particles.wells");
  if (v.contains("velocities")) {
    std::vector<double> velocities =
        as_number_array(v["velocities"], "particles.velocities");
    for (double& u : velocities) u *= wavelength_unit;
    scenario.velocities = std::move(velocities);
  }
}

LatticePotential parse_lattice(const json& v) {
  expect_keys(v, "lattice", {"depth", "wavenumber"});
  LatticePotential lattice;
  if (v.contains("depth")) lattice.depth = as_number(v["depth"], "lattice.depth");
  if (v.contains("wavenumber"))
    lattice.wavenumber = as_number(v["wavenumber"], "lattice.wavenumber");
  if (!(lattice.wavenumber > 0.0)) fail("'lattice.wavenumber' must be positive");
  return lattice;
}

ScattererParams parse_scatterer(const json& v) {
  expect_keys(v, "scatterer", {"zeta_re", "zeta_im", "eta"});
  ScattererParams params{{0.0, 0.0}, 1.0};
  double re = 0.0, im = 0.0;
  if (v.contains("zeta_re")) re = as_number(v["zeta_re"], "scatterer.zeta_re");
  if (v.contains("zeta_im")) im = as_number(v["zeta_im"], "scatterer.zeta_im");
  params.zeta = {re, im};
  if (v.contains("eta")) params.eta = as_number(v["eta"], "scatterer.eta");
  return params;
}

void parse_dynamics(const json& v, DynamicsConfig& config) {
  expect_keys(v, "dynamics",
              {"integrator", "mass", "friction", "timestep", "duration",
               "record_stride", "force_tol", "velocity_tol"});
  if (v.contains("integrator")) {
    const std::string name = as_string(v["integrator"], "dynamics.integrator");
    if (name == "undamped")
      config.integrator = Integrator::undamped_newtonian;
    else if (name == "damped")
      config.integrator = Integrator::damped_newtonian;
    else if (name == "overdamped")
      config.integrator = Integrator::overdamped;
    else
      fail("'dynamics.integrator' must be 'undamped', 'damped', or 'overdamped'");
  }
  if (v.contains("mass")) config.mass = as_number(v["mass"], "dynamics.mass");
  if (v.contains("friction"))
    config.friction = as_number(v["friction"], "dynamics.friction");
  if (v.contains("timestep"))
    config.timestep = as_number(v["timestep"], "dynamics.timestep");
  if (v.contains("duration"))
    config.duration = as_number(v["duration"], "dynamics.duration");
  if (v.contains("record_stride"))
    config.record_stride = as_int(v["record_stride"], "dynamics.record_stride");
  if (v.contains("force_tol"))
    config.force_tol = as_number(v["force_tol"], "dynamics.force_tol");
  if (v.contains("velocity_tol"))
    config.velocity_tol = as_number(v["velocity_tol"], "dynamics.velocity_tol");
}

void parse_quadrature(const json& v, QuadratureConfig& config) {
  expect_keys(v, "quadrature", {"window", "rel_tol", "max_depth"});
  if (v.contains("window"))
    config.window = as_number(v["window"], "quadrature.window");
  if (v.contains("rel_tol"))
    config.rel_tol = as_number(v["rel_tol"], "quadrature.rel_tol");
  if (v.contains("max_depth"))
    config.max_depth = as_int(v["max_depth"], "quadrature.max_depth");
}

GridSpec parse_grid(const json& v) {
  expect_keys(v, "grid", {"min", "max", "samples"});
  if (!v.contains("min") || !v.contains("max") || !v.contains("samples"))
    fail("'grid' needs 'min', 'max', and 'samples'");
  GridSpec grid;
  grid.min = as_number(v["min"], "grid.min") * wavelength_unit;
  grid.max = as_number(v["max"], "grid.max") * wavelength_unit;
  const int samples = as_int(v["samples"], "grid.samples");
  if (samples < 2) fail("'grid.samples' must be at least 2");
  grid.samples = static_cast<std::size_t>(samples);
  return grid;
}

DesignSpec parse_design(const json& v) {
  expect_keys(v, "design", {"target", "samples", "period", "mmax"});
  if (!v.contains("target")) fail("'design' needs a 'target'");
  DesignSpec design;
  const std::string name = as_string(v["target"], "design.target");
  if (name == "triangle")
    design.target.kind = TargetKind::triangle_wave;
  else if (name == "square")
    design.target.kind = TargetKind::square_wave;
  else if (name == "gaussian_cluster")
    design.target.kind = TargetKind::gaussian_cluster;
  else if (name == "lorentz_comb")
    design.target.kind = TargetKind::lorentz_comb;
  else if (name == "sampled")
    design.target.kind = TargetKind::sampled;
  else
    fail("'design.target' must be one of triangle, square, gaussian_cluster, "
         "lorentz_comb, sampled");

  if (v.contains("period"))
    design.target.period = as_number(v["period"], "design.period") * wavelength_unit;
  if (v.contains("samples")) {
    if (design.target.kind != TargetKind::sampled)
      fail("'design.samples' applies to the sampled target only");
    design.target.samples = as_number_array(v["samples"], "design.samples");
  }
  if (design.target.kind == TargetKind::sampled) {
    if (design.target.samples.empty())
      fail("'design' with a sampled target needs 'samples'");
    if (!(design.target.period > 0.0))
      fail("'design' with a sampled target needs a positive 'period'");
  }
  if (v.contains("mmax")) design.m_max = as_int(v["mmax"], "design.mmax");
  if (design.m_max < 1) fail("'design.mmax' must be at least 1");
  return design;
}

MinimizeSpec parse_minimize(const json& v) {
  expect_keys(v, "minimize",
              {"num_particles", "wells_min", "wells_max", "cap", "relax"});
  if (!v.contains("num_particles") || !v.contains("wells_min") ||
      !v.contains("wells_max"))
    fail("'minimize' needs 'num_particles', 'wells_min', and 'wells_max'");
  MinimizeSpec minimize;
  minimize.num_particles = as_int(v["num_particles"], "minimize.num_particles");
  minimize.wells_min = as_int(v["wells_min"], "minimize.wells_min");
  minimize.wells_max = as_int(v["wells_max"], "minimize.wells_max");
  if (v.contains("cap")) {
    const int cap = as_int(v["cap"], "minimize.cap");
    if (cap < 1) fail("'minimize.cap' must be positive");
    minimize.cap = static_cast<std::uint64_t>(cap);
  }
  if (v.contains("relax")) minimize.relax = as_bool(v["relax"], "minimize.relax");
  return minimize;
}

std::size_t parse_landscape(const json& v) {
  expect_keys(v, "landscape", {"particle"});
  if (!v.contains("particle")) fail("'landscape' needs a 'particle' index");
  const int index = as_int(v["particle"], "landscape.particle");
  if (index < 0) fail("'landscape.particle' must be non-negative");
  return static_cast<std::size_t>(index);
}

std::string parse_output(const json& v) {
  expect_keys(v, "output", {"path"});
  if (!v.contains("path")) fail("'output' needs a 'path'");
  return as_string(v["path"], "output.path");
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("scenario is not valid JSON: ") + e.what());
  }
  expect_keys(root, "scenario",
              {"spectrum", "particles", "lattice", "scatterer", "dynamics",
               "quadrature", "grid", "design", "minimize", "landscape",
               "output"});

  Scenario scenario;
  if (root.contains("spectrum"))
    scenario.spectrum = parse_spectrum(root["spectrum"]);
  if (root.contains("particles")) parse_particles(root["particles"], scenario);
  if (root.contains("lattice"))
    scenario.lattice = parse_lattice(root["lattice"]);
  if (root.contains("scatterer"))
    scenario.scatterer = parse_scatterer(root["scatterer"]);
  if (root.contains("dynamics")) parse_dynamics(root["dynamics"], scenario.dynamics);
  if (root.contains("quadrature"))
    parse_quadrature(root["quadrature"], scenario.quadrature);
  if (root.contains("grid")) scenario.grid = parse_grid(root["grid"]);
  if (root.contains("design")) scenario.design = parse_design(root["design"]);
  if (root.contains("minimize"))
    scenario.minimize = parse_minimize(root["minimize"]);
  if (root.contains("landscape"))
    scenario.landscape_particle = parse_landscape(root["landscape"]);
  if (root.contains("output"))
    scenario.output_path = parse_output(root["output"]);

  if (scenario.wells && !scenario.lattice)
    fail("'particles.wells' needs a 'lattice' section for the well spacing");
  if (scenario.velocities) {
    const std::size_t count = scenario.positions ? scenario.positions->size()
                              : scenario.wells  ? scenario.wells->size()
                                                : 0;
    if (scenario.velocities->size() != count)
      fail("'particles.velocities' must match the particle count");
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in && path.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("NFF_SCENARIO_DIR")) {
      const std::string fallback = std::string(dir) + "/" + path;
      in.open(fallback, std::ios::binary);
    }
  }
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file '" + path + "'");
  return parse_scenario(buffer.str());
}

const Spectrum& require_spectrum(const Scenario& scenario) {
  if (!scenario.spectrum)
    throw std::invalid_argument("this command needs a 'spectrum' section");
  return *scenario.spectrum;
}

ParticleChain build_chain(const Scenario& scenario) {
  if (scenario.positions) return ParticleChain(*scenario.positions);
  if (scenario.wells) {
    const double spacing =
        3.14159265358979323846 / scenario.lattice->wavenumber;
    std::vector<double> positions;
    positions.reserve(scenario.wells->size());
    for (int z : *scenario.wells)
      positions.push_back(static_cast<double>(z) * spacing);
    return ParticleChain(positions);
  }
  throw std::invalid_argument("this command needs a 'particles' section");
}

}  // namespace nff::cli
