#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "csv.hpp"
#include "nff/core_types.hpp"
#include "nff/dynamics.hpp"
#include "nff/optimizer.hpp"
#include "nff/pair_interactions.hpp"
#include "nff/spectral_designer.hpp"
#include "nff/transfer_matrix.hpp"
#include "scenario.hpp"

// Command-line front end. Scenario files and CSV columns use wavelength units
// (lambda_1 = 2 pi in the library's raw units) for every distance-like value;
// forces, energies, wavenumbers, and times stay raw.

namespace {

using namespace nff;
using nff::cli::CsvWriter;
using nff::cli::GridSpec;
using nff::cli::Scenario;
using nff::cli::wavelength_unit;

struct CommonArgs {
  std::string scenario_path;
  std::string output;
  bool check_only = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("scenario", args.scenario_path,
                  "Scenario JSON file (bare names also resolve under "
                  "$NFF_SCENARIO_DIR)");
  sub->add_option("-o,--output", args.output, "Output CSV path");
  sub->add_flag("--check-only", args.check_only,
                "Validate the scenario file and exit");
}

// Loads the scenario if a path was given, otherwise starts from defaults.
Scenario resolve_scenario(const CommonArgs& args) {
  if (args.scenario_path.empty()) return Scenario{};
  return nff::cli::load_scenario(args.scenario_path);
}

// True when the subcommand should stop after schema validation.
bool handle_check_only(const CommonArgs& args) {
  if (!args.check_only) return false;
  if (args.scenario_path.empty())
    throw std::invalid_argument("--check-only needs a scenario file");
  nff::cli::load_scenario(args.scenario_path);
  std::cout << "scenario '" << args.scenario_path << "' is valid\n";
  return true;
}

std::string output_path(const CommonArgs& args, const Scenario& scenario,
                        const std::string& fallback) {
  if (!args.output.empty()) return args.output;
  if (scenario.output_path) return *scenario.output_path;
  return fallback;
}

struct PresetFlags {
  std::string preset;
  std::string variant = "ideal";
  int m_max = 0;  // 0 = preset default
};

void add_preset_flags(CLI::App* sub, PresetFlags& flags) {
  sub->add_option("--preset", flags.preset,
                  "Spectrum preset: triangle, square, gaussian_cluster, "
                  "lorentz_comb");
  sub->add_option("--variant", flags.variant, "Preset variant: ideal or broadened");
  sub->add_option("--mmax", flags.m_max, "Number of preset lines");
}

PresetName preset_name(const std::string& name) {
  if (name == "triangle") return PresetName::triangle;
  if (name == "square") return PresetName::square;
  if (name == "gaussian_cluster") return PresetName::gaussian_cluster;
  if (name == "lorentz_comb") return PresetName::lorentz_comb;
  throw std::invalid_argument(
      "--preset must be one of triangle, square, gaussian_cluster, lorentz_comb");
}

// Flag spectrum beats the scenario spectrum; neither present is an error.
Spectrum resolve_spectrum(const Scenario& scenario, const PresetFlags& flags) {
  if (!flags.preset.empty()) {
    const PresetName name = preset_name(flags.preset);
    bool broadened = false;
    if (flags.variant == "broadened")
      broadened = true;
    else if (flags.variant != "ideal")
      throw std::invalid_argument("--variant must be 'ideal' or 'broadened'");
    int m_max = flags.m_max;
    if (m_max == 0) m_max = name == PresetName::gaussian_cluster ? 20 : 10;
    return preset_spectrum(name, m_max, broadened);
  }
  if (flags.m_max != 0 || flags.variant != "ideal")
    throw std::invalid_argument("--mmax and --variant need --preset");
  return nff::cli::require_spectrum(scenario);
}

struct GridFlags {
  double min = -1.0;
  double max = -1.0;
  int samples = 0;
  bool min_set = false, max_set = false, samples_set = false;
};

void add_grid_flags(CLI::App* sub, GridFlags& flags, const char* what) {
  sub->add_option("--dmin", flags.min, std::string("Grid start, ") + what)
      ->each([&flags](const std::string&) { flags.min_set = true; });
  sub->add_option("--dmax", flags.max, std::string("Grid end, ") + what)
      ->each([&flags](const std::string&) { flags.max_set = true; });
  sub->add_option("--samples", flags.samples, "Grid sample count")
      ->each([&flags](const std::string&) { flags.samples_set = true; });
}

GridSpec resolve_grid(const Scenario& scenario, const GridFlags& flags,
                      const GridSpec& fallback) {
  GridSpec grid = scenario.grid ? *scenario.grid : fallback;
  if (flags.min_set) grid.min = flags.min * wavelength_unit;
  if (flags.max_set) grid.max = flags.max * wavelength_unit;
  if (flags.samples_set) {
    if (flags.samples < 2)
      throw std::invalid_argument("--samples must be at least 2");
    grid.samples = static_cast<std::size_t>(flags.samples);
  }
  if (!(grid.max > grid.min))
    throw std::invalid_argument("grid needs max > min");
  return grid;
}

struct ScattererFlags {
  double zeta_re = 0.0, zeta_im = 0.0, eta = 1.0;
  bool re_set = false, im_set = false, eta_set = false;
};

void add_scatterer_flags(CLI::App* sub, ScattererFlags& flags) {
  sub->add_option("--zeta-re", flags.zeta_re, "Scatterer coupling, real part")
      ->each([&flags](const std::string&) { flags.re_set = true; });
  sub->add_option("--zeta-im", flags.zeta_im,
                  "Scatterer coupling, imaginary part (absorption)")
      ->each([&flags](const std::string&) { flags.im_set = true; });
  sub->add_option("--eta", flags.eta, "Transverse pump amplitude")
      ->each([&flags](const std::string&) { flags.eta_set = true; });
}

ScattererParams resolve_scatterer(const Scenario& scenario,
                                  const ScattererFlags& flags) {
  ScattererParams params =
      scenario.scatterer ? *scenario.scatterer : ScattererParams{{0.0, 0.0}, 1.0};
  double re = params.zeta.real(), im = params.zeta.imag();
  if (flags.re_set) re = flags.zeta_re;
  if (flags.im_set) im = flags.zeta_im;
  params.zeta = {re, im};
  if (flags.eta_set) params.eta = flags.eta;
  return params;
}

void write_lines_csv(const Spectrum& spectrum, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"index", "intensity", "wavenumber", "linewidth"});
  for (std::size_t i = 0; i < spectrum.lines.size(); ++i) {
    csv.raw_row({std::to_string(i + 1),
                 nff::cli::format_number(spectrum.lines[i].intensity),
                 nff::cli::format_number(spectrum.lines[i].wavenumber),
                 nff::cli::format_number(spectrum.lines[i].linewidth)});
  }
  csv.close();
}

// Pair curves: separation swept over the grid, values from fn.
template <typename Fn>
void run_pair_curve(const CommonArgs& args, const PresetFlags& preset,
                    const GridFlags& grid_flags, const char* value_column,
                    const char* default_output, Fn fn) {
  const Scenario scenario = resolve_scenario(args);
  const Spectrum spectrum = resolve_spectrum(scenario, preset);
  const GridSpec grid = resolve_grid(
      scenario, grid_flags, GridSpec{0.0, 2.0 * wavelength_unit, 512});
  const std::string path = output_path(args, scenario, default_output);
  CsvWriter csv(path);
  csv.header({"separation", value_column});
  for (std::size_t i = 0; i < grid.samples; ++i) {
    const double d = grid.min + (grid.max - grid.min) * static_cast<double>(i) /
                                    static_cast<double>(grid.samples - 1);
    csv.row({d / wavelength_unit, fn(d, spectrum)});
  }
  csv.close();
  std::cout << "wrote " << grid.samples << " samples to " << path << "\n";
}

void run_field(const CommonArgs& args, const ScattererFlags& scatterer_flags,
               double wavenumber) {
  const Scenario scenario = resolve_scenario(args);
  const ParticleChain chain = nff::cli::build_chain(scenario);
  const ScattererParams params = resolve_scatterer(scenario, scatterer_flags);
  const FieldState fields = solve_fields(chain, params, wavenumber);
  const std::string path = output_path(args, scenario, "field.csv");
  CsvWriter csv(path);
  csv.header({"particle", "position", "a_re", "a_im", "b_re", "b_im", "c_re",
              "c_im", "d_re", "d_im"});
  for (std::size_t j = 0; j < chain.size(); ++j) {
    csv.raw_row({std::to_string(j),
                 nff::cli::format_number(chain[j] / wavelength_unit),
                 nff::cli::format_number(fields.A[j].real()),
                 nff::cli::format_number(fields.A[j].imag()),
                 nff::cli::format_number(fields.B[j].real()),
                 nff::cli::format_number(fields.B[j].imag()),
                 nff::cli::format_number(fields.C[j].real()),
                 nff::cli::format_number(fields.C[j].imag()),
                 nff::cli::format_number(fields.D[j].real()),
                 nff::cli::format_number(fields.D[j].imag())});
  }
  csv.close();
  std::cout << "wrote fields for " << chain.size() << " particles to " << path
            << "\n";
}

// Spectra split by line across threads; the final sum runs in line order, so
// the result is identical for any thread count.
std::vector<double> exact_forces_threaded(const ParticleChain& chain,
                                          const ScattererParams& params,
                                          const Spectrum& spectrum,
                                          const QuadratureConfig& quadrature,
                                          int threads) {
  const std::size_t lines = spectrum.lines.size();
  std::vector<std::vector<double>> partial(lines);
  const auto compute_line = [&](std::size_t m) {
    Spectrum one;
    one.refractive_index = spectrum.refractive_index;
    one.physical = spectrum.physical;
    one.lines = {spectrum.lines[m]};
    partial[m] = total_force_exact(chain, params, one, quadrature);
  };
  if (threads <= 1 || lines <= 1) {
    for (std::size_t m = 0; m < lines; ++m) compute_line(m);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<int>(threads, static_cast<int>(lines));
    for (int t = 0; t < count; ++t) {
      pool.emplace_back([&]() {
        while (true) {
          const std::size_t m = next.fetch_add(1);
          if (m >= lines) return;
          compute_line(m);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::vector<double> total(chain.size(), 0.0);
  for (std::size_t m = 0; m < lines; ++m) {
    for (std::size_t j = 0; j < chain.size(); ++j) total[j] += partial[m][j];
  }
  return total;
}

void run_force_exact(const CommonArgs& args, const PresetFlags& preset,
                     const ScattererFlags& scatterer_flags, int threads) {
  const Scenario scenario = resolve_scenario(args);
  const Spectrum spectrum = resolve_spectrum(scenario, preset);
  const ParticleChain chain = nff::cli::build_chain(scenario);
  const ScattererParams params = resolve_scatterer(scenario, scatterer_flags);
  const std::vector<double> forces = exact_forces_threaded(
      chain, params, spectrum, scenario.quadrature, threads);
  const std::string path = output_path(args, scenario, "force-exact.csv");
  CsvWriter csv(path);
  csv.header({"particle", "position", "force"});
  for (std::size_t j = 0; j < chain.size(); ++j) {
    csv.raw_row({std::to_string(j),
                 nff::cli::format_number(chain[j] / wavelength_unit),
                 nff::cli::format_number(forces[j])});
  }
  csv.close();
  std::cout << "wrote exact forces for " << chain.size() << " particles to "
            << path << "\n";
}

void run_design(const CommonArgs& args) {
  const Scenario scenario = resolve_scenario(args);
  if (!scenario.design)
    throw std::invalid_argument("the design command needs a 'design' section");
  const nff::cli::DesignSpec& spec = *scenario.design;
  const DesignResult result = cosine_coefficients(spec.target, spec.m_max);
  const std::string path = output_path(args, scenario, "design.csv");
  write_lines_csv(result.spectrum, path);
  std::cout << "designed " << result.spectrum.lines.size() << " lines"
            << " (discarded mean " << nff::cli::format_number(result.discarded_mean)
            << "); wrote " << path << "\n";
  if (scenario.grid) {
    const DesignReport report =
        evaluate_design(result.spectrum, spec.target, scenario.grid->min,
                        scenario.grid->max, scenario.grid->samples);
    std::cout << "target error: l2=" << nff::cli::format_number(report.l2)
              << " linf=" << nff::cli::format_number(report.linf)
              << " physical=" << (report.physical ? "yes" : "no") << "\n";
  }
}

void run_presets(const CommonArgs& args, const PresetFlags& flags) {
  if (flags.preset.empty())
    throw std::invalid_argument("the presets command needs --preset");
  const Scenario scenario = resolve_scenario(args);
  const Spectrum spectrum = resolve_spectrum(scenario, flags);
  const std::string path = output_path(args, scenario, "presets.csv");
  write_lines_csv(spectrum, path);
  std::cout << "wrote " << spectrum.lines.size() << " lines to " << path << "\n";
}

void run_simulate(const CommonArgs& args) {
  const Scenario scenario = resolve_scenario(args);
  const Spectrum& spectrum = nff::cli::require_spectrum(scenario);
  const ParticleChain chain = nff::cli::build_chain(scenario);
  std::vector<double> velocities(chain.size(), 0.0);
  if (scenario.velocities) velocities = *scenario.velocities;

  const Trajectory traj =
      simulate(chain, velocities, spectrum, scenario.lattice, scenario.dynamics);

  const std::string path = output_path(args, scenario, "simulate.csv");
  CsvWriter csv(path);
  std::vector<std::string> header{"time"};
  for (std::size_t j = 1; j <= chain.size(); ++j)
    header.push_back("x" + std::to_string(j));
  for (std::size_t j = 1; j <= chain.size(); ++j)
    header.push_back("v" + std::to_string(j));
  csv.header(header);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    for (double x : traj.positions[i]) row.push_back(x / wavelength_unit);
    for (double v : traj.velocities[i]) row.push_back(v / wavelength_unit);
    csv.row(row);
  }
  csv.close();

  std::cout << "wrote " << traj.times.size() << " frames to " << path
            << " (converged=" << (traj.converged ? "yes" : "no")
            << ", timestep_warning=" << (traj.timestep_warning ? "yes" : "no")
            << ")\n";
  const CharacteristicTimes times =
      characteristic_times(scenario.dynamics, spectrum, scenario.lattice);
  if (times.t_mu || times.t_0) {
    std::cout << "characteristic times:";
    if (times.t_mu)
      std::cout << " t_mu=" << nff::cli::format_number(*times.t_mu);
    if (times.t_0) std::cout << " t_0=" << nff::cli::format_number(*times.t_0);
    std::cout << "\n";
  }
}

void run_minimize(const CommonArgs& args, int threads) {
  const Scenario scenario = resolve_scenario(args);
  if (!scenario.minimize)
    throw std::invalid_argument("the minimize command needs a 'minimize' section");
  if (!scenario.lattice)
    throw std::invalid_argument("the minimize command needs a 'lattice' section");
  const Spectrum& spectrum = nff::cli::require_spectrum(scenario);
  const nff::cli::MinimizeSpec& spec = *scenario.minimize;

  const WellRanking ranking = enumerate_well_configs(
      spec.num_particles, spec.wells_min, spec.wells_max, spectrum,
      *scenario.lattice, spec.cap, threads);

  const std::string path = output_path(args, scenario, "minimize.csv");
  CsvWriter csv(path);
  csv.header({"rank", "assignment", "energy"});
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    std::string wells;
    for (std::size_t j = 0; j < ranking.entries[i].wells.size(); ++j) {
      if (j > 0) wells += ' ';
      wells += std::to_string(ranking.entries[i].wells[j]);
    }
    csv.raw_row({std::to_string(i + 1), wells,
                 nff::cli::format_number(ranking.entries[i].energy)});
  }
  csv.close();
  std::cout << "ranked " << ranking.entries.size() << " assignments; best energy "
            << nff::cli::format_number(ranking.entries.front().energy)
            << "; wrote " << path << "\n";

  if (spec.relax) {
    const double spacing =
        3.14159265358979323846 / scenario.lattice->wavenumber;
    std::vector<double> positions;
    for (int z : ranking.entries.front().wells)
      positions.push_back(static_cast<double>(z) * spacing);
    const RelaxResult relaxed = local_relax(ParticleChain(positions), spectrum,
                                            scenario.lattice, 1e-6);
    std::cout << "relaxed best assignment: converged="
              << (relaxed.report.converged ? "yes" : "no")
              << " iterations=" << relaxed.report.iterations
              << " residual=" << nff::cli::format_number(relaxed.report.residual)
              << " any_left_well="
              << (relaxed.report.any_left_well ? "yes" : "no") << "\npositions:";
    for (std::size_t j = 0; j < relaxed.chain.size(); ++j)
      std::cout << " "
                << nff::cli::format_number(relaxed.chain[j] / wavelength_unit);
    std::cout << "\n";
  }
}

void run_landscape(const CommonArgs& args, const GridFlags& grid_flags) {
  const Scenario scenario = resolve_scenario(args);
  if (!scenario.landscape_particle)
    throw std::invalid_argument(
        "the landscape command needs a 'landscape' section");
  if (!scenario.lattice)
    throw std::invalid_argument("the landscape command needs a 'lattice' section");
  const Spectrum& spectrum = nff::cli::require_spectrum(scenario);
  const ParticleChain chain = nff::cli::build_chain(scenario);
  if (!scenario.grid && !(grid_flags.min_set && grid_flags.max_set &&
                          grid_flags.samples_set))
    throw std::invalid_argument("the landscape command needs a 'grid' section");
  const GridSpec grid = resolve_grid(scenario, grid_flags, GridSpec{});

  const LandscapeCurve curve =
      landscape_scan(*scenario.landscape_particle, chain, spectrum,
                     *scenario.lattice, grid.min, grid.max, grid.samples);
  const std::string path = output_path(args, scenario, "landscape.csv");
  CsvWriter csv(path);
  csv.header({"x", "interaction", "lattice"});
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    csv.row({curve.xs[i] / wavelength_unit, curve.interaction[i],
             curve.lattice[i]});
  }
  csv.close();
  std::cout << "wrote " << curve.xs.size() << " landscape samples to " << path
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nff: light-mediated forces between particles along a nanofiber under "
      "spectrally shaped illumination"};
  app.require_subcommand(1);

  CommonArgs pair_force_args, pair_potential_args, field_args, force_exact_args,
      design_args, simulate_args, minimize_args, landscape_args, presets_args;
  PresetFlags pair_force_preset, pair_potential_preset, force_exact_preset,
      presets_preset;
  GridFlags pair_force_grid, pair_potential_grid, landscape_grid;
  ScattererFlags field_scatterer, force_exact_scatterer;
  double field_wavenumber = 1.0;
  int force_exact_threads = 1, minimize_threads = 1;

  CLI::App* pair_force_cmd = app.add_subcommand(
      "pair-force", "Frequency-integrated force between two particles vs "
                    "separation");
  add_common(pair_force_cmd, pair_force_args);
  add_preset_flags(pair_force_cmd, pair_force_preset);
  add_grid_flags(pair_force_cmd, pair_force_grid, "wavelength units");

  CLI::App* pair_potential_cmd = app.add_subcommand(
      "pair-potential", "Pair interaction energy vs separation");
  add_common(pair_potential_cmd, pair_potential_args);
  add_preset_flags(pair_potential_cmd, pair_potential_preset);
  add_grid_flags(pair_potential_cmd, pair_potential_grid, "wavelength units");

  CLI::App* field_cmd = app.add_subcommand(
      "field", "Steady-state mode amplitudes around every particle at one "
               "wavenumber");
  add_common(field_cmd, field_args);
  add_scatterer_flags(field_cmd, field_scatterer);
  field_cmd->add_option("--wavenumber", field_wavenumber,
                    "Wavenumber (raw units, k1 = 1)");

  CLI::App* force_exact_cmd = app.add_subcommand(
      "force-exact", "Multiple-scattering forces integrated over the spectrum");
  add_common(force_exact_cmd, force_exact_args);
  add_preset_flags(force_exact_cmd, force_exact_preset);
  add_scatterer_flags(force_exact_cmd, force_exact_scatterer);
  force_exact_cmd->add_option("--threads", force_exact_threads,
                          "Worker threads over spectral lines");

  CLI::App* design_cmd = app.add_subcommand(
      "design", "Cosine-series line intensities for a target force profile");
  add_common(design_cmd, design_args);

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Integrate the chain's equations of motion");
  add_common(simulate_cmd, simulate_args);

  CLI::App* minimize_cmd = app.add_subcommand(
      "minimize", "Rank lattice-well assignments by total energy");
  add_common(minimize_cmd, minimize_args);
  minimize_cmd->add_option("--threads", minimize_threads,
                       "Worker threads over assignments");

  CLI::App* landscape_cmd = app.add_subcommand(
      "landscape", "Potential felt by one particle between its neighbors");
  add_common(landscape_cmd, landscape_args);
  add_grid_flags(landscape_cmd, landscape_grid, "wavelength units");

  CLI::App* presets_cmd =
      app.add_subcommand("presets", "Dump a preset spectrum's line table");
  add_common(presets_cmd, presets_args);
  add_preset_flags(presets_cmd, presets_preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (pair_force_cmd->parsed()) {
      if (!handle_check_only(pair_force_args)) {
        run_pair_curve(pair_force_args, pair_force_preset, pair_force_grid,
                       "force", "pair-force.csv",
                       [](double d, const Spectrum& s) { return pair_force(d, s); });
      }
    } else if (pair_potential_cmd->parsed()) {
      if (!handle_check_only(pair_potential_args)) {
        run_pair_curve(pair_potential_args, pair_potential_preset,
                       pair_potential_grid, "energy", "pair-potential.csv",
                       [](double d, const Spectrum& s) {
                         return pair_potential(d, s);
                       });
      }
    } else if (field_cmd->parsed()) {
      if (!handle_check_only(field_args))
        run_field(field_args, field_scatterer, field_wavenumber);
    } else if (force_exact_cmd->parsed()) {
      if (!handle_check_only(force_exact_args))
        run_force_exact(force_exact_args, force_exact_preset,
                        force_exact_scatterer, force_exact_threads);
    } else if (design_cmd->parsed()) {
      if (!handle_check_only(design_args)) run_design(design_args);
    } else if (simulate_cmd->parsed()) {
      if (!handle_check_only(simulate_args)) run_simulate(simulate_args);
    } else if (minimize_cmd->parsed()) {
      if (!handle_check_only(minimize_args))
        run_minimize(minimize_args, minimize_threads);
    } else if (landscape_cmd->parsed()) {
      if (!handle_check_only(landscape_args))
        run_landscape(landscape_args, landscape_grid);
    } else if (presets_cmd->parsed()) {
      if (!handle_check_only(presets_args)) run_presets(presets_args, presets_preset);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nff::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
