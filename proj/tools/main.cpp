#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discord_dyn/errors.hpp"
#include "discord_dyn/harness.hpp"
#include "discord_dyn/io.hpp"
#include "discord_dyn/version.hpp"

namespace {

using namespace discord_dyn;

std::vector<SweepAxis> parse_axes(const std::vector<std::string>& raw) {
  std::vector<SweepAxis> axes;
  for (const std::string& spec : raw) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
      throw ValidationError("--axis expects key=v1,v2,... got: " + spec);
    }
    SweepAxis axis;
    axis.key = spec.substr(0, eq);
    std::string rest = spec.substr(eq + 1);
    size_t pos = 0;
    while (pos != std::string::npos) {
      const size_t comma = rest.find(',', pos);
      const std::string value =
          comma == std::string::npos ? rest.substr(pos) : rest.substr(pos, comma - pos);
      if (value.empty()) throw ValidationError("--axis " + spec + " has an empty value");
      axis.values.push_back(value);
      pos = comma == std::string::npos ? std::string::npos : comma + 1;
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

int run(int argc, char** argv) {
  CLI::App app{"discord_dyn: two-qubit reservoir dynamics with quantum discord tracking"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int threads = 0;

  std::string sim_config;
  std::string sim_output_dir;
  CLI::App* simulate = app.add_subcommand("simulate", "run one scenario from a config file");
  simulate->add_option("--config", sim_config, "config file (key = value lines)")->required();
  simulate->add_option("--output-dir", sim_output_dir, "override output_dir from the config");
  simulate->add_option("--threads", threads, "worker threads (default: DISCORD_DYN_THREADS or hardware)");

  std::string sweep_config;
  std::vector<std::string> sweep_axes;
  int sweep_cap = 256;
  CLI::App* sweep = app.add_subcommand("sweep", "cartesian parameter sweep around a base config");
  sweep->add_option("--config", sweep_config, "base config file")->required();
  sweep->add_option("--axis", sweep_axes, "axis as key=v1,v2,... (repeatable)");
  sweep->add_option("--cap", sweep_cap, "maximum number of grid points");
  sweep->add_option("--threads", threads, "worker threads");

  std::string family;
  std::string fig_out;
  bool insets = false;
  CLI::App* figures = app.add_subcommand("figures", "emit plot-ready data for a scenario family");
  figures->add_option("--family", family, "fig1 | fig2 | fig3")->required();
  figures->add_option("--out", fig_out, "output directory")->required();
  figures->add_flag("--insets", insets, "also emit long-time inset series (slow)");
  figures->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    RunConfig config = load_config_file(sim_config);
    if (!sim_output_dir.empty()) config.output_dir = sim_output_dir;
    auto results = run_scenario(config, nullptr, threads);
    for (const auto& r : results) {
      std::cout << r.name << ": " << r.trajectory.size() << " rows -> " << r.csv_path.string()
                << " (terminal discord " << format_double(r.trajectory.discord.back()) << ")\n";
    }
    return 0;
  }

  if (sweep->parsed()) {
    const RunConfig base = load_config_file(sweep_config);
    SweepOptions opts;
    opts.cap = sweep_cap;
    opts.threads = threads;
    const SweepReport report = run_sweep(base, parse_axes(sweep_axes), opts);
    std::cout << report.points.size() << " points, " << report.failed << " failed; summary: "
              << report.summary_csv.string() << "\n";
    for (const auto& p : report.points) {
      if (!p.ok) std::cout << "  failed " << p.name << " [" << p.assignment << "]: " << p.error << "\n";
    }
    if (report.failed > 0) return 2;
    return 0;
  }

  emit_figure_data(family, fig_out, insets, threads);
  std::cout << "wrote " << family << " data to " << fig_out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
