#include "discord_dyn/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "discord_dyn/discord.hpp"
#include "discord_dyn/errors.hpp"
#include "discord_dyn/io.hpp"
#include "discord_dyn/version.hpp"

namespace discord_dyn {

namespace {

using nlohmann::json;

constexpr const char* kCsvColumns[5] = {"omega_a_t", "discord", "trace_error", "min_eigenvalue",
                                        "purity"};

std::vector<double> stage_grid(double t_end, int n_steps) {
  std::vector<double> t(static_cast<size_t>(2 * n_steps) + 1);
  const double h = t_end / n_steps;
  for (size_t i = 0; i < t.size(); ++i) t[i] = 0.5 * h * static_cast<double>(i);
  return t;
}

json config_json(const RunConfig& c) {
  json j = json::object();
  std::istringstream lines(emit_config(c));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

json file_entry(size_t rows, const std::vector<uint64_t>& checksums) {
  json cols = json::object();
  for (size_t c = 0; c < checksums.size(); ++c) cols[kCsvColumns[c]] = to_hex(checksums[c]);
  return json{{"rows", rows}, {"column_checksums", cols}};
}

std::vector<uint64_t> write_trajectory_csv(const std::filesystem::path& path,
                                           const Trajectory& traj) {
  return write_csv_atomic(path, {{kCsvColumns[0], &traj.times},
                                 {kCsvColumns[1], &traj.discord},
                                 {kCsvColumns[2], &traj.trace_error},
                                 {kCsvColumns[3], &traj.min_eigenvalue},
                                 {kCsvColumns[4], &traj.purity}});
}

struct PanelSpec {
  std::string panel;
  ReservoirKind kind;
  double omega_c;
  bool high_t;
  std::string initial;
};

const std::vector<PanelSpec>& family_panels(const std::string& family) {
  static const std::vector<PanelSpec> fig1 = {
      {"a", ReservoirKind::Independent, 10.0, true, "bell_psi_plus"},
      {"b", ReservoirKind::Independent, 1.0, true, "bell_psi_plus"},
      {"c", ReservoirKind::Independent, 0.3, true, "bell_psi_plus"},
      {"d", ReservoirKind::Common, 10.0, true, "bell_psi_plus"},
      {"e", ReservoirKind::Common, 1.0, true, "bell_psi_plus"},
      {"f", ReservoirKind::Common, 0.3, true, "bell_psi_plus"},
  };
  static const std::vector<PanelSpec> fig2 = {
      {"a", ReservoirKind::Independent, 10.0, false, "bell_psi_plus"},
      {"b", ReservoirKind::Independent, 1.0, false, "bell_psi_plus"},
      {"c", ReservoirKind::Independent, 0.3, false, "bell_psi_plus"},
      {"d", ReservoirKind::Common, 10.0, false, "bell_psi_plus"},
      {"e", ReservoirKind::Common, 1.0, false, "bell_psi_plus"},
      {"f", ReservoirKind::Common, 0.3, false, "bell_psi_plus"},
  };
  static const std::vector<PanelSpec> fig3 = {
      {"a", ReservoirKind::Common, 10.0, false, "eg"},
      {"b", ReservoirKind::Common, 1.0, false, "eg"},
      {"c", ReservoirKind::Common, 0.3, false, "eg"},
      {"d", ReservoirKind::Common, 10.0, false, "ee"},
      {"e", ReservoirKind::Common, 1.0, false, "ee"},
      {"f", ReservoirKind::Common, 0.3, false, "ee"},
  };
  if (family == "fig1") return fig1;
  if (family == "fig2") return fig2;
  if (family == "fig3") return fig3;
  throw ValidationError("unknown figure family: " + family + " (expected fig1|fig2|fig3)");
}

const std::vector<std::pair<std::string, double>>& spectra() {
  static const std::vector<std::pair<std::string, double>> s = {
      {"sub_ohmic", 0.5}, {"ohmic", 1.0}, {"super_ohmic", 3.0}};
  return s;
}

RunConfig panel_config(const RunConfig& base, const PanelSpec& panel, double exponent) {
  RunConfig c = base;
  c.preset.clear();
  c.kind = panel.kind;
  c.spectrum.cutoff = panel.omega_c;
  c.spectrum.exponent = exponent;
  c.regime = panel.high_t ? TemperatureRegime::high(100.0) : TemperatureRegime::zero();
  c.initial_state = InitialStateSpec{panel.initial, std::nullopt};
  return c;
}

std::string cache_key(const SpectralParams& p, const TemperatureRegime& r,
                      const QuadratureOptions& q, const std::vector<double>& stage_times) {
  std::string key = format_double(p.coupling_sq) + "|" + format_double(p.cutoff) + "|" +
                    format_double(p.exponent) + "|" + r.label() + "|" + format_double(q.abs_tol) +
                    "|" + format_double(q.rel_tol) + "|" + std::to_string(stage_times.size()) +
                    "|" + (stage_times.empty() ? "" : format_double(stage_times.back()));
  return key;
}

}  // namespace

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DISCORD_DYN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_index(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::min(std::max(1, threads), std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::shared_ptr<const CoefficientCache> CoefficientCacheStore::get_or_compute(
    const SpectralParams& params, const TemperatureRegime& regime, const QuadratureOptions& quad,
    const std::vector<double>& stage_times) {
  const std::string key = cache_key(params, regime, quad, stage_times);
  std::shared_future<std::shared_ptr<const CoefficientCache>> fut;
  bool owner = false;
  std::promise<std::shared_ptr<const CoefficientCache>> promise;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      fut = promise.get_future().share();
      entries_.emplace(key, fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const CoefficientCache>(
          CoefficientCache::compute(stage_times, params, regime, quad)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

std::vector<std::pair<std::string, RunConfig>> expand_scenario(const RunConfig& config) {
  std::vector<std::pair<std::string, RunConfig>> runs;
  if (config.preset.empty()) {
    runs.emplace_back("run", config);
    return runs;
  }
  if (config.preset.size() != 5 || config.preset.rfind("fig", 0) != 0) {
    throw ValidationError("unknown preset: " + config.preset);
  }
  const std::string family = config.preset.substr(0, 4);
  const std::string panel_id = config.preset.substr(4);
  for (const PanelSpec& panel : family_panels(family)) {
    if (panel.panel != panel_id) continue;
    for (const auto& [spectrum_name, exponent] : spectra()) {
      runs.emplace_back(config.preset + "_" + spectrum_name, panel_config(config, panel, exponent));
    }
    return runs;
  }
  throw ValidationError("unknown panel in preset: " + config.preset);
}

Trajectory simulate_trajectory(const RunConfig& config, CoefficientCacheStore* store) {
  config.validate();
  PropagatorOptions popts;
  popts.quadrature = config.quadrature;
  const Matrix4 rho0 = config.initial_state.resolve();
  Trajectory traj;
  if (store) {
    auto cache = store->get_or_compute(config.spectrum, config.regime, config.quadrature,
                                       stage_grid(config.t_end, config.n_steps));
    traj = propagate_with_cache(rho0, config.kind, *cache, popts);
  } else {
    traj = propagate_numerical(rho0, config.kind, config.spectrum, config.regime, config.t_end,
                               config.n_steps, popts);
  }
  DiscordOptions dopts;
  dopts.grid = config.discord_grid;
  fill_discord(traj, dopts);
  return traj;
}

std::vector<RunResult> run_scenario(const RunConfig& config, CoefficientCacheStore* store,
                                    int threads) {
  const auto started = std::chrono::steady_clock::now();
  config.validate();
  auto expanded = expand_scenario(config);
  for (auto& [name, run_config] : expanded) run_config.validate();

  const std::filesystem::path out_dir(config.output_dir);
  std::filesystem::create_directories(out_dir);

  CoefficientCacheStore local_store;
  if (!store) store = &local_store;

  std::vector<RunResult> results(expanded.size());
  json files = json::object();
  std::mutex files_mutex;
  parallel_for_index(static_cast<int>(expanded.size()), resolve_thread_count(threads), [&](int i) {
    const auto& [name, run_config] = expanded[static_cast<size_t>(i)];
    RunResult r;
    r.name = name;
    r.config = run_config;
    r.trajectory = simulate_trajectory(run_config, store);
    r.csv_path = out_dir / (name + ".csv");
    const auto checksums = write_trajectory_csv(r.csv_path, r.trajectory);
    {
      std::lock_guard<std::mutex> lock(files_mutex);
      files[name + ".csv"] = file_entry(r.trajectory.size(), checksums);
    }
    results[static_cast<size_t>(i)] = std::move(r);
  });

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json_atomic(out_dir / "manifest.json", json{{"version", kVersion},
                                                    {"config", config_json(config)},
                                                    {"duration_seconds", seconds},
                                                    {"files", files}});
  return results;
}

double time_to_half_discord(const Trajectory& traj) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (traj.discord.empty()) return inf;
  const double d0 = traj.discord.front();
  if (!(d0 > 1e-12)) return inf;
  const double target = 0.5 * d0;
  for (size_t i = 1; i < traj.discord.size(); ++i) {
    if (traj.discord[i] <= target) {
      const double d_prev = traj.discord[i - 1];
      const double d_cur = traj.discord[i];
      const double frac = (d_prev - target) / std::max(d_prev - d_cur, 1e-300);
      return traj.times[i - 1] + frac * (traj.times[i] - traj.times[i - 1]);
    }
  }
  return inf;
}

SweepReport run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                      const SweepOptions& opts) {
  base.validate();
  if (!base.preset.empty()) {
    throw ValidationError("run_sweep: base config must not use a panel preset");
  }
  for (const auto& axis : axes) {
    if (axis.values.empty()) throw ValidationError("run_sweep: axis '" + axis.key + "' is empty");
  }

  size_t total = 1;
  for (const auto& axis : axes) {
    total *= axis.values.size();
    if (total > static_cast<size_t>(opts.cap)) {
      throw ValidationError("run_sweep: grid of " + std::to_string(total) +
                            " points exceeds the cap of " + std::to_string(opts.cap));
    }
  }

  struct Point {
    std::string name;
    std::string assignment;
    RunConfig config;
  };
  std::vector<Point> points;
  points.reserve(total);
  for (size_t flat = 0; flat < total; ++flat) {
    RunConfig c = base;
    std::string assignment;
    size_t rest = flat;
    for (const auto& axis : axes) {
      const size_t idx = rest % axis.values.size();
      rest /= axis.values.size();
      apply_config_entry(c, axis.key, axis.values[idx]);
      if (!assignment.empty()) assignment += " ";
      assignment += axis.key + "=" + axis.values[idx];
    }
    char name[32];
    std::snprintf(name, sizeof(name), "point_%04zu", flat);
    points.push_back(Point{name, assignment, std::move(c)});
  }

  const std::filesystem::path out_dir(base.output_dir);
  std::filesystem::create_directories(out_dir);

  SweepReport report;
  report.points.resize(points.size());
  CoefficientCacheStore store;
  parallel_for_index(static_cast<int>(points.size()), resolve_thread_count(opts.threads),
                     [&](int i) {
                       const Point& p = points[static_cast<size_t>(i)];
                       SweepPointOutcome& outcome = report.points[static_cast<size_t>(i)];
                       outcome.name = p.name;
                       outcome.assignment = p.assignment;
                       try {
                         RunConfig c = p.config;
                         c.output_dir = (out_dir / p.name).string();
                         c.validate();
                         auto results = run_scenario(c, &store, 1);
                         const Trajectory& traj = results.front().trajectory;
                         outcome.terminal_discord = traj.discord.back();
                         outcome.time_to_half = time_to_half_discord(traj);
                         outcome.ok = true;
                       } catch (const std::exception& e) {
                         outcome.ok = false;
                         outcome.error = e.what();
                       }
                     });

  for (const auto& p : report.points) {
    if (!p.ok) ++report.failed;
  }

  // Summary rows in point order; terminal discord is rendered with the same
  // formatter as the per-run CSV so the texts match exactly.
  std::string summary = "point,assignment,status,terminal_discord,time_to_half_discord\n";
  for (const auto& p : report.points) {
    summary += p.name + ",\"" + p.assignment + "\"," + (p.ok ? "ok" : "failed") + "," +
               (p.ok ? format_double(p.terminal_discord) : "") + "," +
               (p.ok ? format_double(p.time_to_half) : "") + "\n";
  }
  report.summary_csv = out_dir / "summary.csv";
  {
    const std::filesystem::path tmp = report.summary_csv.string() + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
    out << summary;
    out.close();
    std::filesystem::rename(tmp, report.summary_csv);
  }

  json failures = json::array();
  for (const auto& p : report.points) {
    if (!p.ok) failures.push_back(json{{"point", p.name}, {"assignment", p.assignment},
                                       {"error", p.error}});
  }
  write_json_atomic(out_dir / "sweep_report.json",
                    json{{"version", kVersion},
                         {"points", report.points.size()},
                         {"failed", report.failed},
                         {"failures", failures}});
  return report;
}

std::vector<FigureSeries> figure_series(const std::string& family, bool insets) {
  std::vector<FigureSeries> series;
  RunConfig base;
  base.quadrature = QuadratureOptions{};
  for (const PanelSpec& panel : family_panels(family)) {
    for (const auto& [spectrum_name, exponent] : spectra()) {
      FigureSeries s;
      s.panel = panel.panel;
      s.spectrum = spectrum_name;
      s.config = panel_config(base, panel, exponent);
      s.config.t_end = 50.0;
      s.config.n_steps = 4000;
      s.file_name = family + panel.panel + "_" + spectrum_name + ".csv";
      series.push_back(s);
      if (insets) {
        FigureSeries inset = s;
        inset.config.t_end = 2000.0;
        inset.config.n_steps = 40000;
        inset.file_name = family + panel.panel + "_" + spectrum_name + "_inset.csv";
        series.push_back(inset);
      }
    }
  }
  return series;
}

void emit_figure_data(const std::string& family, const std::filesystem::path& out_dir, bool insets,
                      int threads) {
  const auto started = std::chrono::steady_clock::now();
  auto series = figure_series(family, insets);
  std::filesystem::create_directories(out_dir);

  CoefficientCacheStore store;
  json files = json::object();
  std::mutex files_mutex;
  parallel_for_index(static_cast<int>(series.size()), resolve_thread_count(threads), [&](int i) {
    const FigureSeries& s = series[static_cast<size_t>(i)];
    Trajectory traj = simulate_trajectory(s.config, &store);
    const auto checksums = write_trajectory_csv(out_dir / s.file_name, traj);
    std::lock_guard<std::mutex> lock(files_mutex);
    files[s.file_name] = file_entry(traj.size(), checksums);
  });

  // Layout description: enough for any plotting tool to rebuild the panels.
  json panels = json::array();
  for (const PanelSpec& panel : family_panels(family)) {
    json panel_series = json::array();
    for (const auto& s : series) {
      if (s.panel != panel.panel) continue;
      panel_series.push_back(json{{"spectrum", s.spectrum},
                                  {"s", s.config.spectrum.exponent},
                                  {"file", s.file_name},
                                  {"t_end", s.config.t_end}});
    }
    panels.push_back(json{{"panel", panel.panel},
                          {"kind", to_string(panel.kind)},
                          {"omega_c", panel.omega_c},
                          {"regime", panel.high_t ? "high" : "zero"},
                          {"kT", panel.high_t ? json(100.0) : json(nullptr)},
                          {"initial_state", panel.initial},
                          {"series", panel_series}});
  }
  write_json_atomic(out_dir / "panels.json",
                    json{{"family", family},
                         {"columns", json::array({kCsvColumns[0], kCsvColumns[1], kCsvColumns[2],
                                                  kCsvColumns[3], kCsvColumns[4]})},
                         {"x_axis", "omega_a_t"},
                         {"y_axis", "discord"},
                         {"panels", panels}});

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json_atomic(out_dir / "manifest.json",
                    json{{"version", kVersion},
                         {"family", family},
                         {"insets", insets},
                         {"duration_seconds", seconds},
                         {"files", files}});
}

}  // namespace discord_dyn
