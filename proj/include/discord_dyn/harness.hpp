#pragma once

#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "discord_dyn/config.hpp"
#include "discord_dyn/propagator.hpp"

namespace discord_dyn {

// Worker count: explicit request, else DISCORD_DYN_THREADS, else hardware.
int resolve_thread_count(int requested = 0);

// Runs fn(0..n-1) on a bounded pool. Exceptions are captured per index and
// the first one is rethrown after all workers finish.
void parallel_for_index(int n, int threads, const std::function<void(int)>& fn);

// Memoized coefficient grids, keyed by spectrum, regime, tolerances and the
// stage grid. Runs that differ only in reservoir kind or initial state share
// one grid. Safe for concurrent use; each cache is immutable once built.
class CoefficientCacheStore {
 public:
  std::shared_ptr<const CoefficientCache> get_or_compute(const SpectralParams& params,
                                                         const TemperatureRegime& regime,
                                                         const QuadratureOptions& quad,
                                                         const std::vector<double>& stage_times);

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_future<std::shared_ptr<const CoefficientCache>>> entries_;
};

struct RunResult {
  std::string name;
  RunConfig config;
  Trajectory trajectory;
  std::filesystem::path csv_path;
};

// Resolves a panel preset ("fig1a".."fig3f") into its three per-spectrum
// runs, or returns the config itself when no preset is set.
std::vector<std::pair<std::string, RunConfig>> expand_scenario(const RunConfig& config);

// Propagates each run, computes discord per step, and writes one CSV per run
// plus a manifest under config.output_dir.
std::vector<RunResult> run_scenario(const RunConfig& config, CoefficientCacheStore* store = nullptr,
                                    int threads = 0);

// Propagation + discord without any file output.
Trajectory simulate_trajectory(const RunConfig& config, CoefficientCacheStore* store = nullptr);

// First grid time at which discord drops to half its initial value, linearly
// interpolated; +inf when it never does (or starts at zero).
double time_to_half_discord(const Trajectory& traj);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepOptions {
  int cap = 256;
  int threads = 0;
};

struct SweepPointOutcome {
  std::string name;
  std::string assignment;  // "s=0.5 kind=common"
  bool ok = false;
  std::string error;
  double terminal_discord = 0.0;
  double time_to_half = 0.0;
};

struct SweepReport {
  std::vector<SweepPointOutcome> points;
  std::filesystem::path summary_csv;
  int failed = 0;
};

// Cartesian product of the axes applied to the base config; one directory per
// point plus a summary table. Failed points are reported, not fatal.
SweepReport run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                      const SweepOptions& opts = {});

struct FigureSeries {
  std::string panel;       // "a".."f"
  std::string spectrum;    // sub_ohmic | ohmic | super_ohmic
  RunConfig config;
  std::string file_name;
};

// The panel/spectrum grid of one scenario family (fig1, fig2, fig3),
// including "_inset" long-time variants when requested.
std::vector<FigureSeries> figure_series(const std::string& family, bool insets);

// Runs a whole family and writes plot-ready CSVs, a panels.json layout
// description and a manifest into out_dir.
void emit_figure_data(const std::string& family, const std::filesystem::path& out_dir,
                      bool insets = false, int threads = 0);

}  // namespace discord_dyn
