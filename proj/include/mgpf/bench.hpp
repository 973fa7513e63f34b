#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mgpf/planner.hpp"
#include "mgpf/space.hpp"

namespace mgpf::bench {

inline constexpr std::string_view kCsvHeader =
    "iteration,samples_total,edges_active,edges_pruned_cum,tree_cost,path_cost,wall_time_s";

struct EnvSpec {
  std::string kind = "co";  // "co", "uh" or "boxes"
  int dim = 2;
  std::vector<Box> boxes;
};

struct TerminalSpec {
  std::vector<Config> points;  // explicit list, or empty to generate
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

struct InstanceConfig {
  EnvSpec env;
  TerminalSpec terminals;
  std::string planner = "ist";  // "ist" or "baseline"
  PlannerParams params;
};

/// Parses the JSON config document; unknown keys are rejected.
InstanceConfig parse_config(std::string_view text);
InstanceConfig load_config(const std::filesystem::path& file);

Env make_env(const EnvSpec& spec);

/// `count` valid states with pairwise separation >= 1e-3, deterministic in `seed`.
std::vector<Config> generate_terminals(const Env& env, std::size_t count, std::uint64_t seed);

std::vector<Config> resolve_terminals(const InstanceConfig& cfg, const Env& env);
std::unique_ptr<Planner> make_planner(const InstanceConfig& cfg);

/// "inf" for infinity, otherwise 9 significant digits.
std::string format_real(double value);

void write_csv_header(std::ostream& out);
/// With `timing` off the wall_time_s column is written as 0 so reruns are
/// byte-identical.
void write_csv_row(std::ostream& out, const TraceRow& row, bool timing = true);

struct RunSummary {
  double final_tree_cost = kInf;
  double path_cost = kInf;
  double pruned_fraction = 0.0;
};

/// Runs the configured planner, streaming CSV rows and a `#` footer.
RunSummary run_instance(const InstanceConfig& cfg, std::ostream& out, bool timing = true);

/// Runs seeds params.seed .. params.seed + seeds - 1 into out_dir/run_<k>.csv,
/// using up to `threads` workers.
void sweep(const InstanceConfig& cfg, std::size_t seeds, const std::filesystem::path& out_dir, bool timing = true,
           unsigned threads = 0);

struct TraceFile {
  std::string header;
  std::vector<TraceRow> rows;
};

TraceFile read_trace_csv(std::istream& in);
/// Every *.csv in `dir`, ordered by file name.
std::vector<TraceFile> load_trace_dir(const std::filesystem::path& dir);

struct ComparisonRow {
  std::size_t iteration = 0;
  double a_mean = 0.0;
  double a_ci_low = 0.0;
  double a_ci_high = 0.0;
  double b_mean = 0.0;
  double b_ci_low = 0.0;
  double b_ci_high = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  double final_ratio = 1.0;  // mean final tree cost of a over that of b
};

/// Per-iteration mean tree cost with a 99% normal-approximation interval
/// (mean +/- 2.576 stderr) for both trace sets.
Comparison compare(const std::vector<TraceFile>& a, const std::vector<TraceFile>& b);
void write_comparison_csv(std::ostream& out, const Comparison& comparison);

/// 2D picture of obstacles, roadmap, forest, informed ellipses (opacity by
/// probability) and the tree. Throws for dim != 2.
std::string render_svg(const Roadmap& rm, const Forest& forest, const TerminalGraph& tg,
                       const ProbabilityTable& probability);

}  // namespace mgpf::bench
