#include "mgpf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mgpf/error.hpp"

namespace mgpf::bench {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorKind::Config, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

Config parse_point(const json& value) {
  if (!value.is_array()) throw Error(ErrorKind::Config, "terminal must be an array of coordinates");
  Config point;
  for (const json& c : value) point.push_back(c.get<double>());
  return point;
}

EnvSpec parse_env(const json& node) {
  if (!node.is_object()) throw Error(ErrorKind::Config, "'env' must be an object");
  reject_unknown_keys(node, {"kind", "dim", "boxes"}, "env");
  EnvSpec spec;
  spec.kind = node.at("kind").get<std::string>();
  spec.dim = node.at("dim").get<int>();
  if (spec.kind == "boxes") {
    for (const json& box : node.at("boxes")) {
      Box parsed;
      for (const json& axis : box) {
        if (!axis.is_array() || axis.size() != 2) throw Error(ErrorKind::Config, "box axis must be [lo, hi]");
        parsed.lo.push_back(axis[0].get<double>());
        parsed.hi.push_back(axis[1].get<double>());
      }
      spec.boxes.push_back(std::move(parsed));
    }
  } else if (spec.kind != "co" && spec.kind != "uh") {
    throw Error(ErrorKind::Config, "env kind must be one of co, uh, boxes");
  } else if (node.contains("boxes")) {
    throw Error(ErrorKind::Config, "'boxes' only applies to kind 'boxes'");
  }
  return spec;
}

TerminalSpec parse_terminals(const json& node) {
  TerminalSpec spec;
  if (node.is_array()) {
    for (const json& p : node) spec.points.push_back(parse_point(p));
    spec.count = spec.points.size();
  } else if (node.is_object()) {
    reject_unknown_keys(node, {"count", "seed"}, "terminals");
    spec.count = node.at("count").get<std::size_t>();
    spec.seed = node.value("seed", std::uint64_t{0});
  } else {
    throw Error(ErrorKind::Config, "'terminals' must be a list of points or {count, seed}");
  }
  if (spec.count < 2 || spec.count > 64) throw Error(ErrorKind::Config, "terminal count must be in 2..64");
  return spec;
}

PlannerParams parse_params(const json& node) {
  if (!node.is_object()) throw Error(ErrorKind::Config, "'params' must be an object");
  reject_unknown_keys(node, {"n_s", "n_b", "eta", "seed", "prune"}, "params");
  PlannerParams params;
  params.n_s = node.value("n_s", params.n_s);
  params.n_b = node.value("n_b", params.n_b);
  params.eta = node.value("eta", params.eta);
  params.seed = node.value("seed", params.seed);
  params.prune = node.value("prune", params.prune);
  if (params.n_s == 0 || params.n_b == 0) throw Error(ErrorKind::Config, "n_s and n_b must be positive");
  if (!(params.eta > 1.0)) throw Error(ErrorKind::Config, "eta must exceed 1");
  return params;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

struct Interval {
  double mean;
  double low;
  double high;
};

Interval confidence_99(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return {kInf, kInf, kInf};
  }
  const double mean = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double n = static_cast<double>(xs.size());
  const double half = 2.576 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

double parse_real(const std::string& field) {
  if (field == "inf") return kInf;
  try {
    return std::stod(field);
  } catch (const std::exception&) {
    throw Error(ErrorKind::SchemaMismatch, "bad numeric field '" + field + "'");
  }
}

}  // namespace

InstanceConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  reject_unknown_keys(doc, {"env", "terminals", "planner", "params"}, "config");
  try {
    InstanceConfig cfg;
    cfg.env = parse_env(doc.at("env"));
    cfg.terminals = parse_terminals(doc.at("terminals"));
    cfg.planner = doc.value("planner", std::string("ist"));
    if (cfg.planner != "ist" && cfg.planner != "baseline") {
      throw Error(ErrorKind::Config, "planner must be 'ist' or 'baseline'");
    }
    if (doc.contains("params")) cfg.params = parse_params(doc.at("params"));
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, e.what());
  }
}

InstanceConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Config, "cannot open config " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

Env make_env(const EnvSpec& spec) {
  if (spec.kind == "co") return Env::center_obstacle(spec.dim);
  if (spec.kind == "uh") return Env::uniform_hypercubes(spec.dim);
  if (spec.kind == "boxes") return Env::boxes(spec.dim, spec.boxes);
  throw Error(ErrorKind::Config, "unknown env kind '" + spec.kind + "'");
}

std::vector<Config> generate_terminals(const Env& env, std::size_t count, std::uint64_t seed) {
  if (count < 2) throw Error(ErrorKind::InvalidTerminals, "need at least two terminals");
  Rng rng(seed);
  std::vector<Config> out;
  std::size_t attempts = 0;
  Config x(env.dim());
  while (out.size() < count) {
    if (++attempts > kRejectionBudget) {
      throw Error(ErrorKind::GenerationFailure, "could not place separated terminals");
    }
    for (double& v : x) v = rng.uniform01();
    if (!env.is_state_valid(x)) continue;
    const bool separated =
        std::all_of(out.begin(), out.end(), [&](const Config& t) { return heuristic(t, x) >= 1e-3; });
    if (separated) out.push_back(x);
  }
  return out;
}

std::vector<Config> resolve_terminals(const InstanceConfig& cfg, const Env& env) {
  if (!cfg.terminals.points.empty()) return cfg.terminals.points;
  return generate_terminals(env, cfg.terminals.count, cfg.terminals.seed);
}

std::unique_ptr<Planner> make_planner(const InstanceConfig& cfg) {
  Env env = make_env(cfg.env);
  std::vector<Config> terminals = resolve_terminals(cfg, env);
  if (cfg.planner == "baseline") return std::make_unique<Baseline>(std::move(env), std::move(terminals), cfg.params);
  return std::make_unique<IstStar>(std::move(env), std::move(terminals), cfg.params);
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const TraceRow& row, bool timing) {
  out << row.iteration << ',' << row.samples_total << ',' << row.edges_active << ',' << row.edges_pruned_cum << ','
      << format_real(row.tree_cost) << ',' << format_real(row.path_cost) << ','
      << (timing ? format_real(row.wall_time_s) : std::string("0")) << '\n';
}

RunSummary run_instance(const InstanceConfig& cfg, std::ostream& out, bool timing) {
  std::unique_ptr<Planner> planner = make_planner(cfg);
  write_csv_header(out);
  planner->run([&](const TraceRow& row) {
    write_csv_row(out, row, timing);
    out.flush();
  });
  RunSummary summary;
  const TraceRow& last = planner->trace().back();
  summary.final_tree_cost = last.tree_cost;
  summary.path_cost = last.path_cost;
  summary.pruned_fraction = static_cast<double>(last.edges_pruned_cum) /
                            static_cast<double>(planner->terminal_graph().pair_count());
  out << "# final_tree_cost=" << format_real(summary.final_tree_cost) << '\n'
      << "# path_cost=" << format_real(summary.path_cost) << '\n'
      << "# pruned_fraction=" << format_real(summary.pruned_fraction) << '\n';
  return summary;
}

void sweep(const InstanceConfig& cfg, std::size_t seeds, const std::filesystem::path& out_dir, bool timing,
           unsigned threads) {
  std::filesystem::create_directories(out_dir);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(seeds, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds);
  auto worker = [&] {
    for (std::size_t k = next++; k < seeds; k = next++) {
      try {
        InstanceConfig job = cfg;
        job.params.seed = cfg.params.seed + k;
        std::ostringstream name;
        name << "run_" << std::setw(4) << std::setfill('0') << k << ".csv";
        std::ofstream out(out_dir / name.str());
        run_instance(job, out, timing);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TraceFile read_trace_csv(std::istream& in) {
  TraceFile file;
  if (!std::getline(in, file.header)) throw Error(ErrorKind::SchemaMismatch, "empty trace file");
  if (file.header != kCsvHeader) throw Error(ErrorKind::SchemaMismatch, "unexpected header '" + file.header + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw Error(ErrorKind::SchemaMismatch, "trace row has wrong column count");
    TraceRow row;
    row.iteration = static_cast<std::size_t>(std::stoull(fields[0]));
    row.samples_total = static_cast<std::size_t>(std::stoull(fields[1]));
    row.edges_active = static_cast<std::size_t>(std::stoull(fields[2]));
    row.edges_pruned_cum = static_cast<std::size_t>(std::stoull(fields[3]));
    row.tree_cost = parse_real(fields[4]);
    row.path_cost = parse_real(fields[5]);
    row.wall_time_s = parse_real(fields[6]);
    file.rows.push_back(row);
  }
  return file;
}

std::vector<TraceFile> load_trace_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Config, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TraceFile> traces;
  for (const auto& path : files) {
    std::ifstream in(path);
    traces.push_back(read_trace_csv(in));
  }
  return traces;
}

Comparison compare(const std::vector<TraceFile>& a, const std::vector<TraceFile>& b) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorKind::Config, "compare needs at least two runs per side");
  const std::size_t iterations = a.front().rows.size();
  for (const auto* side : {&a, &b}) {
    for (const TraceFile& t : *side) {
      if (t.header != a.front().header || t.rows.size() != iterations) {
        throw Error(ErrorKind::SchemaMismatch, "trace sets differ in schema or length");
      }
    }
  }
  if (iterations == 0) throw Error(ErrorKind::SchemaMismatch, "traces have no rows");
  Comparison result;
  for (std::size_t i = 0; i < iterations; ++i) {
    std::vector<double> xs, ys;
    for (const TraceFile& t : a) xs.push_back(t.rows[i].tree_cost);
    for (const TraceFile& t : b) ys.push_back(t.rows[i].tree_cost);
    const Interval ia = confidence_99(xs);
    const Interval ib = confidence_99(ys);
    result.rows.push_back({a.front().rows[i].iteration, ia.mean, ia.low, ia.high, ib.mean, ib.low, ib.high});
  }
  result.final_ratio = result.rows.back().a_mean / result.rows.back().b_mean;
  return result;
}

void write_comparison_csv(std::ostream& out, const Comparison& comparison) {
  out << "iteration,a_mean,a_ci_low,a_ci_high,b_mean,b_ci_low,b_ci_high\n";
  for (const ComparisonRow& r : comparison.rows) {
    out << r.iteration << ',' << format_real(r.a_mean) << ',' << format_real(r.a_ci_low) << ','
        << format_real(r.a_ci_high) << ',' << format_real(r.b_mean) << ',' << format_real(r.b_ci_low) << ','
        << format_real(r.b_ci_high) << '\n';
  }
  out << "# final_cost_ratio=" << format_real(comparison.final_ratio) << '\n';
}

std::string render_svg(const Roadmap& rm, const Forest& forest, const TerminalGraph& tg,
                       const ProbabilityTable& probability) {
  const Env& env = rm.env();
  if (env.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "SVG snapshots are 2D only");
  constexpr double kSize = 800.0;
  constexpr double kMargin = 20.0;
  auto px = [](double x) { return kMargin + x * kSize; };
  auto py = [](double y) { return kMargin + (1.0 - y) * kSize; };
  auto num = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return std::string(buffer);
  };
  const double canvas = kSize + 2.0 * kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(canvas) << "\" height=\""
      << num(canvas) << "\" viewBox=\"0 0 " << num(canvas) << ' ' << num(canvas) << "\">\n"
      << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kSize) << "\" height=\""
      << num(kSize) << "\" fill=\"white\" stroke=\"black\"/>\n";

  svg << "<g id=\"obstacles\" fill=\"#555555\">\n";
  for (std::size_t i = 0; i < env.obstacle_count(); ++i) {
    const Box box = env.obstacle(i);
    svg << "<rect x=\"" << num(px(box.lo[0])) << "\" y=\"" << num(py(box.hi[1])) << "\" width=\""
        << num((box.hi[0] - box.lo[0]) * kSize) << "\" height=\"" << num((box.hi[1] - box.lo[1]) * kSize)
        << "\"/>\n";
  }
  svg << "</g>\n";

  auto segment_path = [&](const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::string d;
    for (const auto& [u, v] : edges) {
      const auto a = rm.config(u);
      const auto b = rm.config(v);
      d += "M" + num(px(a[0])) + " " + num(py(a[1])) + "L" + num(px(b[0])) + " " + num(py(b[1]));
    }
    return d;
  };

  std::vector<std::pair<NodeId, NodeId>> roadmap_edges;
  for (NodeId u = 0; u < rm.size(); ++u) {
    for (const Edge& e : rm.neighbors(u)) {
      if (u < e.to) roadmap_edges.emplace_back(u, e.to);
    }
  }
  if (!roadmap_edges.empty()) {
    svg << "<path id=\"roadmap\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.5\" d=\""
        << segment_path(roadmap_edges) << "\"/>\n";
  }
  const auto forest_edges = forest.size() == rm.size() ? forest.tree_edges() : decltype(forest.tree_edges()){};
  if (!forest_edges.empty()) {
    svg << "<path id=\"forest\" fill=\"none\" stroke=\"#4a78c2\" stroke-width=\"1\" d=\""
        << segment_path(forest_edges) << "\"/>\n";
  }

  double max_probability = 0.0;
  for (const ProbabilityEntry& entry : probability) max_probability = std::max(max_probability, entry.probability);
  svg << "<g id=\"informed\">\n";
  for (const ProbabilityEntry& entry : probability) {
    const double c_best = tg.cost(entry.edge);
    if (!std::isfinite(c_best) || max_probability <= 0.0) continue;
    const auto a = rm.config(entry.edge.a);
    const auto b = rm.config(entry.edge.b);
    const double c_min = heuristic(a, b);
    const double opacity = 0.6 * entry.probability / max_probability;
    if (c_best - c_min <= 1e-12) {
      svg << "<line x1=\"" << num(px(a[0])) << "\" y1=\"" << num(py(a[1])) << "\" x2=\"" << num(px(b[0]))
          << "\" y2=\"" << num(py(b[1])) << "\" stroke=\"#e08a1e\" stroke-width=\"3\" stroke-opacity=\""
          << num(opacity) << "\"/>\n";
      continue;
    }
    const double cx = px(0.5 * (a[0] + b[0]));
    const double cy = py(0.5 * (a[1] + b[1]));
    const double angle = -std::atan2(b[1] - a[1], b[0] - a[0]) * 180.0 / std::numbers::pi;
    const double rx = 0.5 * c_best * kSize;
    const double ry = 0.5 * std::sqrt(c_best * c_best - c_min * c_min) * kSize;
    svg << "<ellipse cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(rx) << "\" ry=\"" << num(ry)
        << "\" transform=\"rotate(" << num(angle) << ' ' << num(cx) << ' ' << num(cy)
        << ")\" fill=\"#e08a1e\" fill-opacity=\"" << num(opacity) << "\" stroke=\"none\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"tree\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\">\n";
  for (const TerminalPair& e : tg.tree()) {
    const std::vector<NodeId>& nodes = tg.realization(e);
    if (nodes.empty()) continue;
    svg << "<polyline points=\"";
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto p = rm.config(nodes[k]);
      svg << (k ? " " : "") << num(px(p[0])) << ',' << num(py(p[1]));
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"terminals\" stroke=\"black\">\n";
  for (NodeId t = 0; t < tg.size() && t < rm.size(); ++t) {
    const auto p = rm.config(t);
    const char* fill = t == 0 ? "#2ca02c" : (t + 1 == tg.size() ? "#9467bd" : "#ffdd00");
    svg << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1])) << "\" r=\"6\" fill=\"" << fill
        << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace mgpf::bench
