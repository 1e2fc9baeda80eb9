#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "dagcover/covering.hpp"
#include "dagcover/density.hpp"
#include "dagcover/error.hpp"
#include "dagcover/experiments.hpp"
#include "dagcover/graph_io.hpp"
#include "dagcover/skewness.hpp"

namespace dagcover::cli {

namespace {

enum class Format { text, json, csv };

struct Context {
  std::ostream& out;
  std::istream& in;
  Format format;
  bool stdin_used = false;

  std::string slurp(const std::string& path) {
    if (path != "-") return read_all(path);
    if (stdin_used) fail(ErrorKind::invalid_input, "standard input can be read only once");
    stdin_used = true;
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  Digraph graph(const std::string& path) { return parse_graph(slurp(path)); }
  std::vector<Permutation> perms(const std::string& path) { return parse_permutations(slurp(path)); }
  void json(const nlohmann::json& j) { out << j.dump(2) << '\n'; }
};

std::string join(std::span<const Vertex> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i]);
  return s;
}

std::string blocks_text(const Partition& c) {
  std::string s;
  for (const auto& block : c.blocks()) s += (s.empty() ? "{" : " {") + join(block) + "}";
  return s;
}

std::string edges_text(std::span<const Edge> edges) {
  std::string s;
  for (const Edge& e : edges) s += (s.empty() ? "" : " ") + std::to_string(e.from) + "->" + std::to_string(e.to);
  return s;
}

nlohmann::json edges_json(std::span<const Edge> edges) {
  nlohmann::json j = nlohmann::json::array();
  for (const Edge& e : edges) j.push_back({e.from, e.to});
  return j;
}

// --- subcommands ------------------------------------------------------------

int cmd_params(Context& ctx, const std::string& path) {
  Digraph g = ctx.graph(path);
  DensityReport a = fractional_arboricity(g);
  DensityReport rho = maximal_density(g);
  if (ctx.format == Format::json) {
    ctx.json({{"arboricity", to_json(a)}, {"density", to_json(rho)}});
  } else {
    ctx.out << "a = " << a.value.to_string() << '\n'
            << "rho = " << rho.value.to_string() << '\n'
            << "totally_balanced = " << (a.totally_balanced ? "true" : "false") << '\n'
            << "witness = " << join(a.witness) << '\n';
  }
  return kOk;
}

int cmd_skewness(Context& ctx, const std::string& path, bool random, int trials, std::optional<std::uint64_t> seed) {
  Digraph h = ctx.graph(path);
  if (random) {
    if (!seed) fail(ErrorKind::invalid_input, "--random needs --seed");
    RandomSkew r = skewness_upper_random(h, trials, *seed);
    if (ctx.format == Format::json)
      ctx.json({{"upper_bound", r.value}, {"coloring", to_json(r.coloring)}, {"trials", trials}});
    else
      ctx.out << "s <= " << r.value << '\n' << "coloring = " << blocks_text(r.coloring) << '\n';
    return kOk;
  }
  SkewReport s = skewness_exact(h);
  if (ctx.format == Format::json) {
    ctx.json(to_json(s));
  } else {
    ctx.out << "s = " << s.value << '\n'
            << "coloring = " << blocks_text(s.coloring) << '\n'
            << "witness_order = " << join(s.order.order()) << '\n';
  }
  return kOk;
}

int cmd_tau(Context& ctx, const std::string& host, const std::string& pattern, const std::string& method,
            std::uint64_t seed, std::size_t cap, std::uint64_t budget) {
  Digraph g = ctx.graph(host);
  Digraph h = ctx.graph(pattern);
  if (!is_dag(h)) fail(ErrorKind::invalid_input, "pattern must be a dag");
  CopySet copies = enumerate_copies(g, h, cap);
  nlohmann::json j{{"copies", copies.copies.size()}, {"truncated", copies.truncated}};
  std::ostringstream text;
  text << "copies = " << copies.copies.size() << (copies.truncated ? " (truncated)" : "") << '\n';
  bool partial = copies.truncated;

  if (method == "exact") {
    TauExact t = tau_exact(copies, seed, budget);
    j["exact"] = t.exact;
    j["lower"] = t.lower;
    j["upper"] = t.upper;
    j.update(to_json(t.solution));
    if (t.exact)
      text << "tau = " << t.upper << '\n';
    else
      text << "tau in [" << t.lower << ", " << t.upper << "] (node budget exhausted)\n";
    text << to_permutation_lines(t.solution.permutations);
    partial = partial || !t.exact;
  } else if (method == "greedy") {
    CoverSolution s = tau_greedy(copies, seed);
    j.update(to_json(s));
    text << "tau <= " << s.permutations.size() << '\n' << to_permutation_lines(s.permutations);
  } else {
    int lower = tau_lower_clique(copies, seed);
    CoverSolution s = tau_greedy(copies, seed);
    const int upper = static_cast<int>(s.permutations.size());
    j["lower"] = lower;
    j["upper"] = upper;
    text << "tau in [" << lower << ", " << upper << "]\n";
    partial = partial || lower < upper;
  }
  if (ctx.format == Format::json)
    ctx.json(j);
  else
    ctx.out << text.str();
  return partial ? kPartial : kOk;
}

int cmd_gh(Context& ctx, const std::string& host, const std::string& pattern, std::size_t cap) {
  Digraph g = ctx.graph(host);
  Digraph h = ctx.graph(pattern);
  CopySet copies = enumerate_copies(g, h, cap);
  UnionGraph gh = union_copy_graph(copies);
  auto cycle = shortest_directed_cycle(gh.graph);
  if (ctx.format == Format::json) {
    ctx.json({{"graph", to_json(gh.graph)},
              {"dag", !cycle.has_value()},
              {"cycle", cycle ? nlohmann::json(*cycle) : nlohmann::json(nullptr)},
              {"copies", copies.copies.size()},
              {"truncated", gh.truncated}});
  } else {
    ctx.out << "dag = " << (cycle ? "false" : "true") << '\n';
    if (cycle) ctx.out << "cycle = " << join(*cycle) << '\n';
    ctx.out << "copies = " << copies.copies.size() << (gh.truncated ? " (truncated)" : "") << '\n'
            << to_edge_list(gh.graph);
  }
  return gh.truncated ? kPartial : kOk;
}

int cmd_consistent(Context& ctx, const std::string& path, int t) {
  auto perms = ctx.perms(path);
  ConsistentFamily family = consistent_sets(perms, t);
  if (ctx.format == Format::json) {
    nlohmann::json j = to_json(family);
    j["r"] = family.r;
    j["x"] = family.x;
    ctx.json(j);
  } else {
    for (const auto& set : family.sets) ctx.out << join(set) << '\n';
  }
  return kOk;
}

int cmd_pipeline(Context& ctx, const std::string& host, const std::string& pattern, const std::string& perms_path) {
  Digraph g = ctx.graph(host);
  Digraph h = ctx.graph(pattern);
  auto perms = ctx.perms(perms_path);
  PipelineResult r = skew_witness_pipeline(g, h, perms);
  if (ctx.format == Format::json) {
    nlohmann::json copy = nullptr;
    if (r.copy) copy = {{"embedding", r.copy->embedding}, {"edges", edges_json(r.copy->edges)}};
    ctx.json({{"skewness", r.skewness},
              {"coloring", to_json(r.coloring)},
              {"sets", r.family.sets},
              {"copy", copy},
              {"profile", r.profile}});
  } else {
    ctx.out << "s = " << r.skewness << '\n' << "coloring = " << blocks_text(r.coloring) << '\n';
    if (r.copy) {
      ctx.out << "embedding = " << join(r.copy->embedding) << '\n'
              << "edges = " << edges_text(r.copy->edges) << '\n'
              << "profile = " << join(r.profile) << '\n';
    } else {
      ctx.out << "copy = none\n";
    }
  }
  return kOk;
}

int cmd_sweep(Context& ctx, const std::string& path, int jobs) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(ctx.slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::invalid_input, std::string("config is not valid JSON: ") + e.what());
  }
  SweepConfig cfg = parse_sweep_config(config);
  auto rows = threshold_sweep(cfg, jobs);
  if (ctx.format == Format::json) {
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& r : rows) j.push_back(to_json(r));
    ctx.json(j);
  } else {
    ctx.out << sweep_csv(rows);
  }
  bool censored = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.censored > 0; });
  return censored ? kPartial : kOk;
}

int cmd_census(Context& ctx, int h, int samples, std::uint64_t seed) {
  CensusResult c = balanced_census(h, samples, seed, 1);
  if (ctx.format == Format::json) {
    ctx.json(to_json(c));
  } else {
    char fraction[40];
    std::snprintf(fraction, sizeof fraction, "%.17g", c.fraction());
    ctx.out << "h = " << c.h << '\n'
            << "samples = " << c.samples << '\n'
            << "balanced = " << c.balanced << '\n'
            << "fraction = " << fraction << '\n'
            << "with_isolated = " << c.with_isolated << '\n'
            << "edgeless = " << c.edgeless << '\n';
    for (const auto& [value, count] : c.histogram) ctx.out << "a " << value.to_string() << ' ' << count << '\n';
  }
  return kOk;
}

int cmd_catalog(Context& ctx, const std::string& kind, const std::vector<int>& args, bool sink) {
  auto arg = [&](const char* what) {
    if (args.size() != 1) fail(ErrorKind::invalid_input, std::string("catalog ") + kind + " takes one argument (" + what + ")");
    return args.front();
  };
  Digraph g;
  if (kind == "figure1") {
    if (!args.empty()) fail(ErrorKind::invalid_input, "catalog figure1 takes no arguments");
    g = figure1_graph();
  } else if (kind == "Th") {
    g = make_transitive_tournament(arg("h"));
  } else if (kind == "star") {
    g = make_rooted_star(arg("vertices"), sink ? StarRoot::sink : StarRoot::source);
  } else if (kind == "path") {
    g = make_directed_path(arg("edges"));
  } else {
    fail(ErrorKind::invalid_input, "unknown catalog entry '" + kind + "' (figure1, Th, star, path)");
  }
  if (ctx.format == Format::json)
    ctx.json(to_json(g));
  else
    ctx.out << to_edge_list(g);
  return kOk;
}

int cmd_scan(Context& ctx, const std::string& path) {
  PropertyScan s = prop_h_property_scan(ctx.graph(path));
  if (ctx.format == Format::json) {
    ctx.json(to_json(s));
  } else {
    ctx.out << "two_cycles = " << s.two_cycles << '\n'
            << "four_five_subgraphs = " << s.four_five_subgraphs << '\n'
            << "triangle_sources = " << join(s.triangle_sources) << '\n'
            << "candidates = " << join(s.candidates) << '\n';
  }
  return kOk;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::size_limit ? kSizeLimit : kInvalidInput;
}

// Commands other than sweep run on one thread; the previous limit comes back
// afterwards so embedding programs are unaffected.
class ThreadLimit {
 public:
  ThreadLimit() : saved_(max_threads()) {}
  ~ThreadLimit() { set_max_threads(saved_); }
  void single() { set_max_threads(1); }

 private:
  int saved_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Covering H-copies of digraphs by permutations", "dagcover"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string graph, host, pattern, perms_path, config, kind, method = "exact";
  std::optional<std::uint64_t> seed;
  int trials = 1000, t = 1, h = 0, samples = 0, jobs = 0;
  std::size_t cap = kDefaultCopyCap;
  std::uint64_t budget = kDefaultNodeBudget;
  bool exact = false, random = false, greedy = false, bounds = false, sink = false;
  std::vector<int> catalog_args;

  auto* params = app.add_subcommand("params", "Fractional arboricity, maximal density and balance");
  params->add_option("graph", graph, "Graph file or - for stdin")->required();

  auto* skewness = app.add_subcommand("skewness", "Skewness of a dag pattern");
  skewness->add_option("graph", graph, "Graph file or -")->required();
  auto* exact_flag = skewness->add_flag("--exact", exact, "Exact search (default)");
  skewness->add_flag("--random", random, "Random-coloring upper bound")->excludes(exact_flag);
  skewness->add_option("--trials", trials, "Colorings per width")->check(CLI::PositiveNumber);
  skewness->add_option("--seed", seed, "Seed for --random");

  auto* tau = app.add_subcommand("tau", "Number of permutations covering every H-copy");
  tau->add_option("host", host, "Host graph")->required();
  tau->add_option("pattern", pattern, "Pattern dag")->required();
  auto* tau_exact_flag = tau->add_flag("--exact", exact, "Branch and bound (default)");
  auto* tau_greedy_flag = tau->add_flag("--greedy", greedy, "First-fit upper bound");
  tau->add_flag("--bounds", bounds, "Clique lower bound and greedy upper bound")
      ->excludes(tau_exact_flag)
      ->excludes(tau_greedy_flag);
  tau_greedy_flag->excludes(tau_exact_flag);
  tau->add_option("--seed", seed, "Seed")->required();
  tau->add_option("--cap", cap, "Copy enumeration cap")->check(CLI::PositiveNumber);
  tau->add_option("--budget", budget, "Search node budget for --exact")->check(CLI::PositiveNumber);

  auto* gh = app.add_subcommand("gh", "Union of all H-copies and whether it is acyclic");
  gh->add_option("host", host, "Host graph")->required();
  gh->add_option("pattern", pattern, "Pattern")->required();
  gh->add_option("--cap", cap, "Copy enumeration cap")->check(CLI::PositiveNumber);

  auto* consistent = app.add_subcommand("consistent", "Consistent family of 2^t sets for a permutation file");
  consistent->add_option("perms", perms_path, "Permutations file (positions per line)")->required();
  consistent->add_option("--t", t, "Halving rounds")->required()->check(CLI::Range(1, 20));

  auto* pipeline = app.add_subcommand("pipeline", "Copy with at most s(H) forward edges in every permutation");
  pipeline->add_option("host", host, "Host graph")->required();
  pipeline->add_option("pattern", pattern, "Pattern dag")->required();
  pipeline->add_option("perms", perms_path, "Permutations file")->required();

  auto* sweep = app.add_subcommand("sweep", "Random-graph threshold sweep");
  sweep->add_option("config", config, "Sweep config JSON")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* census = app.add_subcommand("census", "Fraction of G(h, 1/2) samples that are totally balanced");
  census->set_help_flag("--help", "Print this help message and exit");
  census->add_option("--h", h, "Vertices")->required()->check(CLI::Range(2, 1000));
  census->add_option("--samples", samples, "Samples")->required()->check(CLI::PositiveNumber);
  census->add_option("--seed", seed, "Seed")->required();

  auto* catalog = app.add_subcommand("catalog", "Named graphs: figure1, Th <h>, star <vertices>, path <edges>");
  catalog->add_option("kind", kind, "figure1 | Th | star | path")->required();
  catalog->add_option("args", catalog_args, "Size argument");
  catalog->add_flag("--sink", sink, "star: edges point into the center");

  auto* scan = app.add_subcommand("scan", "2-cycles, 4-vertex 5-edge subgraphs and triangle sources");
  scan->add_option("graph", graph, "Graph file or -")->required();

  ThreadLimit threads;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  Format format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
  if (format == Format::csv && !sweep->parsed()) {
    err << "error: --format csv applies to sweep only\n";
    return kInvalidInput;
  }
  Context ctx{out, in, format};
  if (!sweep->parsed()) threads.single();

  try {
    if (params->parsed()) return cmd_params(ctx, graph);
    if (skewness->parsed()) return cmd_skewness(ctx, graph, random, trials, seed);
    if (tau->parsed())
      return cmd_tau(ctx, host, pattern, greedy ? "greedy" : bounds ? "bounds" : "exact", *seed, cap, budget);
    if (gh->parsed()) return cmd_gh(ctx, host, pattern, cap);
    if (consistent->parsed()) return cmd_consistent(ctx, perms_path, t);
    if (pipeline->parsed()) return cmd_pipeline(ctx, host, pattern, perms_path);
    if (sweep->parsed()) return cmd_sweep(ctx, config, jobs);
    if (census->parsed()) return cmd_census(ctx, h, samples, *seed);
    if (catalog->parsed()) return cmd_catalog(ctx, kind, catalog_args, sink);
    if (scan->parsed()) return cmd_scan(ctx, graph);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kInvalidInput;
}

}  // namespace dagcover::cli
