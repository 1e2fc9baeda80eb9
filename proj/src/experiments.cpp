#include "dagcover/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "dagcover/covering.hpp"
#include "dagcover/error.hpp"
#include "dagcover/graph_io.hpp"
#include "dagcover/rng.hpp"
#include "dagcover/skewness.hpp"

namespace dagcover {

namespace {

constexpr std::uint64_t kSampleTag = 0x53414D50;  // host graph of a sweep sample
constexpr std::uint64_t kPermTag = 0x5045524D;    // permutation family of a sample
constexpr std::uint64_t kCensusTag = 0x43454E53;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::invalid_input, "edge probability must lie in [0, 1]");
}

void sample_row(int n, double p, const Philox& rng, Vertex u, std::vector<Edge>& out) {
  for (Vertex v = 0; v < n; ++v) {
    if (v == u) continue;
    std::uint64_t index = static_cast<std::uint64_t>(u) * n + v;
    if (Philox::to_unit(rng.at(index)) < p) out.push_back({u, v});
  }
}

Digraph named_pattern(const std::string& name) {
  auto size = [&](std::size_t skip) {
    try {
      std::size_t used = 0;
      int k = std::stoi(name.substr(skip), &used);
      if (used + skip == name.size()) return k;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::invalid_input, "unknown pattern name '" + name + "'");
  };
  if (name == "figure1") return figure1_graph();
  if (name.size() > 1 && name[0] == 'T') return make_transitive_tournament(size(1));
  if (name.size() > 1 && name[0] == 'P') return make_directed_path(size(1) - 1);
  if (name.size() > 1 && name[0] == 'S') return make_rooted_star(size(1), StarRoot::source);
  fail(ErrorKind::invalid_input, "unknown pattern name '" + name + "'");
}

SweepMode parse_mode(const std::string& mode) {
  if (mode == "copy_count") return SweepMode::copy_count;
  if (mode == "dagness") return SweepMode::dagness;
  if (mode == "tau_stats") return SweepMode::tau_stats;
  if (mode == "skew_pipeline") return SweepMode::skew_pipeline;
  fail(ErrorKind::invalid_input, "unknown sweep mode '" + mode + "'");
}

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_value(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

std::vector<Permutation> random_permutations(int n, int count, std::uint64_t seed, std::uint64_t stream) {
  Philox rng(seed, stream);
  std::vector<Permutation> perms;
  std::vector<Vertex> order(n);
  for (int i = 0; i < count; ++i) {
    std::iota(order.begin(), order.end(), 0);
    shuffle(std::span<Vertex>(order), rng);
    perms.emplace_back(order);
  }
  return perms;
}

int family_size(double c, int n) {
  return std::max(1, static_cast<int>(std::floor(c * std::log2(static_cast<double>(n)))));
}

}  // namespace

Digraph sample_digraph(int n, double p, std::uint64_t seed, std::uint64_t stream, Exec exec) {
  if (n < 0) fail(ErrorKind::invalid_input, "vertex count must be non-negative");
  check_probability(p);
  const Philox rng(seed, stream);
  std::vector<Edge> edges;
  if (exec == Exec::serial) {
    for (Vertex u = 0; u < n; ++u) sample_row(n, p, rng, u, edges);
  } else {
    std::vector<std::vector<Edge>> rows(n);
#pragma omp parallel for schedule(static)
    for (Vertex u = 0; u < n; ++u) sample_row(n, p, rng, u, rows[u]);
    for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  }
  return Digraph(n, std::move(edges));
}

UndirectedGraph sample_undirected(int n, double p, std::uint64_t seed, std::uint64_t stream) {
  if (n < 0) fail(ErrorKind::invalid_input, "vertex count must be non-negative");
  check_probability(p);
  const Philox rng(seed, stream);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (Philox::to_unit(rng.at(static_cast<std::uint64_t>(u) * n + v)) < p) pairs.push_back({u, v});
  return UndirectedGraph(n, std::move(pairs));
}

SweepConfig parse_sweep_config(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::invalid_input, "sweep config must be a JSON object");
  for (const char* key : {"pattern", "exponent", "n_values", "samples", "seed", "mode"})
    if (!j.contains(key)) fail(ErrorKind::invalid_input, std::string("sweep config lacks '") + key + "'");
  SweepConfig cfg;
  try {
    const auto& pattern = j.at("pattern");
    cfg.pattern = pattern.is_string() ? named_pattern(pattern.get<std::string>()) : graph_from_json(pattern);

    const auto& exponent = j.at("exponent");
    if (exponent.is_string()) {
      cfg.exponent = Ratio::parse(exponent.get<std::string>());
    } else if (exponent.is_number_integer()) {
      cfg.exponent = Ratio(exponent.get<std::int64_t>());
    } else if (exponent.is_number()) {
      cfg.exponent = Ratio::parse(exponent.dump());
    } else {
      fail(ErrorKind::invalid_input, "exponent must be a number or a \"p/q\" string");
    }
    if (cfg.exponent <= Ratio(0)) fail(ErrorKind::invalid_input, "exponent must be positive");

    cfg.n_values = j.at("n_values").get<std::vector<int>>();
    if (cfg.n_values.empty()) fail(ErrorKind::invalid_input, "n_values is empty");
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
      if (cfg.n_values[i] < 1) fail(ErrorKind::invalid_input, "n_values must be positive");
      if (i > 0 && cfg.n_values[i] <= cfg.n_values[i - 1])
        fail(ErrorKind::invalid_input, "n_values must be strictly increasing");
    }
    cfg.samples = j.at("samples").get<int>();
    if (cfg.samples < 1) fail(ErrorKind::invalid_input, "samples must be at least 1");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("cap")) cfg.copy_cap = j.at("cap").get<std::size_t>();
    if (j.contains("c")) cfg.perm_factor = j.at("c").get<double>();
    if (!(cfg.perm_factor > 0)) fail(ErrorKind::invalid_input, "c must be positive");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("bad sweep config: ") + e.what());
  }
  if (!is_dag(cfg.pattern)) fail(ErrorKind::invalid_input, "sweep pattern must be a dag");
  return cfg;
}

double edge_probability(int n, const Ratio& exponent) {
  return std::pow(static_cast<double>(n), -1.0 / exponent.to_double());
}

Digraph sample_host(const SweepConfig& cfg, int n, int index, Exec exec) {
  return sample_digraph(n, edge_probability(n, cfg.exponent), cfg.seed, substream(kSampleTag, n, index), exec);
}

SampleRecord run_sample(const SweepConfig& cfg, int n, int index, Exec exec) {
  const Digraph g = sample_host(cfg, n, index, exec);
  SampleRecord record;
  CopySet copies = enumerate_copies(g, cfg.pattern, cfg.copy_cap, exec);
  if (copies.truncated) {
    record.censored = true;
    return record;
  }
  record.copies = copies.copies.size();
  record.gh_dag = is_dag(union_copy_graph(copies).graph);

  if (cfg.mode == SweepMode::tau_stats) {
    record.tau_greedy = static_cast<int>(tau_greedy(copies, cfg.seed).permutations.size());
    record.tau_lower = tau_lower_clique(copies, cfg.seed);
  } else if (cfg.mode == SweepMode::skew_pipeline) {
    auto perms = random_permutations(n, family_size(cfg.perm_factor, n), cfg.seed, substream(kPermTag, n, index));
    try {
      record.pipeline_success = skew_witness_pipeline(g, cfg.pattern, perms).copy.has_value() ? 1 : 0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::infeasible_size) throw;
      record.pipeline_success = 0;
    }
  }
  return record;
}

std::vector<SampleRecord> sweep_samples(const SweepConfig& cfg, int n, int jobs) {
  std::vector<SampleRecord> records(cfg.samples);
  const int threads = jobs > 0 ? jobs : max_threads();
  // Exceptions must not cross the parallel region; keep the first by index.
  std::vector<std::exception_ptr> errors(cfg.samples);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < cfg.samples; ++i) {
    try {
      records[i] = run_sample(cfg, n, i, Exec::serial);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& error : errors)
    if (error) std::rethrow_exception(error);
  return records;
}

SweepRow summarize(const SweepConfig& cfg, int n, const std::vector<SampleRecord>& records) {
  SweepRow row;
  row.n = n;
  row.p = edge_probability(n, cfg.exponent);
  row.samples = static_cast<int>(records.size());
  double any = 0, dag = 0, copies = 0, greedy = 0, lower = 0, success = 0;
  int kept = 0;
  for (const SampleRecord& r : records) {
    if (r.censored) {
      ++row.censored;
      continue;
    }
    ++kept;
    any += r.copies > 0;
    dag += r.gh_dag;
    copies += static_cast<double>(r.copies);
    greedy += r.tau_greedy;
    lower += r.tau_lower;
    success += r.pipeline_success;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto mean = [&](double total, bool computed) { return computed && kept > 0 ? total / kept : nan; };
  row.frac_any_copy = mean(any, true);
  row.frac_gh_dag = mean(dag, true);
  row.mean_copies = mean(copies, true);
  row.tau_greedy_mean = mean(greedy, cfg.mode == SweepMode::tau_stats);
  row.tau_lower_mean = mean(lower, cfg.mode == SweepMode::tau_stats);
  row.pipeline_success = mean(success, cfg.mode == SweepMode::skew_pipeline);
  return row;
}

std::vector<SweepRow> threshold_sweep(const SweepConfig& cfg, int jobs) {
  std::vector<SweepRow> rows;
  for (int n : cfg.n_values) rows.push_back(summarize(cfg, n, sweep_samples(cfg, n, jobs)));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "n,p,samples,frac_gh_dag,mean_copies,tau_greedy_mean,tau_lower_mean,pipeline_success,censored\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.n) + ',' + format_value(r.p) + ',' + std::to_string(r.samples) + ',' +
           format_value(r.frac_gh_dag) + ',' + format_value(r.mean_copies) + ',' +
           format_value(r.tau_greedy_mean) + ',' + format_value(r.tau_lower_mean) + ',' +
           format_value(r.pipeline_success) + ',' + std::to_string(r.censored) + '\n';
  }
  return out;
}

nlohmann::json to_json(const SweepRow& r) {
  return {{"n", r.n},
          {"p", r.p},
          {"samples", r.samples},
          {"frac_gh_dag", json_value(r.frac_gh_dag)},
          {"mean_copies", json_value(r.mean_copies)},
          {"tau_greedy_mean", json_value(r.tau_greedy_mean)},
          {"tau_lower_mean", json_value(r.tau_lower_mean)},
          {"pipeline_success", json_value(r.pipeline_success)},
          {"censored", r.censored},
          {"frac_any_copy", json_value(r.frac_any_copy)}};
}

// --- census -----------------------------------------------------------------

namespace {

struct CensusSample {
  bool edgeless = false;
  bool isolated = false;
  bool balanced = false;
  Ratio value{0};
};

CensusSample census_sample(int h, std::uint64_t seed, int index) {
  CensusSample s;
  UndirectedGraph g = sample_undirected(h, 0.5, seed, substream(kCensusTag, h, index));
  if (g.num_edges() == 0) {
    s.edgeless = true;
    return s;
  }
  s.value = h > 12 ? fractional_arboricity(g).value
                   : densest_subset_enum(g, DensityKind::arboricity, Exec::serial).value;
  s.isolated = g.has_isolated_vertex();
  s.balanced = !s.isolated && s.value == Ratio(static_cast<std::int64_t>(g.num_edges()), h - 1);
  return s;
}

}  // namespace

CensusResult balanced_census(int h, int samples, std::uint64_t seed, int jobs) {
  if (h < 2) fail(ErrorKind::invalid_input, "census needs h >= 2");
  if (samples < 1) fail(ErrorKind::invalid_input, "census needs at least one sample");
  std::vector<CensusSample> drawn(samples);
  const int threads = jobs > 0 ? jobs : max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (int i = 0; i < samples; ++i) drawn[i] = census_sample(h, seed, i);

  CensusResult result;
  result.h = h;
  result.samples = samples;
  for (const CensusSample& s : drawn) {
    result.balanced += s.balanced;
    result.with_isolated += s.isolated;
    result.edgeless += s.edgeless;
    if (!s.edgeless) ++result.histogram[s.value];
  }
  return result;
}

nlohmann::json to_json(const CensusResult& c) {
  nlohmann::json histogram = nlohmann::json::array();
  for (const auto& [value, count] : c.histogram) histogram.push_back({{"a", value.to_string()}, {"count", count}});
  return {{"h", c.h},
          {"samples", c.samples},
          {"balanced", c.balanced},
          {"fraction", c.fraction()},
          {"with_isolated", c.with_isolated},
          {"edgeless", c.edgeless},
          {"histogram", std::move(histogram)}};
}

Digraph figure1_graph() { return Digraph(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}); }

// --- property scan ----------------------------------------------------------

namespace {

std::uint64_t choose5(int x) {
  if (x < 5) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < 5; ++i) r = r * (x - i) / (i + 1);
  return r;
}

// Spanning 5-edge subgraphs on exactly the four vertices `s`, by
// inclusion-exclusion over the vertices left out.
std::uint64_t spanning_four_five(const Digraph& g, const std::array<Vertex, 4>& s) {
  std::int64_t total = 0;
  for (int drop = 0; drop < 16; ++drop) {
    int inside = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b && !(drop >> a & 1) && !(drop >> b & 1) && g.has_edge(s[a], s[b])) ++inside;
    std::int64_t term = static_cast<std::int64_t>(choose5(inside));
    total += std::popcount(static_cast<unsigned>(drop)) % 2 ? -term : term;
  }
  return static_cast<std::uint64_t>(total);
}

// Connected 4-vertex sets of the underlying undirected graph, each once
// (Wernicke's ESU enumeration).
class FourSets {
 public:
  explicit FourSets(const Digraph& g) : adj_(g.num_vertices()) {
    for (const Edge& e : g.edges()) {
      adj_[e.from].push_back(e.to);
      adj_[e.to].push_back(e.from);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  template <typename Visit>
  void run(Visit&& visit) {
    for (Vertex v = 0; v < static_cast<Vertex>(adj_.size()); ++v) {
      std::vector<Vertex> extension;
      for (Vertex w : adj_[v])
        if (w > v) extension.push_back(w);
      std::vector<Vertex> chosen{v};
      extend(chosen, extension, v, visit);
    }
  }

 private:
  bool near_chosen(Vertex w, const std::vector<Vertex>& chosen) const {
    for (Vertex c : chosen)
      if (c == w || std::binary_search(adj_[c].begin(), adj_[c].end(), w)) return true;
    return false;
  }

  template <typename Visit>
  void extend(std::vector<Vertex>& chosen, std::vector<Vertex> extension, Vertex root, Visit& visit) {
    if (chosen.size() == 4) {
      visit(std::array<Vertex, 4>{chosen[0], chosen[1], chosen[2], chosen[3]});
      return;
    }
    while (!extension.empty()) {
      Vertex w = extension.back();
      extension.pop_back();
      std::vector<Vertex> next = extension;
      for (Vertex u : adj_[w])
        if (u > root && !near_chosen(u, chosen) && std::find(next.begin(), next.end(), u) == next.end())
          next.push_back(u);
      chosen.push_back(w);
      extend(chosen, std::move(next), root, visit);
      chosen.pop_back();
    }
  }

  std::vector<std::vector<Vertex>> adj_;
};

}  // namespace

PropertyScan prop_h_property_scan(const Digraph& g) {
  PropertyScan scan;
  const int n = g.num_vertices();
  std::vector<char> blocked(n, 0);
  for (const Edge& e : g.edges())
    if (e.from < e.to && g.has_edge(e.to, e.from)) {
      ++scan.two_cycles;
      blocked[e.from] = blocked[e.to] = 1;
    }

  FourSets(g).run([&](const std::array<Vertex, 4>& s) {
    std::uint64_t count = spanning_four_five(g, s);
    if (count == 0) return;
    scan.four_five_subgraphs += count;
    for (Vertex v : s) blocked[v] = 1;
  });

  for (Vertex v = 0; v < n; ++v) {
    auto out = g.out_neighbors(v);
    bool source = false;
    for (std::size_t i = 0; i < out.size() && !source; ++i)
      for (std::size_t j = 0; j < out.size() && !source; ++j)
        source = i != j && g.has_edge(out[i], out[j]);
    if (source) {
      scan.triangle_sources.push_back(v);
      if (!blocked[v]) scan.candidates.push_back(v);
    }
  }
  return scan;
}

nlohmann::json to_json(const PropertyScan& scan) {
  return {{"two_cycles", scan.two_cycles},
          {"four_five_subgraphs", scan.four_five_subgraphs},
          {"triangle_sources", scan.triangle_sources},
          {"candidates", scan.candidates}};
}

}  // namespace dagcover
