#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dagcover/density.hpp"
#include "dagcover/digraph.hpp"
#include "dagcover/parallel.hpp"
#include "dagcover/ratio.hpp"

namespace dagcover {

/// G(n, p): every ordered pair (u, v), u != v, is an edge independently with
/// probability p. Pair (u, v) always consumes draw u*n + v of the
/// (seed, stream) Philox stream, so the result does not depend on how rows
/// are scheduled. Throws Error(invalid_input) unless 0 <= p <= 1.
Digraph sample_digraph(int n, double p, std::uint64_t seed, std::uint64_t stream = 0,
                       Exec exec = Exec::serial);

/// G(n, p) over unordered pairs {u < v}, pair (u, v) using draw u*n + v.
UndirectedGraph sample_undirected(int n, double p, std::uint64_t seed, std::uint64_t stream = 0);

enum class SweepMode { copy_count, dagness, tau_stats, skew_pipeline };

struct SweepConfig {
  Digraph pattern;
  Ratio exponent{1};             // a*
  std::vector<int> n_values;     // strictly increasing
  int samples = 1;
  std::uint64_t seed = 0;
  SweepMode mode = SweepMode::dagness;
  std::size_t copy_cap = 1'000'000;
  double perm_factor = 1.0;      // skew_pipeline: |X| = floor(c * log2 n)
};

/// Reads a config object:
///   {"pattern": <graph JSON or "T3" / "P2" / "S3" / "figure1">,
///    "exponent": "5/4" | 1.25, "n_values": [...], "samples": 50,
///    "seed": 7, "mode": "dagness", "cap": 1000000, "c": 1.0}
/// `cap` and `c` are optional. Throws Error(invalid_input) on bad fields.
SweepConfig parse_sweep_config(const nlohmann::json& j);

/// p = n^(-1/a*).
double edge_probability(int n, const Ratio& exponent);

/// Outcome of one sample. Statistics a mode does not compute stay at -1.
struct SampleRecord {
  bool censored = false;  // copy enumeration hit the cap
  std::size_t copies = 0;
  bool gh_dag = false;
  int tau_greedy = -1;
  int tau_lower = -1;
  int pipeline_success = -1;
};

/// Host graph of sample `index` at size n, drawn from the substream
/// (seed, n, index).
Digraph sample_host(const SweepConfig& cfg, int n, int index, Exec exec = Exec::serial);
SampleRecord run_sample(const SweepConfig& cfg, int n, int index, Exec exec = Exec::serial);

/// Per n: mean over uncensored samples; NaN when the mode does not compute a
/// column or every sample was censored.
struct SweepRow {
  int n = 0;
  double p = 0;
  int samples = 0;
  double frac_any_copy = 0;
  double frac_gh_dag = 0;
  double mean_copies = 0;
  double tau_greedy_mean = 0;
  double tau_lower_mean = 0;
  double pipeline_success = 0;
  int censored = 0;
};

/// Samples run as independent OpenMP tasks on up to `jobs` threads (0: the
/// OpenMP default) and are merged in index order.
std::vector<SampleRecord> sweep_samples(const SweepConfig& cfg, int n, int jobs = 0);
SweepRow summarize(const SweepConfig& cfg, int n, const std::vector<SampleRecord>& records);
std::vector<SweepRow> threshold_sweep(const SweepConfig& cfg, int jobs = 0);

/// Header `n,p,samples,frac_gh_dag,mean_copies,tau_greedy_mean,tau_lower_mean,pipeline_success,censored`.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json to_json(const SweepRow& row);

struct CensusResult {
  int h = 0;
  int samples = 0;
  int balanced = 0;
  int with_isolated = 0;  // counted as not totally balanced
  int edgeless = 0;       // a(H) undefined; also not balanced
  std::map<Ratio, int> histogram;  // a(H) over samples with at least one edge
  double fraction() const { return samples ? static_cast<double>(balanced) / samples : 0.0; }
};

/// Fraction of G(h, 1/2) samples that are totally balanced. A sample with an
/// isolated vertex is not (its arboricity cannot reach m/(h-1)), so it is
/// counted as a failure rather than redrawn. Arboricity comes from subset
/// enumeration up to h = 12 and from the flow search above.
CensusResult balanced_census(int h, int samples, std::uint64_t seed, int jobs = 0);
nlohmann::json to_json(const CensusResult& census);

/// Five vertices, a path 0 -> 1 -> 2 into a transitive triangle on {2, 3, 4}
/// with source 2.
Digraph figure1_graph();

struct PropertyScan {
  std::size_t two_cycles = 0;
  /// Subgraphs (not necessarily induced) with exactly 4 vertices and 5 edges.
  std::size_t four_five_subgraphs = 0;
  std::vector<Vertex> triangle_sources;  // sources of some transitive triangle
  /// Triangle sources lying on no 2-cycle and in no 4-vertex 5-edge subgraph.
  std::vector<Vertex> candidates;
};

PropertyScan prop_h_property_scan(const Digraph& g);
nlohmann::json to_json(const PropertyScan& scan);

}  // namespace dagcover
