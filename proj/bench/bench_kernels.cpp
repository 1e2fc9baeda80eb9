// Serial against OpenMP timings for the kernels that have both paths. Each
// pair is also checked for equal results, since the parallel paths promise
// to reproduce the serial ones exactly.
//
//   bench_kernels [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "dagcover/covering.hpp"
#include "dagcover/density.hpp"
#include "dagcover/experiments.hpp"
#include "dagcover/parallel.hpp"
#include "dagcover/skewness.hpp"

using namespace dagcover;

namespace {

double best_of(int repeats, const std::function<void()>& run) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    run();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

template <class Result>
void compare(const std::string& name, int repeats, const std::function<Result(Exec)>& kernel) {
  Result serial, parallel;
  double ts = best_of(repeats, [&] { serial = kernel(Exec::serial); });
  double tp = best_of(repeats, [&] { parallel = kernel(Exec::parallel); });
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name.c_str(), ts, tp, ts / tp,
              serial == parallel ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", max_threads(), repeats);

  const Digraph host = sample_digraph(3000, 0.01, 11);
  compare<std::vector<std::vector<Edge>>>("enumerate_copies T3, n=3000", repeats, [&](Exec e) {
    std::vector<std::vector<Edge>> out;
    for (const Copy& c : enumerate_copies(host, make_transitive_tournament(3), kDefaultCopyCap, e).copies)
      out.push_back(c.edges);
    return out;
  });
  compare<std::vector<std::vector<Edge>>>("enumerate_copies T4, n=3000", repeats, [&](Exec e) {
    std::vector<std::vector<Edge>> out;
    for (const Copy& c : enumerate_copies(host, make_transitive_tournament(4), kDefaultCopyCap, e).copies)
      out.push_back(c.edges);
    return out;
  });

  const Digraph dense = sample_digraph(20, 0.3, 12);
  compare<std::pair<std::int64_t, std::int64_t>>("densest_subset_enum n=20", repeats, [&](Exec e) {
    Ratio a = densest_subset_enum(dense, DensityKind::arboricity, e).value;
    return std::make_pair(a.num(), a.den());
  });

  compare<int>("skewness_exact T8", repeats,
               [](Exec e) { return skewness_exact(make_transitive_tournament(8), e).value; });
  compare<int>("skewness_exact T9", 1,
               [](Exec e) { return skewness_exact(make_transitive_tournament(9), e).value; });

  compare<std::vector<Edge>>("sample_digraph n=8000 p=0.01", repeats, [](Exec e) {
    Digraph g = sample_digraph(8000, 0.01, 13, 0, e);
    return std::vector<Edge>(g.edges().begin(), g.edges().end());
  });
  return 0;
}
