#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dagcover/graph_io.hpp"

using dagcover::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string(P_tmpdir) + "/dagcover_cli_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("catalog output feeds params") {
  Result t3 = call({"catalog", "Th", "3"});
  CHECK(t3.code == 0);
  Result params = call({"params", "-"}, t3.out);
  CHECK(params.code == 0);
  CHECK(params.out.rfind("a = 3/2\n", 0) == 0);
  CHECK(params.err.empty());
}

TEST_CASE("catalog graphs re-parse identically") {
  for (auto args : std::vector<std::vector<std::string>>{{"catalog", "figure1"},
                                                         {"catalog", "Th", "5"},
                                                         {"catalog", "star", "4"},
                                                         {"catalog", "star", "4", "--sink"},
                                                         {"catalog", "path", "3"}}) {
    Result text = call(args);
    REQUIRE(text.code == 0);
    CHECK(dagcover::to_edge_list(dagcover::parse_graph(text.out)) == text.out);
    args.push_back("--format");
    args.push_back("json");
    Result json = call(args);
    REQUIRE(json.code == 0);
    CHECK(dagcover::parse_graph(json.out) == dagcover::parse_graph(text.out));
  }
  CHECK(call({"catalog", "Th"}).code == 2);
  CHECK(call({"catalog", "wheel", "3"}).code == 2);
}

TEST_CASE("skewness of the figure-1 graph") {
  Result r = call({"skewness", "-", "--exact"}, call({"catalog", "figure1"}).out);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("s = 3\n", 0) == 0);
  CHECK(r.out.find("coloring = {") != std::string::npos);
  Result j = call({"skewness", "-", "--format", "json"}, call({"catalog", "figure1"}).out);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("skewness") == 3);
  CHECK(parsed.contains("coloring"));
  CHECK(parsed.contains("witness_order"));
}

TEST_CASE("random skewness needs a seed") {
  std::string t4 = call({"catalog", "Th", "4"}).out;
  CHECK(call({"skewness", "-", "--random"}, t4).code == 2);
  Result r = call({"skewness", "-", "--random", "--trials", "50", "--seed", "3"}, t4);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("s <= ", 0) == 0);
  CHECK(call({"skewness", "-", "--random", "--exact", "--seed", "3"}, t4).code == 2);
}

TEST_CASE("tau on D3 with T3") {
  std::string host = temp_file("d3.txt", "3 6\n0 1\n1 0\n0 2\n2 0\n1 2\n2 1\n");
  std::string pattern = temp_file("t3.txt", call({"catalog", "Th", "3"}).out);
  Result exact = call({"tau", host, pattern, "--exact", "--seed", "1"});
  CHECK(exact.code == 0);
  CHECK(exact.out.find("tau = 6\n") != std::string::npos);
  Result json = call({"tau", host, pattern, "--seed", "1", "--format", "json"});
  auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("tau") == 6);
  CHECK(j.at("perms").size() == 6);
  CHECK(call({"tau", host, pattern}).code == 2);
  Result greedy = call({"tau", host, pattern, "--greedy", "--seed", "1"});
  CHECK(greedy.code == 0);
  Result bounds = call({"tau", host, pattern, "--bounds", "--seed", "1"});
  CHECK(bounds.code == 0);
  CHECK(bounds.out.find("tau in [6, 6]") != std::string::npos);

  std::string d5 = temp_file("d5.txt", call({"catalog", "Th", "5"}).out);
  std::string p3 = temp_file("p3.txt", call({"catalog", "path", "2"}).out);
  CHECK(call({"tau", d5, p3, "--bounds", "--seed", "1"}).code == 0);
  std::string k5 = "5 20\n";
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (a != b) k5 += std::to_string(a) + " " + std::to_string(b) + "\n";
  std::string complete = temp_file("k5.txt", k5);
  Result budget = call({"tau", complete, p3, "--exact", "--seed", "1", "--budget", "1"});
  CHECK(budget.code == 4);
  CHECK(budget.out.find("node budget exhausted") != std::string::npos);
  Result capped = call({"tau", complete, p3, "--greedy", "--seed", "1", "--cap", "3"});
  CHECK(capped.code == 4);
}

TEST_CASE("gh reports the union and a cycle") {
  std::string host = temp_file("two.txt", "4 6\n0 1\n0 2\n1 2\n1 0\n1 3\n0 3\n");
  std::string pattern = temp_file("t3b.txt", call({"catalog", "Th", "3"}).out);
  Result r = call({"gh", host, pattern});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("dag = false\ncycle = 0 1\n", 0) == 0);
  auto j = nlohmann::json::parse(call({"gh", host, pattern, "--format", "json"}).out);
  CHECK(j.at("dag") == false);
  CHECK(j.at("cycle").size() == 2);
  CHECK(dagcover::graph_from_json(j.at("graph")).num_edges() == 6);
}

TEST_CASE("consistent and pipeline") {
  std::string perms = temp_file("perms.txt", "0 1 2 3 4 5 6 7\n7 6 5 4 3 2 1 0\n");
  Result sets = call({"consistent", perms, "--t", "1"});
  CHECK(sets.code == 0);
  CHECK(sets.out == "2 3\n6 7\n");
  CHECK(call({"consistent", perms}).code == 2);
  CHECK(call({"consistent", perms, "--t", "2"}).code == 2);

  std::string k8 = "8 56\n";
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (a != b) k8 += std::to_string(a) + " " + std::to_string(b) + "\n";
  std::string host = temp_file("k8.txt", k8);
  std::string pattern = temp_file("t3c.txt", call({"catalog", "Th", "3"}).out);
  std::string one = temp_file("one.txt", "3 1 4 0 2 7 6 5\n");
  Result p = call({"pipeline", host, pattern, one, "--format", "json"});
  REQUIRE(p.code == 0);
  auto j = nlohmann::json::parse(p.out);
  CHECK(j.at("skewness") == 2);
  REQUIRE(j.at("profile").size() == 1);
  CHECK(j.at("profile")[0].get<int>() <= 2);
}

TEST_CASE("sweep and census") {
  std::string config = temp_file("sweep.json", R"({"pattern": "T3", "exponent": "5/4", "n_values": [20, 30],
    "samples": 4, "seed": 2, "mode": "dagness"})");
  Result csv = call({"sweep", config});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,p,samples,frac_gh_dag,mean_copies,tau_greedy_mean,tau_lower_mean,pipeline_success,censored\n", 0) == 0);
  CHECK(call({"sweep", config, "--jobs", "3"}).out == csv.out);
  CHECK(call({"sweep", config, "--format", "csv"}).out == csv.out);
  auto rows = nlohmann::json::parse(call({"sweep", config, "--format", "json"}).out);
  CHECK(rows.size() == 2);
  CHECK(rows[0].contains("frac_any_copy"));

  std::string capped = temp_file("capped.json", R"({"pattern": "T3", "exponent": 3, "n_values": [30],
    "samples": 2, "seed": 2, "mode": "copy_count", "cap": 2})");
  CHECK(call({"sweep", capped}).code == 4);
  CHECK(call({"sweep", temp_file("broken.json", "{")}).code == 2);

  Result census = call({"census", "--h", "4", "--samples", "200", "--seed", "3"});
  CHECK(census.code == 0);
  CHECK(census.out.rfind("h = 4\nsamples = 200\n", 0) == 0);
  CHECK(call({"census", "--h", "4", "--samples", "200"}).code == 2);
}

TEST_CASE("exit codes and diagnostics") {
  Result unknown = call({"params", "-", "--bogus"}, "2 1\n0 1\n");
  CHECK(unknown.code == 2);
  CHECK(unknown.out.empty());
  CHECK_FALSE(unknown.err.empty());
  CHECK(call({}).code == 2);
  CHECK(call({"params", "-"}, "2 1\n0 0\n").code == 2);
  CHECK(call({"params", "/nonexistent/graph.txt"}).code == 2);
  CHECK(call({"params", "-"}, "3 0\n").code == 2);
  std::string big = call({"catalog", "Th", "11"}).out;
  Result limit = call({"skewness", "-"}, big);
  CHECK(limit.code == 3);
  CHECK(limit.out.empty());
  CHECK(call({"params", "-", "--format", "csv"}, "2 1\n0 1\n").code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("scan") {
  Result r = call({"scan", "-"}, call({"catalog", "Th", "4"}).out);
  CHECK(r.code == 0);
  CHECK(r.out == "two_cycles = 0\nfour_five_subgraphs = 6\ntriangle_sources = 0 1\ncandidates = \n");
}
