#include "dagcover/graph_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "dagcover/error.hpp"

namespace dagcover {

namespace {

Digraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0)
    fail(ErrorKind::invalid_input, "edge list: expected header `n m`");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v))
      fail(ErrorKind::invalid_input, "edge list: expected " + std::to_string(m) +
                                         " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail(ErrorKind::invalid_input, "edge list: vertex out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  std::string rest;
  if (in >> rest) fail(ErrorKind::invalid_input, "edge list: trailing data");
  return Digraph(static_cast<int>(n), std::move(edges));
}

}  // namespace

Digraph graph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
      fail(ErrorKind::invalid_input, "graph JSON needs keys n and edges");
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& pair : j.at("edges")) {
      if (!pair.is_array() || pair.size() != 2)
        fail(ErrorKind::invalid_input, "graph JSON: each edge must be [u, v]");
      edges.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
    return Digraph(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("graph JSON: ") + e.what());
  }
}

Digraph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::invalid_input, std::string("graph JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_edge_list(text);
}

Digraph read_graph(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_graph(text);
}

std::string read_all(const std::string& path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_input, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Digraph load_graph(const std::string& path) { return parse_graph(read_all(path)); }

std::string to_edge_list(const Digraph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.from << ' ' << e.to << '\n';
  return out.str();
}

nlohmann::json to_json(const Digraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.from, e.to});
  return {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

std::vector<Permutation> parse_permutations(std::string_view text) {
  std::vector<Permutation> perms;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<int> positions;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        positions.push_back(value);
      } catch (const std::logic_error&) {
        fail(ErrorKind::invalid_input, "permutations: bad token '" + token + "'");
      }
    }
    if (positions.empty()) continue;
    perms.push_back(Permutation::from_positions(positions));
    if (perms.back().size() != perms.front().size())
      fail(ErrorKind::invalid_input, "permutations: lines have different lengths");
  }
  return perms;
}

std::vector<Permutation> load_permutations(const std::string& path) {
  return parse_permutations(read_all(path));
}

std::string to_permutation_lines(std::span<const Permutation> perms) {
  std::ostringstream out;
  for (const Permutation& p : perms) {
    for (int v = 0; v < p.size(); ++v) out << (v ? " " : "") << p.position(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace dagcover
