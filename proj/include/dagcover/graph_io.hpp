#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dagcover/digraph.hpp"

namespace dagcover {

/// Parses either the edge-list text format (`n m` then m lines `u v`) or the
/// JSON form `{"n": ..., "edges": [[u, v], ...]}`; the first non-blank
/// character decides. Self-loops and duplicates are rejected.
Digraph parse_graph(std::string_view text);
Digraph read_graph(std::istream& in);
/// Reads `path`, or standard input when path is "-".
Digraph load_graph(const std::string& path);

std::string to_edge_list(const Digraph& g);
nlohmann::json to_json(const Digraph& g);
Digraph graph_from_json(const nlohmann::json& j);

/// Permutations file: one permutation per line, entry v is the position of
/// vertex v. Blank lines are skipped.
std::vector<Permutation> parse_permutations(std::string_view text);
std::vector<Permutation> load_permutations(const std::string& path);
std::string to_permutation_lines(std::span<const Permutation> perms);

std::string read_all(const std::string& path);

}  // namespace dagcover
