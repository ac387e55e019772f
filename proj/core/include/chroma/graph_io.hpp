#pragma once

#include <string>

#include "chroma/graph.hpp"

namespace chroma {

/// Edge-list text: optional header line "p <n> <m>", one "u v" pair per
/// line, '#' comments and blank lines ignored. With a header, tokens must be
/// integer ids in [0, n); without one, labels are mapped to dense ids in
/// first-seen order. Writing always emits the header, so write -> read
/// round-trips exactly (including isolated vertices).
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);

/// JSON object {"n": <int>, "edges": [[u, v], ...]} with edges sorted, u < v.
std::string to_json_string(const Graph& g);
Graph graph_from_json_string(const std::string& text);

/// File helpers; ".json" selects the JSON format, anything else edge-list.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

}  // namespace chroma
