#pragma once

#include <string>
#include <vector>

#include "chroma/graph.hpp"

namespace chroma {

/// Per-vertex colour lists L(v). Colours are plain non-negative integers;
/// uniform(n, k) builds L(v) = {0, ..., k-1} for every vertex.
struct ListAssignment {
    std::vector<std::vector<int>> lists;

    ListAssignment() = default;
    explicit ListAssignment(std::vector<std::vector<int>> raw);

    static ListAssignment uniform(int n, int k);

    int size() const { return static_cast<int>(lists.size()); }
    const std::vector<int>& at(Vertex v) const;
    bool contains(Vertex v, int colour) const;
};

/// Total or partial vertex -> colour map; kUncoloured marks "not yet
/// decided" (distinct from "out of domain").
struct Colouring {
    static constexpr int kUncoloured = -1;

    std::vector<int> values;

    Colouring() = default;
    explicit Colouring(std::vector<int> v) : values(std::move(v)) {}
    static Colouring uncoloured(int n) { return Colouring(std::vector<int>(n, kUncoloured)); }

    int size() const { return static_cast<int>(values.size()); }
    bool is_coloured(Vertex v) const { return values[v] != kUncoloured; }
    bool is_total() const;
    int coloured_count() const;

    bool operator==(const Colouring&) const = default;
};

/// L_sigma(v) = L(v) minus the colours on coloured neighbours of v; its
/// order is ell_sigma(v). v's own colour is never removed.
struct AvailableList {
    Vertex vertex;
    std::vector<int> colours;

    int order() const { return static_cast<int>(colours.size()); }
};

/// True iff every coloured vertex uses a colour from its list and no edge
/// joins two coloured vertices of equal colour.
bool is_proper(const Graph& g, const ListAssignment& L, const Colouring& sigma);

AvailableList available_list(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                             Vertex v);

/// Number of vertices where the two total colourings disagree.
int hamming_distance(const Colouring& a, const Colouring& b);

/// JSON array of colour-or-null, one entry per vertex.
std::string colouring_to_json_string(const Colouring& sigma);
Colouring colouring_from_json_string(const std::string& text);

/// JSON array of arrays.
std::string list_assignment_to_json_string(const ListAssignment& L);
ListAssignment list_assignment_from_json_string(const std::string& text);

}  // namespace chroma
