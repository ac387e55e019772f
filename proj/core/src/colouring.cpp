#include "chroma/colouring.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace chroma {

ListAssignment::ListAssignment(std::vector<std::vector<int>> raw) : lists(std::move(raw)) {
    for (auto& list : lists) {
        for (int c : list)
            if (c < 0) throw DomainError("ListAssignment: negative colour");
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

ListAssignment ListAssignment::uniform(int n, int k) {
    if (n < 0 || k < 0) throw DomainError("ListAssignment::uniform: negative parameter");
    std::vector<int> base(k);
    for (int c = 0; c < k; ++c) base[c] = c;
    ListAssignment L;
    L.lists.assign(n, base);
    return L;
}

const std::vector<int>& ListAssignment::at(Vertex v) const {
    if (v < 0 || v >= size()) throw DomainError("ListAssignment: invalid vertex id");
    return lists[v];
}

bool ListAssignment::contains(Vertex v, int colour) const {
    const auto& list = at(v);
    return std::binary_search(list.begin(), list.end(), colour);
}

bool Colouring::is_total() const {
    return std::none_of(values.begin(), values.end(),
                        [](int c) { return c == kUncoloured; });
}

int Colouring::coloured_count() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(),
                                          [](int c) { return c != kUncoloured; }));
}

bool is_proper(const Graph& g, const ListAssignment& L, const Colouring& sigma) {
    if (sigma.size() != g.vertex_count() || L.size() != g.vertex_count())
        throw DomainError("is_proper: size mismatch");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!sigma.is_coloured(v)) continue;
        if (!L.contains(v, sigma.values[v])) return false;
        for (Vertex u : g.neighbours(v))
            if (u > v && sigma.is_coloured(u) && sigma.values[u] == sigma.values[v])
                return false;
    }
    return true;
}

AvailableList available_list(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                             Vertex v) {
    g.check_vertex(v);
    if (sigma.size() != g.vertex_count()) throw DomainError("available_list: size mismatch");
    std::vector<int> blocked;
    for (Vertex u : g.neighbours(v))
        if (sigma.is_coloured(u)) blocked.push_back(sigma.values[u]);
    std::sort(blocked.begin(), blocked.end());
    AvailableList out{v, {}};
    for (int c : L.at(v))
        if (!std::binary_search(blocked.begin(), blocked.end(), c)) out.colours.push_back(c);
    return out;
}

int hamming_distance(const Colouring& a, const Colouring& b) {
    if (a.size() != b.size()) throw DomainError("hamming_distance: mismatched domains");
    if (!a.is_total() || !b.is_total())
        throw DomainError("hamming_distance: both colourings must be total");
    int d = 0;
    for (int v = 0; v < a.size(); ++v)
        if (a.values[v] != b.values[v]) ++d;
    return d;
}

std::string colouring_to_json_string(const Colouring& sigma) {
    nlohmann::json j = nlohmann::json::array();
    for (int c : sigma.values) {
        if (c == Colouring::kUncoloured) j.push_back(nullptr);
        else j.push_back(c);
    }
    return j.dump();
}

Colouring colouring_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("colouring JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("colouring JSON: expected array");
    std::vector<int> values;
    values.reserve(j.size());
    for (const auto& entry : j) {
        if (entry.is_null()) values.push_back(Colouring::kUncoloured);
        else if (entry.is_number_integer() && entry.get<int>() >= 0)
            values.push_back(entry.get<int>());
        else throw ParseError("colouring JSON: entries must be null or non-negative int");
    }
    return Colouring(std::move(values));
}

std::string list_assignment_to_json_string(const ListAssignment& L) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& list : L.lists) j.push_back(list);
    return j.dump();
}

ListAssignment list_assignment_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("list-assignment JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("list-assignment JSON: expected array of arrays");
    std::vector<std::vector<int>> lists;
    for (const auto& entry : j) {
        if (!entry.is_array()) throw ParseError("list-assignment JSON: expected array of arrays");
        lists.push_back(entry.get<std::vector<int>>());
    }
    return ListAssignment(std::move(lists));
}

}  // namespace chroma
