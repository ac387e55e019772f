#include "chroma/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace chroma {

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::unordered_map<std::string, int> label_ids;
    int next_id = 0;
    auto id_of = [&](const std::string& token) {
        auto [it, inserted] = label_ids.emplace(token, next_id);
        if (inserted) ++next_id;
        return it->second;
    };
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        if (first == "p") {
            int m = 0;
            if (have_header || !(ls >> n >> m) || n < 0)
                throw ParseError("edge list: bad header at line " + std::to_string(line_no));
            have_header = true;
            continue;
        }
        std::string second;
        if (!(ls >> second))
            throw ParseError("edge list: expected two tokens at line " + std::to_string(line_no));
        std::string extra;
        if (ls >> extra)
            throw ParseError("edge list: trailing tokens at line " + std::to_string(line_no));
        if (have_header) {
            int u, v;
            try {
                u = std::stoi(first);
                v = std::stoi(second);
            } catch (const std::exception&) {
                throw ParseError("edge list: non-integer id at line " + std::to_string(line_no));
            }
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError("edge list: id out of range at line " + std::to_string(line_no));
            edges.emplace_back(u, v);
        } else {
            const int u = id_of(first);
            const int v = id_of(second);
            edges.emplace_back(u, v);
        }
    }
    if (!have_header) n = next_id;
    try {
        return Graph(n, edges);
    } catch (const DomainError& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

std::string to_json_string(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
    return j.dump();
}

Graph graph_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON: expected object with 'n' and 'edges'");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("graph JSON: edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    try {
        return Graph(j["n"].get<int>(), edges);
    } catch (const DomainError& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    }
}

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (ends_with(path, ".json")) return graph_from_json_string(buf.str());
    return from_edge_list(buf.str());
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open graph file for writing: " + path);
    out << (ends_with(path, ".json") ? to_json_string(g) : to_edge_list(g));
}

}  // namespace chroma
