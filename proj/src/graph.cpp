#include "hnn/graph.hpp"

#include <algorithm>
#include <sstream>

#include "hnn/common.hpp"

namespace hnn {

ChordalGraph make_graph(int p, std::vector<std::pair<int, int>> edges,
                        std::string provenance) {
    if (p < 0) throw Error("make_graph: negative vertex count");
    for (auto& e : edges) {
        if (e.first == e.second)
            throw Error("make_graph: self-loop at vertex " + std::to_string(e.first));
        if (e.first < 0 || e.second < 0 || e.first >= p || e.second >= p)
            throw Error("make_graph: edge endpoint out of range");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    ChordalGraph g;
    g.p = p;
    g.edges = std::move(edges);
    g.provenance = std::move(provenance);
    return g;
}

std::vector<uint8_t> adjacency_matrix(const ChordalGraph& g) {
    std::vector<uint8_t> adj(static_cast<size_t>(g.p) * g.p, 0);
    for (auto [i, j] : g.edges) {
        adj[static_cast<size_t>(i) * g.p + j] = 1;
        adj[static_cast<size_t>(j) * g.p + i] = 1;
    }
    return adj;
}

std::vector<std::vector<int>> neighbor_lists(const ChordalGraph& g) {
    std::vector<std::vector<int>> nbr(g.p);
    for (auto [i, j] : g.edges) {
        nbr[i].push_back(j);
        nbr[j].push_back(i);
    }
    for (auto& v : nbr) std::sort(v.begin(), v.end());
    return nbr;
}

nlohmann::json graph_to_json(const ChordalGraph& g) {
    nlohmann::json j;
    j["p"] = g.p;
    auto edges = nlohmann::json::array();
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
    j["provenance"] = g.provenance;
    return j;
}

ChordalGraph graph_from_json(const nlohmann::json& j) {
    int p = j.at("p").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (e.size() != 2) throw Error("graph json: edge is not a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::string prov = j.value("provenance", "user");
    return make_graph(p, std::move(edges), prov);
}

std::string graph_to_dot(const ChordalGraph& g,
                         const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "graph {\n";
    for (int v = 0; v < g.p; ++v) {
        os << "  n" << v;
        if (static_cast<int>(labels.size()) == g.p)
            os << " [label=\"" << labels[v] << "\"]";
        os << ";\n";
    }
    for (auto [a, b] : g.edges) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace hnn
