#ifndef HNN_GRAPH_HPP
#define HNN_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hnn {

// Undirected simple graph on vertices 0..p-1. Edges are stored as (i, j)
// pairs with i < j, sorted lexicographically. Provenance records whether the
// edge set came out of the TMFG filter or was supplied by the user.
struct ChordalGraph {
    int p = 0;
    std::vector<std::pair<int, int>> edges;
    std::string provenance = "user";

    int edge_count() const { return static_cast<int>(edges.size()); }
};

// Validates ranges, rejects self-loops, dedupes and canonicalizes the order.
ChordalGraph make_graph(int p, std::vector<std::pair<int, int>> edges,
                        std::string provenance = "user");

// Dense adjacency (p*p chars, symmetric) and sorted adjacency lists.
std::vector<uint8_t> adjacency_matrix(const ChordalGraph& g);
std::vector<std::vector<int>> neighbor_lists(const ChordalGraph& g);

nlohmann::json graph_to_json(const ChordalGraph& g);
ChordalGraph graph_from_json(const nlohmann::json& j);
std::string graph_to_dot(const ChordalGraph& g,
                         const std::vector<std::string>& labels = {});

} // namespace hnn

#endif
