#ifndef HNN_HOMOLOGY_HPP
#define HNN_HOMOLOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hnn/graph.hpp"
#include "json.hpp"

namespace hnn {

// Maximum-cardinality search. `order` is the visit sequence; its reverse is a
// perfect elimination ordering exactly when the graph is chordal, which is
// what `chordal` reports.
struct McsResult {
    std::vector<int> order;
    bool chordal = false;
};

McsResult mcs_order(const ChordalGraph& g);

// Exact maximal cliques of a chordal graph via the elimination ordering.
// Each clique is ascending; the list is sorted lexicographically.
// Throws on non-chordal input.
std::vector<std::vector<int>> maximal_cliques(const ChordalGraph& g);

// Junction tree over the maximal cliques: maximum-weight spanning tree of the
// clique-intersection graph with weight = |intersection|. Equal separators
// are aggregated with their occurrence count as multiplicity.
struct CliqueTree {
    std::vector<std::vector<int>> cliques;
    std::vector<std::pair<int, int>> tree_edges;       // clique index pairs
    std::vector<std::vector<int>> edge_separators;     // aligned with tree_edges
    struct Separator {
        std::vector<int> vertices;
        int multiplicity = 0;
    };
    std::vector<Separator> separators;
    bool forest = false; // true when the input graph was disconnected
};

CliqueTree clique_tree(const std::vector<std::vector<int>>& cliques,
                       const ChordalGraph& g);

// All cliques of size <= max_dim+1, grouped by dimension. result[d] holds the
// d-simplexes (ascending (d+1)-tuples, sorted lexicographically).
std::vector<std::vector<std::vector<int>>> enumerate_simplexes(
    const ChordalGraph& g, int max_dim);

// Layered face lattice. layers[d][i] is the vertex tuple of the i-th
// d-simplex; down_links[d][i] are the indices of its d+1 facets in layer d-1
// (down_links[0] is empty), up_links the transpose.
struct HasseDiagram {
    std::vector<std::vector<std::vector<int>>> layers;
    std::vector<std::vector<std::vector<int>>> down_links;
    std::vector<std::vector<std::vector<int>>> up_links;

    int n_layers() const { return static_cast<int>(layers.size()); }
    int layer_size(int d) const { return static_cast<int>(layers[d].size()); }
    long total_nodes() const;
    long total_down_links() const;
    std::vector<int> layer_sizes() const;

    uint64_t structure_hash() const;
    nlohmann::json to_json() const;
    static HasseDiagram from_json(const nlohmann::json& j);
    std::string to_dot() const;
};

// Requires the simplex lists to be closed under taking facets.
HasseDiagram build_hasse(const std::vector<std::vector<std::vector<int>>>& simplexes);

// enumerate_simplexes + build_hasse. max_dim < 0 selects the default,
// (largest maximal clique - 1), capped at dim_cap.
HasseDiagram hasse_from_graph(const ChordalGraph& g, int max_dim = -1,
                              int dim_cap = 6);

} // namespace hnn

#endif
