#ifndef HNN_TMFG_HPP
#define HNN_TMFG_HPP

#include <array>
#include <utility>
#include <vector>

#include "hnn/graph.hpp"
#include "hnn/similarity.hpp"

namespace hnn {

// Audit record of the greedy construction: the seed tetrahedron followed by
// every (vertex, host face) insertion, in order. Replaying it reproduces the
// edge set exactly.
struct TmfgTrace {
    std::array<int, 4> seed{};
    struct Insertion {
        int vertex;
        std::array<int, 3> face; // ascending vertex indices
    };
    std::vector<Insertion> insertions;
};

// Builds the Triangulated Maximally Filtered Graph of a similarity matrix:
// seed with the 4 vertices maximizing their 6 mutual weights, then repeatedly
// insert the (vertex, triangular face) pair maximizing the sum of the 3 new
// edge weights. Ties break on the smaller vertex index, then the
// lexicographically smaller face, so the result is deterministic.
std::pair<ChordalGraph, TmfgTrace> tmfg_construct(const SimilarityMatrix& w);

// Rebuilds the edge set from a trace.
ChordalGraph replay_trace(const TmfgTrace& trace, int p);

// Structural audit of a graph against the TMFG contract: 3p-6 edges, clique
// census (3p-8 triangles, p-3 tetrahedra), chordality, max clique size 4.
struct ValidationReport {
    int p = 0;
    int edge_count = 0;
    int expected_edges = 0; // 3p-6
    bool edge_count_ok = false;
    bool chordal = false;
    long n_edges = 0;     // 2-cliques
    long n_triangles = 0; // 3-cliques
    long n_tetrahedra = 0;
    int max_clique_size = 0;
    bool clique_size_ok = false; // max clique <= 4
    bool census_ok = false;      // triangles == 3p-8 and tetrahedra == p-3
    bool is_tmfg = false;
};

ValidationReport verify_tmfg(const ChordalGraph& g);

} // namespace hnn

#endif
