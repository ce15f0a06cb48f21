#include "hnn/tmfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hnn/common.hpp"
#include "hnn/homology.hpp"

namespace hnn {

namespace {

struct Face {
    std::array<int, 3> v; // ascending
    bool active = true;
};

std::array<int, 3> sorted_face(int a, int b, int c) {
    std::array<int, 3> f{a, b, c};
    std::sort(f.begin(), f.end());
    return f;
}

// Exhaustive best tetrahedron over the given candidate vertices (ascending).
// Combinations are visited in lexicographic order with a strict improvement
// test, so equal sums resolve to the lexicographically smallest quadruple.
std::array<int, 4> best_tetrahedron(const Eigen::MatrixXd& w,
                                    const std::vector<int>& cand) {
    const int m = static_cast<int>(cand.size());
    std::array<int, 4> best{};
    double best_sum = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d) {
                    int i = cand[a], j = cand[b], k = cand[c], l = cand[d];
                    double s = w(i, j) + w(i, k) + w(i, l) +
                               w(j, k) + w(j, l) + w(k, l);
                    if (s > best_sum) {
                        best_sum = s;
                        best = {i, j, k, l};
                    }
                }
    return best;
}

} // namespace

std::pair<ChordalGraph, TmfgTrace> tmfg_construct(const SimilarityMatrix& sim) {
    const Eigen::MatrixXd& w = sim.values;
    const int p = sim.dim();
    if (p < 4) throw Error("tmfg_construct: need at least 4 vertices");
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            if (!std::isfinite(w(i, j)))
                throw Error("tmfg_construct: non-finite weight");
            if (w(i, j) != w(j, i))
                throw Error("tmfg_construct: similarity matrix is not symmetric");
        }

    // Seed tetrahedron: exact search up to p=30, otherwise exact search over
    // the 8 vertices with the largest off-diagonal row sums.
    std::vector<int> cand;
    if (p <= 30) {
        cand.resize(p);
        for (int i = 0; i < p; ++i) cand[i] = i;
    } else {
        std::vector<std::pair<double, int>> sums(p);
        for (int i = 0; i < p; ++i) {
            double s = w.row(i).sum() - w(i, i);
            sums[i] = {s, i};
        }
        std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (int k = 0; k < 8; ++k) cand.push_back(sums[k].second);
        std::sort(cand.begin(), cand.end());
    }
    std::array<int, 4> seed = best_tetrahedron(w, cand);

    TmfgTrace trace;
    trace.seed = seed;

    std::vector<uint8_t> in_graph(p, 0);
    std::vector<std::pair<int, int>> edges;
    auto add_edge = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    };
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) add_edge(seed[a], seed[b]);
    for (int v : seed) in_graph[v] = 1;

    std::vector<Face> faces;
    faces.push_back({sorted_face(seed[0], seed[1], seed[2])});
    faces.push_back({sorted_face(seed[0], seed[1], seed[3])});
    faces.push_back({sorted_face(seed[0], seed[2], seed[3])});
    faces.push_back({sorted_face(seed[1], seed[2], seed[3])});

    std::vector<int> remaining;
    for (int v = 0; v < p; ++v)
        if (!in_graph[v]) remaining.push_back(v);

    auto gain = [&](int v, const Face& f) {
        return w(v, f.v[0]) + w(v, f.v[1]) + w(v, f.v[2]);
    };

    // Per-vertex cached best face: highest gain, lexicographically smallest
    // face on ties. Invalidated entries rescan the active face list.
    std::vector<int> best_face(p, -1);
    std::vector<double> best_gain(p, 0.0);
    auto rescan = [&](int v) {
        int bf = -1;
        double bg = -std::numeric_limits<double>::infinity();
        for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
            if (!faces[fi].active) continue;
            double g = gain(v, faces[fi]);
            if (g > bg || (g == bg && (bf < 0 || faces[fi].v < faces[bf].v))) {
                bg = g;
                bf = fi;
            }
        }
        best_face[v] = bf;
        best_gain[v] = bg;
    };
    for (int v : remaining) rescan(v);

    while (!remaining.empty()) {
        // remaining is kept ascending, so scanning in order and improving only
        // on strictly larger gain realizes the smallest-vertex tie-break
        int pick = -1;
        double pick_gain = -std::numeric_limits<double>::infinity();
        for (int v : remaining) {
            if (best_gain[v] > pick_gain) {
                pick_gain = best_gain[v];
                pick = v;
            }
        }
        const int fi = best_face[pick];
        const Face host = faces[fi];
        faces[fi].active = false;

        for (int x : host.v) add_edge(pick, x);
        in_graph[pick] = 1;
        trace.insertions.push_back({pick, host.v});

        const int first_new = static_cast<int>(faces.size());
        faces.push_back({sorted_face(pick, host.v[0], host.v[1])});
        faces.push_back({sorted_face(pick, host.v[0], host.v[2])});
        faces.push_back({sorted_face(pick, host.v[1], host.v[2])});

        remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
        for (int v : remaining) {
            if (best_face[v] == fi) {
                rescan(v);
                continue;
            }
            for (int nf = first_new; nf < first_new + 3; ++nf) {
                double g = gain(v, faces[nf]);
                if (g > best_gain[v] ||
                    (g == best_gain[v] && faces[nf].v < faces[best_face[v]].v)) {
                    best_gain[v] = g;
                    best_face[v] = nf;
                }
            }
        }
    }

    return {make_graph(p, std::move(edges), "tmfg"), trace};
}

ChordalGraph replay_trace(const TmfgTrace& trace, int p) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            edges.emplace_back(trace.seed[a], trace.seed[b]);
    for (const auto& ins : trace.insertions)
        for (int x : ins.face) edges.emplace_back(ins.vertex, x);
    return make_graph(p, std::move(edges), "tmfg");
}

ValidationReport verify_tmfg(const ChordalGraph& g) {
    ValidationReport rep;
    rep.p = g.p;
    rep.edge_count = g.edge_count();
    rep.expected_edges = 3 * g.p - 6;
    rep.edge_count_ok = rep.edge_count == rep.expected_edges;
    rep.chordal = mcs_order(g).chordal;
    rep.n_edges = g.edge_count();

    const auto adj = adjacency_matrix(g);
    const auto nbr = neighbor_lists(g);
    auto adjacent = [&](int a, int b) {
        return adj[static_cast<size_t>(a) * g.p + b] != 0;
    };

    // ordered enumeration i < j < k (< l < m); each clique counted once
    bool has_k5 = false;
    for (auto [i, j] : g.edges) {
        for (int k : nbr[j]) {
            if (k <= j || !adjacent(i, k)) continue;
            ++rep.n_triangles;
            for (int l : nbr[k]) {
                if (l <= k || !adjacent(i, l) || !adjacent(j, l)) continue;
                ++rep.n_tetrahedra;
                for (int m : nbr[l]) {
                    if (m <= l) continue;
                    if (adjacent(i, m) && adjacent(j, m) && adjacent(k, m))
                        has_k5 = true;
                }
            }
        }
    }

    if (has_k5)
        rep.max_clique_size = 5; // 5 or more; already disqualifying
    else if (rep.n_tetrahedra > 0)
        rep.max_clique_size = 4;
    else if (rep.n_triangles > 0)
        rep.max_clique_size = 3;
    else if (rep.n_edges > 0)
        rep.max_clique_size = 2;
    else
        rep.max_clique_size = g.p > 0 ? 1 : 0;

    rep.clique_size_ok = !has_k5;
    rep.census_ok = rep.n_triangles == 3l * g.p - 8 && rep.n_tetrahedra == g.p - 3;
    rep.is_tmfg = rep.edge_count_ok && rep.chordal && rep.clique_size_ok && rep.census_ok;
    return rep;
}

} // namespace hnn
