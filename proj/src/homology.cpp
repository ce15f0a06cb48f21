#include "hnn/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hnn/common.hpp"

namespace hnn {

McsResult mcs_order(const ChordalGraph& g) {
    const int p = g.p;
    McsResult res;
    if (p == 0) {
        res.chordal = true;
        return res;
    }
    const auto nbr = neighbor_lists(g);

    std::vector<int> weight(p, 0);
    std::vector<uint8_t> visited(p, 0);
    res.order.reserve(p);
    for (int step = 0; step < p; ++step) {
        int pick = -1;
        for (int v = 0; v < p; ++v) {
            if (visited[v]) continue;
            if (pick < 0 || weight[v] > weight[pick]) pick = v;
        }
        visited[pick] = 1;
        res.order.push_back(pick);
        for (int u : nbr[pick])
            if (!visited[u]) ++weight[u];
    }

    // Perfect elimination test on the reverse order (Tarjan-Yannakakis):
    // for each vertex the earliest later neighbor must dominate the rest.
    std::vector<int> pos(p); // elimination position: last visited first
    for (int i = 0; i < p; ++i) pos[res.order[i]] = p - 1 - i;
    const auto adj = adjacency_matrix(g);
    auto adjacent = [&](int a, int b) {
        return adj[static_cast<size_t>(a) * p + b] != 0;
    };

    res.chordal = true;
    for (int v = 0; v < p && res.chordal; ++v) {
        int u = -1;
        for (int w : nbr[v])
            if (pos[w] > pos[v] && (u < 0 || pos[w] < pos[u])) u = w;
        if (u < 0) continue;
        for (int w : nbr[v]) {
            if (w == u || pos[w] <= pos[v]) continue;
            if (!adjacent(u, w)) {
                res.chordal = false;
                break;
            }
        }
    }
    return res;
}

std::vector<std::vector<int>> maximal_cliques(const ChordalGraph& g) {
    McsResult mcs = mcs_order(g);
    if (!mcs.chordal) throw Error("maximal_cliques: graph is not chordal");
    const int p = g.p;
    const auto nbr = neighbor_lists(g);
    std::vector<int> pos(p);
    for (int i = 0; i < p; ++i) pos[mcs.order[i]] = p - 1 - i;

    // Candidate cliques: v plus its later neighbors in the elimination order.
    std::set<std::vector<int>> candidates;
    for (int v = 0; v < p; ++v) {
        std::vector<int> c{v};
        for (int w : nbr[v])
            if (pos[w] > pos[v]) c.push_back(w);
        std::sort(c.begin(), c.end());
        candidates.insert(std::move(c));
    }

    std::vector<std::vector<int>> cliques(candidates.begin(), candidates.end());
    auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::vector<std::vector<int>> maximal;
    for (const auto& c : cliques) {
        bool dominated = false;
        for (const auto& other : cliques) {
            if (other.size() > c.size() && contains(other, c)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(c);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

CliqueTree clique_tree(const std::vector<std::vector<int>>& cliques,
                       const ChordalGraph& g) {
    CliqueTree tree;
    tree.cliques = cliques;
    std::sort(tree.cliques.begin(), tree.cliques.end());
    const int m = static_cast<int>(tree.cliques.size());
    if (m == 0) return tree;

    struct CandEdge {
        int w;
        int a, b;
    };
    std::vector<CandEdge> cand;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            std::vector<int> inter;
            std::set_intersection(tree.cliques[a].begin(), tree.cliques[a].end(),
                                  tree.cliques[b].begin(), tree.cliques[b].end(),
                                  std::back_inserter(inter));
            if (!inter.empty())
                cand.push_back({static_cast<int>(inter.size()), a, b});
        }
    // Kruskal on descending weight; ties in lexicographic clique-index order
    // keep separator multiplicities deterministic.
    std::stable_sort(cand.begin(), cand.end(), [](const CandEdge& x, const CandEdge& y) {
        if (x.w != y.w) return x.w > y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : cand) {
        int ra = find(e.a), rb = find(e.b);
        if (ra == rb) continue;
        parent[ra] = rb;
        tree.tree_edges.emplace_back(e.a, e.b);
        std::vector<int> inter;
        std::set_intersection(tree.cliques[e.a].begin(), tree.cliques[e.a].end(),
                              tree.cliques[e.b].begin(), tree.cliques[e.b].end(),
                              std::back_inserter(inter));
        tree.edge_separators.push_back(std::move(inter));
    }
    tree.forest = static_cast<int>(tree.tree_edges.size()) != m - 1;

    std::map<std::vector<int>, int> mult;
    for (const auto& s : tree.edge_separators) ++mult[s];
    for (auto& [verts, count] : mult)
        tree.separators.push_back({verts, count});
    return tree;
}

std::vector<std::vector<std::vector<int>>> enumerate_simplexes(
    const ChordalGraph& g, int max_dim) {
    if (max_dim < 1) throw Error("enumerate_simplexes: max_dim must be >= 1");
    const auto cliques = maximal_cliques(g);

    std::vector<std::set<std::vector<int>>> layers(max_dim + 1);
    for (int v = 0; v < g.p; ++v) layers[0].insert({v});
    for (const auto& c : cliques) {
        const int k = static_cast<int>(c.size());
        // all subsets of the maximal clique, by bitmask
        for (uint32_t mask = 1; mask < (1u << k); ++mask) {
            const int sz = __builtin_popcount(mask);
            if (sz < 2 || sz > max_dim + 1) continue;
            std::vector<int> s;
            s.reserve(sz);
            for (int b = 0; b < k; ++b)
                if (mask & (1u << b)) s.push_back(c[b]);
            layers[sz - 1].insert(std::move(s));
        }
    }

    std::vector<std::vector<std::vector<int>>> out(max_dim + 1);
    for (int d = 0; d <= max_dim; ++d)
        out[d].assign(layers[d].begin(), layers[d].end());
    while (out.size() > 1 && out.back().empty()) out.pop_back();
    return out;
}

HasseDiagram build_hasse(const std::vector<std::vector<std::vector<int>>>& simplexes) {
    HasseDiagram h;
    h.layers = simplexes;
    const int D = h.n_layers() - 1;
    if (D < 0) throw Error("build_hasse: no layers");

    std::vector<std::map<std::vector<int>, int>> index(D + 1);
    for (int d = 0; d <= D; ++d) {
        for (int i = 0; i < h.layer_size(d); ++i) {
            const auto& tup = h.layers[d][i];
            if (static_cast<int>(tup.size()) != d + 1)
                throw Error("build_hasse: tuple size does not match its layer");
            if (!std::is_sorted(tup.begin(), tup.end()))
                throw Error("build_hasse: simplex tuple is not sorted");
            index[d][tup] = i;
        }
    }

    h.down_links.assign(D + 1, {});
    h.up_links.assign(D + 1, {});
    for (int d = 0; d <= D; ++d) {
        h.down_links[d].resize(h.layer_size(d));
        h.up_links[d].resize(h.layer_size(d));
    }
    for (int d = 1; d <= D; ++d) {
        for (int i = 0; i < h.layer_size(d); ++i) {
            const auto& tup = h.layers[d][i];
            std::vector<int> facets;
            for (size_t drop = 0; drop < tup.size(); ++drop) {
                std::vector<int> facet;
                facet.reserve(tup.size() - 1);
                for (size_t k = 0; k < tup.size(); ++k)
                    if (k != drop) facet.push_back(tup[k]);
                auto it = index[d - 1].find(facet);
                if (it == index[d - 1].end())
                    throw Error("build_hasse: facet missing from layer " +
                                std::to_string(d - 1) + " (input not face-closed)");
                facets.push_back(it->second);
            }
            std::sort(facets.begin(), facets.end());
            for (int f : facets) h.up_links[d - 1][f].push_back(i);
            h.down_links[d][i] = std::move(facets);
        }
    }
    return h;
}

HasseDiagram hasse_from_graph(const ChordalGraph& g, int max_dim, int dim_cap) {
    const auto cliques = maximal_cliques(g);
    int largest = 1;
    for (const auto& c : cliques)
        largest = std::max(largest, static_cast<int>(c.size()));
    if (max_dim < 0) max_dim = std::min(largest - 1, dim_cap);
    if (max_dim < 1) max_dim = 1;
    return build_hasse(enumerate_simplexes(g, max_dim));
}

long HasseDiagram::total_nodes() const {
    long n = 0;
    for (const auto& l : layers) n += static_cast<long>(l.size());
    return n;
}

long HasseDiagram::total_down_links() const {
    long n = 0;
    for (const auto& layer : down_links)
        for (const auto& links : layer) n += static_cast<long>(links.size());
    return n;
}

std::vector<int> HasseDiagram::layer_sizes() const {
    std::vector<int> s;
    for (const auto& l : layers) s.push_back(static_cast<int>(l.size()));
    return s;
}

uint64_t HasseDiagram::structure_hash() const {
    uint64_t h = 14695981039346656037ull;
    for (const auto& layer : layers) {
        uint64_t n = layer.size();
        h = fnv1a(&n, sizeof(n), h);
        for (const auto& tup : layer)
            h = fnv1a(tup.data(), tup.size() * sizeof(int), h);
    }
    return h;
}

nlohmann::json HasseDiagram::to_json() const {
    nlohmann::json j;
    j["layers"] = layers;
    auto links = nlohmann::json::array();
    for (int d = 1; d < n_layers(); ++d) links.push_back(down_links[d]);
    j["down_links"] = links;
    return j;
}

HasseDiagram HasseDiagram::from_json(const nlohmann::json& j) {
    auto layers = j.at("layers").get<std::vector<std::vector<std::vector<int>>>>();
    HasseDiagram h = build_hasse(layers);
    // down_links in the file are redundant with the layers; verify they agree
    if (j.contains("down_links")) {
        const auto& links = j.at("down_links");
        for (int d = 1; d < h.n_layers(); ++d) {
            if (links[d - 1].get<std::vector<std::vector<int>>>() != h.down_links[d])
                throw Error("hasse json: stored down_links disagree with layers");
        }
    }
    return h;
}

std::string HasseDiagram::to_dot() const {
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n";
    for (int d = 0; d < n_layers(); ++d) {
        os << "  { rank=same;";
        for (int i = 0; i < layer_size(d); ++i) {
            os << " L" << d << "_" << i;
        }
        os << " }\n";
        for (int i = 0; i < layer_size(d); ++i) {
            os << "  L" << d << "_" << i << " [label=\"";
            for (size_t k = 0; k < layers[d][i].size(); ++k) {
                if (k) os << ",";
                os << layers[d][i][k];
            }
            os << "\"];\n";
        }
    }
    for (int d = 1; d < n_layers(); ++d)
        for (int i = 0; i < layer_size(d); ++i)
            for (int f : down_links[d][i])
                os << "  L" << d - 1 << "_" << f << " -> L" << d << "_" << i << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace hnn
