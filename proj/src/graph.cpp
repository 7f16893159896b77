#include "qmv/graph.hpp"

#include <cmath>
#include <stdexcept>

#include "qmv/subsets.hpp"

namespace qmv {

JohnsonGraph::JohnsonGraph(int n, int k) : n(n), k(k) {
    if (k < 1 || k > n) throw std::invalid_argument("JohnsonGraph: need 1 <= k <= n");
}

int64_t JohnsonGraph::vertex_count() const { return static_cast<int64_t>(binomial(n, k)); }

AdjGraph johnson_adjacency(const JohnsonGraph& g) {
    const int64_t nv = g.vertex_count();
    AdjGraph graph;
    graph.adj.resize(static_cast<size_t>(nv));
    for (int64_t v = 0; v < nv; ++v) {
        auto subset = subset_unrank(g.n, g.k, static_cast<uint64_t>(v));
        uint64_t mask = subset_mask(subset);
        auto& neighbors = graph.adj[static_cast<size_t>(v)];
        neighbors.reserve(static_cast<size_t>(g.degree()));
        for (int out = 0; out < g.k; ++out) {
            for (int in = 1; in <= g.n; ++in) {
                if (mask & (1ULL << (in - 1))) continue;
                auto s = subset;
                s[out] = in;
                std::sort(s.begin(), s.end());
                neighbors.push_back(static_cast<int>(subset_rank(s)));
            }
        }
        std::sort(neighbors.begin(), neighbors.end());
    }
    return graph;
}

AdjGraph product_adjacency(const AdjGraph& g1, const AdjGraph& g2) {
    const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    AdjGraph graph;
    graph.adj.resize(static_cast<size_t>(n1) * n2);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) {
            auto& neighbors = graph.adj[static_cast<size_t>(u) * n2 + v];
            neighbors.reserve(g1.adj[u].size() * g2.adj[v].size());
            for (int up : g1.adj[u])
                for (int vp : g2.adj[v]) neighbors.push_back(up * n2 + vp);
            std::sort(neighbors.begin(), neighbors.end());
        }
    return graph;
}

AdjGraph complete_graph(int n) {
    AdjGraph g;
    g.adj.resize(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) g.adj[u].push_back(v);
    return g;
}

AdjGraph edgeless_graph(int n) {
    AdjGraph g;
    g.adj.resize(static_cast<size_t>(n));
    return g;
}

std::vector<double> normalized_laplacian(const AdjGraph& g) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("normalized_laplacian: isolated vertex");
    std::vector<double> l(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        l[static_cast<size_t>(i) * n + i] = 1.0;
        for (int j : g.adj[i])
            l[static_cast<size_t>(i) * n + j] =
                -1.0 / std::sqrt(static_cast<double>(g.degree(i)) * g.degree(j));
    }
    return l;
}

std::vector<double> normalized_adjacency(const AdjGraph& g) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("normalized_adjacency: isolated vertex");
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j : g.adj[i])
            a[static_cast<size_t>(i) * n + j] =
                1.0 / std::sqrt(static_cast<double>(g.degree(i)) * g.degree(j));
    return a;
}

} // namespace qmv
