#pragma once

#include <cstdint>
#include <vector>

namespace qmv {

// Johnson graph J(n, k): vertices are the k-subsets of [n] in colex order,
// two vertices adjacent iff the subsets differ in exactly one element.
struct JohnsonGraph {
    int n = 0, k = 0;
    JohnsonGraph() = default;
    JohnsonGraph(int n, int k);
    int64_t vertex_count() const;
    int degree() const { return k * (n - k); }
};

// Small dense graph as adjacency lists; vertex ids 0-based.
struct AdjGraph {
    std::vector<std::vector<int>> adj;
    int vertex_count() const { return static_cast<int>(adj.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

AdjGraph johnson_adjacency(const JohnsonGraph& g);
// Categorical product: ((u,v),(u',v')) adjacent iff u~u' and v~v'.  Vertex
// (u,v) gets id u * |V2| + v.
AdjGraph product_adjacency(const AdjGraph& g1, const AdjGraph& g2);
AdjGraph complete_graph(int n);
AdjGraph edgeless_graph(int n);

// Normalized Laplacian: 1 on the diagonal, -1/sqrt(d_i d_j) on adjacent
// pairs, 0 elsewhere.  Row-major dense; throws on isolated vertices.
std::vector<double> normalized_laplacian(const AdjGraph& g);
// Normalized adjacency (the walk matrix): A_ij / sqrt(d_i d_j).
std::vector<double> normalized_adjacency(const AdjGraph& g);

} // namespace qmv
