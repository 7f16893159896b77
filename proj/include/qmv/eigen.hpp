#pragma once

#include <vector>

#include "qmv/graph.hpp"

namespace qmv {

// Eigenvalues of a dense symmetric matrix (row-major, n x n), sorted
// ascending.  Householder tridiagonalization followed by implicit-shift QL;
// deterministic for a given input.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

// Cyclic Jacobi reference solver, kept as the independent cross-check for
// the QL path.
std::vector<double> symmetric_eigenvalues_jacobi(std::vector<double> a, int n);

struct Spectrum {
    std::vector<double> eigenvalues; // ascending
    double gap = 0.0;                // second smallest
};

// Appendix-value gap of the Johnson graph: n / ((n-k) k), for 1 <= k < n.
double johnson_gap_formula(int n, int k);

inline constexpr int kDefaultEigCap = 4096;

// Full normalized-Laplacian spectrum via the eigensolver.
Spectrum spectral_gap_eig(const AdjGraph& g, int vertex_cap = kDefaultEigCap);

// Laplacian spectrum of the categorical product, computed as {1 - nu*mu}
// over all pairs of factor normalized-adjacency eigenvalues.
Spectrum product_spectrum(const AdjGraph& g1, const AdjGraph& g2, int vertex_cap = kDefaultEigCap);

} // namespace qmv
