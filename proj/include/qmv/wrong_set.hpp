#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmv/domain.hpp"

namespace qmv {

using Cell = std::pair<int, int>; // 1-based (row, col)

// Maximum independent subset of a cell set: at most one cell per row and per
// column, i.e. a maximum matching of the bipartite row/column graph.
struct MatchingResult {
    int size = 0;
    std::vector<Cell> witness; // one maximum independent subset
};
MatchingResult max_independent_subset(const std::vector<Cell>& cells, int n);

// The set W of wrong entries of a product, with the statistics the running
// time analysis is phrased in: w_rows = number of nonzero rows, max_row_count
// = most cells in any single row, w_prime = |W'| (largest independent
// subset), q = max(|W'|, min(|W|, sqrt(n))) with sqrt(n) kept real-valued.
struct WrongSet {
    int n = 0;
    std::vector<Cell> cells; // sorted
    int w_rows = 0;
    int max_row_count = 0;
    int w_prime = 0;
    double q = 0.0;

    bool empty() const { return cells.empty(); }
    int size() const { return static_cast<int>(cells.size()); }
    // Per-row column bitmask, rows 1..n; requires n <= 64.
    std::vector<uint64_t> row_masks() const;
    bool is_independent() const;
};

WrongSet wrong_set_from_cells(int n, std::vector<Cell> cells);
WrongSet wrong_set(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c);

// Wrong-entry patterns used by the instance generators and the CLI.
// Text forms: none | single | row | independent:t | random:t | rectangle:a,b
struct WrongPattern {
    enum class Kind { none, single, row, independent, random_cells, rectangle };
    Kind kind = Kind::none;
    int t = 0;        // independent / random_cells
    int a = 0, b = 0; // rectangle

    static WrongPattern parse(const std::string& text);
    std::string str() const;
};

std::vector<Cell> make_pattern_cells(int n, const WrongPattern& pattern, Rng& rng);

// A, B random over the domain, C = AB with exactly the requested cells
// perturbed by nonzero deltas, so wrong_set(A,B,C) matches the pattern.
struct Instance {
    DomainMatrix a, b, c;
    WrongSet w;
};
Instance generate_instance(int n, int m, const WrongPattern& pattern, const DomainSpec& domain,
                           uint64_t seed);

// A pair (A, B) whose true product has exactly the pattern cells nonzero;
// used by the multiplication experiments where the output sparsity matters.
struct ProductInstance {
    DomainMatrix a, b;
    WrongSet product_support;
};
ProductInstance generate_product_instance(int n, int m, const WrongPattern& pattern,
                                          const DomainSpec& domain, uint64_t seed);

} // namespace qmv
