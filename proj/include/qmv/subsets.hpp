#pragma once

#include <cstdint>
#include <vector>

#include "qmv/rng.hpp"

namespace qmv {

// C(n, k) in exact 64-bit arithmetic.  Valid for n <= 64 over the full range
// of k; throws on overflow beyond that.
uint64_t binomial(int n, int k);

// Subsets of [n] are represented as strictly increasing vectors of 1-based
// elements.  Enumeration order is colexicographic: rank(S) = sum_i C(s_i - 1, i)
// with i = 1..k over the sorted elements, so rank({1,..,k}) = 0.
uint64_t subset_rank(const std::vector<int>& subset);
std::vector<int> subset_unrank(int n, int k, uint64_t rank);

// Uniform k-subset of [n] (sorted), via partial Fisher-Yates.
std::vector<int> random_subset(int n, int k, Rng& rng);

// Bitmask over columns/elements, bit (e-1) set for element e.  Requires n <= 64.
uint64_t subset_mask(const std::vector<int>& subset);

} // namespace qmv
