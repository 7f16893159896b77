#include "qmv/subsets.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmv {

uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n > 64) throw std::invalid_argument("binomial: n > 64 not supported");
    k = std::min(k, n - k);
    uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n-k+i) / i is always integral at each step
        uint64_t num = static_cast<uint64_t>(n - k + i);
        if (result > UINT64_MAX / num) throw std::overflow_error("binomial overflow");
        result = result * num / static_cast<uint64_t>(i);
    }
    return result;
}

uint64_t subset_rank(const std::vector<int>& subset) {
    uint64_t r = 0;
    for (size_t i = 0; i < subset.size(); ++i)
        r += binomial(subset[i] - 1, static_cast<int>(i) + 1);
    return r;
}

std::vector<int> subset_unrank(int n, int k, uint64_t rank) {
    if (k < 0 || k > n) throw std::invalid_argument("subset_unrank: bad k");
    if (rank >= binomial(n, k)) throw std::invalid_argument("subset_unrank: rank out of range");
    std::vector<int> subset(k);
    int hi = n;
    for (int i = k; i >= 1; --i) {
        // largest c with C(c-1, i) <= rank
        int c = hi;
        while (binomial(c - 1, i) > rank) --c;
        subset[i - 1] = c;
        rank -= binomial(c - 1, i);
        hi = c - 1;
    }
    return subset;
}

std::vector<int> random_subset(int n, int k, Rng& rng) {
    if (k < 0 || k > n) throw std::invalid_argument("random_subset: bad k");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.uniform_u64(static_cast<uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + k);
    std::sort(subset.begin(), subset.end());
    return subset;
}

uint64_t subset_mask(const std::vector<int>& subset) {
    uint64_t m = 0;
    for (int e : subset) m |= 1ULL << (e - 1);
    return m;
}

} // namespace qmv
