#include "qmv/grover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmv {

namespace {

int64_t phase_cap(int64_t n) {
    return static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

int confirmation_rounds(int64_t n) {
    return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
}

} // namespace

double grover_success_prob(int64_t n, int64_t t, int64_t j) {
    if (n < 1 || t < 0 || t > n || j < 0) throw std::invalid_argument("grover_success_prob: bad arguments");
    if (t == 0) return 0.0;
    const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
    const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
    return s * s;
}

SearchResult bbht_search(const SearchProblem& problem, uint64_t seed) {
    const int64_t n = problem.size;
    if (n < 1) throw std::invalid_argument("bbht_search: N >= 1");
    // simulation-side knowledge of the solution set
    std::vector<int64_t> solutions, non_solutions;
    for (int64_t i = 1; i <= n; ++i)
        (problem.predicate(i) ? solutions : non_solutions).push_back(i);
    const int64_t t = static_cast<int64_t>(solutions.size());

    Rng rng(seed);
    SearchResult res;
    const int64_t cap = phase_cap(n);
    const int sweeps = confirmation_rounds(n);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double phase = 1.0;
        while (true) {
            const int64_t j_bound = static_cast<int64_t>(std::ceil(phase));
            const int64_t j = static_cast<int64_t>(rng.uniform_u64(static_cast<uint64_t>(j_bound)));
            res.oracle_calls += static_cast<uint64_t>(j) + 1; // iterations + verification
            const double p = grover_success_prob(n, t, j);
            if (t > 0 && rng.bernoulli(p)) {
                // measured index: uniform over solutions on success
                res.found = solutions[rng.uniform_u64(static_cast<uint64_t>(t))];
                res.time_units = static_cast<double>(res.oracle_calls) * problem.cost_per_oracle_call;
                return res;
            }
            // failed measurement lands on a uniform non-solution; the
            // verification call above already rejected it
            if (phase >= static_cast<double>(cap)) break;
            phase = std::min(phase * (6.0 / 5.0), static_cast<double>(cap));
        }
    }
    res.time_units = static_cast<double>(res.oracle_calls) * problem.cost_per_oracle_call;
    return res;
}

uint64_t bbht_worst_case_calls(int64_t n) {
    const int64_t cap = phase_cap(n);
    uint64_t per_sweep = 0;
    double phase = 1.0;
    while (true) {
        per_sweep += static_cast<uint64_t>(std::ceil(phase)); // worst-case j + 1
        if (phase >= static_cast<double>(cap)) break;
        phase = std::min(phase * (6.0 / 5.0), static_cast<double>(cap));
    }
    return per_sweep * static_cast<uint64_t>(confirmation_rounds(n));
}

FindAllResult find_all_in_line(const SearchProblem& problem, uint64_t seed) {
    FindAllResult res;
    std::vector<uint8_t> found(static_cast<size_t>(problem.size) + 1, 0);
    SearchProblem masked = problem;
    masked.predicate = [&](int64_t i) { return !found[static_cast<size_t>(i)] && problem.predicate(i); };
    uint64_t round = 0;
    while (true) {
        auto r = bbht_search(masked, derive_seed(seed, {round++}));
        res.oracle_calls += r.oracle_calls;
        if (!r.found) break;
        found[static_cast<size_t>(*r.found)] = 1;
        res.solutions.push_back(*r.found);
    }
    std::sort(res.solutions.begin(), res.solutions.end());
    res.time_units = static_cast<double>(res.oracle_calls) * problem.cost_per_oracle_call;
    return res;
}

} // namespace qmv
