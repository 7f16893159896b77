#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qmv/rng.hpp"

namespace qmv {

// Search over [1, N] with a pure predicate.  The simulation knows the
// solution set (to evaluate the closed-form success probability); the
// modeled searcher only consumes oracle calls.
struct SearchProblem {
    int64_t size = 0;                          // N
    std::function<bool(int64_t)> predicate;    // 1-based index test
    uint64_t cost_per_oracle_call = 1;         // time units per call
};

struct BBHTParams {
    double growth = 6.0 / 5.0;
    // phase cap ceil(sqrt(N)); "no solutions" certified by ceil(log2 N)
    // full sweeps of the capped schedule
};

// Success probability of measuring a solution after j Grover iterations
// from the uniform state: sin^2((2j+1) theta), sin theta = sqrt(t/N).
double grover_success_prob(int64_t n, int64_t t, int64_t j);

struct SearchResult {
    std::optional<int64_t> found;
    uint64_t oracle_calls = 0;
    double time_units = 0.0; // calls * cost_per_oracle_call
};

// Grover search with unknown solution count: grow the iteration bound by
// 6/5 up to ceil(sqrt(N)); each measurement is simulated with the closed
// form and verified with one extra oracle call.  With no solutions the full
// capped schedule is swept ceil(log2 N) times before returning none.
SearchResult bbht_search(const SearchProblem& problem, uint64_t seed);

// Deterministic worst-case oracle-call budget of one bbht_search (all
// sweeps, maximal j each attempt); used by the modeled cost formulas.
uint64_t bbht_worst_case_calls(int64_t n);

struct FindAllResult {
    std::vector<int64_t> solutions; // sorted
    uint64_t oracle_calls = 0;
    double time_units = 0.0;
};

// Repeated bbht_search with found solutions masked out, until a none
// result; finds every solution with polynomially small miss probability.
FindAllResult find_all_in_line(const SearchProblem& problem, uint64_t seed);

} // namespace qmv
