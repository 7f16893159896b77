#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmv/domain.hpp"
#include "qmv/fractions.hpp"
#include "qmv/multiply.hpp"
#include "qmv/verify.hpp"
#include "qmv/wrong_set.hpp"

// Experiment batteries shared by the CLI suites and the acceptance tests.
// Every battery is deterministic for a fixed seed: trials derive their own
// seed streams and results are assembled by trial index, so internal
// parallelism never changes the output.
namespace qmv::experiments {

struct GapRow {
    int n, k;
    double formula_gap, eig_gap, abs_err;
};
std::vector<GapRow> johnson_gap_grid(int n_min, int n_max);

struct ProductGapRow {
    int n, k;
    int64_t product_vertices;
    double factor_gap;    // Johnson formula value
    double pairwise_gap;  // from the factor-spectra product identity
    double direct_gap;    // direct eigensolve of the product Laplacian
    double max_eig_diff;  // pairwise vs direct, over the full spectrum
    bool equality_expected; // pairwise_gap == min(factor gaps), n >= 5 and k >= 2
};
std::vector<ProductGapRow> product_gap_grid(int64_t max_product_vertices);

struct OneSidedResult {
    std::string domain;
    int n = 0;
    int runs = 0;
    int equal_verdicts = 0;
    double worst_prob = 0.0; // max per-call success probability seen
};
OneSidedResult one_sided_battery(const DomainSpec& domain, int n, int runs, uint64_t seed);

struct DetectionResult {
    std::string pattern;
    int n = 0;
    int trials = 0;
    int detected = 0;
    double rate = 0.0;
    std::vector<int> terminating_k; // per detection
};
DetectionResult detection_battery(int n, int m, const WrongPattern& pattern,
                                  const DomainSpec& domain, int trials, uint64_t seed,
                                  VerifyMode mode);

struct EpsilonSingleResult {
    int checked = 0;
    int failures = 0; // epsilon != rs/n^2 as exact rationals
};
EpsilonSingleResult epsilon_single_battery(int n_max);

struct BoundBatteryResult {
    int fixtures = 0;   // applicable (W, r, s) triples
    int failures = 0;
};
BoundBatteryResult small_set_battery(int n_min, int n_max, uint64_t seed);
BoundBatteryResult indep_set_battery(const std::vector<int>& ns, uint64_t seed);

struct IntDomResult {
    int pairs_checked = 0;
    int failures = 0;          // probability below (1 - 1/g)^2
    int equality_cases = 0;    // |W /\ R x S| = 1
    int equality_failures = 0; // equality case without exact equality
};
IntDomResult int_dom_battery(uint64_t seed);

struct GoodVecResult {
    int fixtures = 0;
    int failures = 0; // fraction <= 1/8
    double min_fraction = 1.0;
};
GoodVecResult good_vec_battery(uint64_t seed);

struct BbhtCell {
    int64_t n, t;
    int runs;
    int found;
    double mean_calls;
    double sqrt_n_over_t;
};
std::vector<BbhtCell> bbht_battery(const std::vector<int64_t>& sizes,
                                   const std::vector<int64_t>& counts, int runs, uint64_t seed);
// Pearson correlation and least-squares slope of y against x.
struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double correlation = 0.0;
};
Regression linear_regression(const std::vector<double>& x, const std::vector<double>& y);

struct MultiplyCaseResult {
    int n, m, w;
    int runs;
    int exact; // output equals the classical product
    int audited_failures;
    int iteration_violations; // iterations > w' on an exact run
};
MultiplyCaseResult multiply_battery(int n, int m, int w, const DomainSpec& domain, int runs,
                                    uint64_t seed, int64_t dim_cap);

struct BoolBatteryResult {
    int runs = 0;
    int exact = 0;
    std::vector<double> mean_time_by_t; // aligned with ts
    std::vector<int64_t> ts;
};
BoolBatteryResult bool_battery(int n, int m, const std::vector<int64_t>& ts, int runs_per_t,
                               uint64_t seed);

struct ScalingRow {
    int n;
    std::string pattern;
    double q;
    int trials;
    int detected;
    double mean_terminating_k;
};
std::vector<ScalingRow> scaling_report(const std::vector<int>& ns, int trials, uint64_t seed,
                                       int64_t dim_cap);

} // namespace qmv::experiments
