#include "qmv/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "qmv/eigen.hpp"
#include "qmv/grover.hpp"
#include "qmv/subsets.hpp"

namespace qmv::experiments {

std::vector<GapRow> johnson_gap_grid(int n_min, int n_max) {
    std::vector<GapRow> rows;
    for (int n = n_min; n <= n_max; ++n)
        for (int k = 1; k <= n / 2; ++k) {
            GapRow row;
            row.n = n;
            row.k = k;
            row.formula_gap = johnson_gap_formula(n, k);
            row.eig_gap = spectral_gap_eig(johnson_adjacency(JohnsonGraph(n, k))).gap;
            row.abs_err = std::fabs(row.formula_gap - row.eig_gap);
            rows.push_back(row);
        }
    return rows;
}

std::vector<ProductGapRow> product_gap_grid(int64_t max_product_vertices) {
    std::vector<ProductGapRow> rows;
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k <= n / 2; ++k) {
            const int64_t nv = static_cast<int64_t>(binomial(n, k));
            if (nv * nv > max_product_vertices) continue;
            auto adj = johnson_adjacency(JohnsonGraph(n, k));
            auto pairwise = product_spectrum(adj, adj);
            auto direct = spectral_gap_eig(product_adjacency(adj, adj));
            ProductGapRow row;
            row.n = n;
            row.k = k;
            row.product_vertices = nv * nv;
            row.factor_gap = johnson_gap_formula(n, k);
            row.pairwise_gap = pairwise.gap;
            row.direct_gap = direct.gap;
            row.max_eig_diff = 0.0;
            for (size_t i = 0; i < pairwise.eigenvalues.size(); ++i)
                row.max_eig_diff = std::max(
                    row.max_eig_diff, std::fabs(pairwise.eigenvalues[i] - direct.eigenvalues[i]));
            row.equality_expected = n >= 5 && k >= 2;
            rows.push_back(row);
        }
    return rows;
}

OneSidedResult one_sided_battery(const DomainSpec& domain, int n, int runs, uint64_t seed) {
    OneSidedResult result;
    result.domain = domain.str();
    result.n = n;
    result.runs = runs;
    std::vector<int> equal_flags(static_cast<size_t>(runs), 0);
    std::vector<double> worst(static_cast<size_t>(runs), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < runs; ++t) {
        uint64_t s = derive_seed(seed, {static_cast<uint64_t>(t)});
        auto inst = generate_instance(n, n, WrongPattern{}, domain, s);
        auto out = product_verification(inst.a, inst.b, inst.c, derive_seed(s, {1}),
                                        VerifyMode::exact_prob);
        equal_flags[static_cast<size_t>(t)] = out.verdict == Verdict::equal;
        double w = 0.0;
        for (const auto& row : out.transcript) w = std::max(w, row.prob);
        worst[static_cast<size_t>(t)] = w;
    }
    for (int t = 0; t < runs; ++t) {
        result.equal_verdicts += equal_flags[static_cast<size_t>(t)];
        result.worst_prob = std::max(result.worst_prob, worst[static_cast<size_t>(t)]);
    }
    return result;
}

DetectionResult detection_battery(int n, int m, const WrongPattern& pattern,
                                  const DomainSpec& domain, int trials, uint64_t seed,
                                  VerifyMode mode) {
    DetectionResult result;
    result.pattern = pattern.str();
    result.n = n;
    result.trials = trials;
    std::vector<int> term_k(static_cast<size_t>(trials), -1);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        uint64_t s = derive_seed(seed, {static_cast<uint64_t>(t)});
        auto inst = generate_instance(n, m, pattern, domain, s);
        auto out = m == n ? product_verification(inst.a, inst.b, inst.c, derive_seed(s, {1}), mode)
                          : product_verification_rect(inst.a, inst.b, inst.c, derive_seed(s, {1}), mode);
        if (out.verdict == Verdict::not_equal) term_k[static_cast<size_t>(t)] = out.terminating_k;
    }
    for (int t = 0; t < trials; ++t)
        if (term_k[static_cast<size_t>(t)] >= 0) {
            ++result.detected;
            result.terminating_k.push_back(term_k[static_cast<size_t>(t)]);
        }
    result.rate = static_cast<double>(result.detected) / trials;
    return result;
}

EpsilonSingleResult epsilon_single_battery(int n_max) {
    EpsilonSingleResult result;
    for (int n = 2; n <= n_max; ++n)
        for (int i = 1; i <= n; ++i) {
            WrongSet w = wrong_set_from_cells(n, {{i, (i % n) + 1}});
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s) {
                    auto e = epsilon_exact(w, r, s);
                    ++result.checked;
                    if (e.numerator * static_cast<uint64_t>(n) * n !=
                        static_cast<uint64_t>(r) * s * e.denominator)
                        ++result.failures;
                }
        }
    return result;
}

namespace {

std::vector<WrongSet> bound_fixtures(int n, uint64_t seed) {
    std::vector<WrongSet> fixtures;
    Rng rng(seed);
    const char* patterns[] = {"single", "row",      "independent:2", "independent:3",
                              "random:3", "random:5", "rectangle:2,2"};
    for (const char* p : patterns) {
        auto pattern = WrongPattern::parse(p);
        if (pattern.t > n || pattern.a > n || pattern.b > n) continue;
        fixtures.push_back(wrong_set_from_cells(n, make_pattern_cells(n, pattern, rng)));
    }
    return fixtures;
}

} // namespace

BoundBatteryResult small_set_battery(int n_min, int n_max, uint64_t seed) {
    BoundBatteryResult result;
    for (int n = n_min; n <= n_max; ++n)
        for (const auto& w : bound_fixtures(n, derive_seed(seed, {static_cast<uint64_t>(n)})))
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s) {
                    auto check = check_bound_small_set(w, r, s);
                    if (!check.applicable) continue;
                    ++result.fixtures;
                    if (!check.pass) ++result.failures;
                }
    return result;
}

BoundBatteryResult indep_set_battery(const std::vector<int>& ns, uint64_t seed) {
    BoundBatteryResult result;
    for (int n : ns) {
        for (int t = 1; t <= n; ++t) {
            Rng rng(derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(t)}));
            auto w = wrong_set_from_cells(
                n, make_pattern_cells(n, WrongPattern::parse("independent:" + std::to_string(t)), rng));
            for (int r = 1; r <= n; ++r)
                for (int s = 1; s <= n; ++s) {
                    auto check = check_bound_indep_set(w, r, s);
                    if (!check.applicable) continue;
                    ++result.fixtures;
                    if (!check.pass) ++result.failures;
                }
        }
    }
    return result;
}

IntDomResult int_dom_battery(uint64_t seed) {
    IntDomResult result;
    for (int64_t g : {2, 3}) {
        auto domain = DomainSpec::gf(g);
        const double bound = (1.0 - 1.0 / static_cast<double>(g)) * (1.0 - 1.0 / static_cast<double>(g));
        for (int n = 2; n <= 3; ++n) {
            const char* patterns[] = {"single", "random:2", "row"};
            for (const char* p : patterns) {
                auto inst = generate_instance(
                    n, n, WrongPattern::parse(p), domain,
                    derive_seed(seed, {static_cast<uint64_t>(g), static_cast<uint64_t>(n)}));
                DomainMatrix diff = mat_sub(mat_mul(inst.a, inst.b), inst.c);
                for (int r = 1; r <= std::min(2, n); ++r)
                    for (int s = 1; s <= std::min(2, n); ++s)
                        for (uint64_t ri = 0; ri < binomial(n, r); ++ri)
                            for (uint64_t si = 0; si < binomial(n, s); ++si) {
                                IndexSubset rows(n, subset_unrank(n, r, ri));
                                IndexSubset cols(n, subset_unrank(n, s, si));
                                int wrong_inside = 0;
                                for (int i : rows.members)
                                    for (int j : cols.members)
                                        if (diff.at(i - 1, j - 1) != 0) ++wrong_inside;
                                if (wrong_inside == 0) continue;
                                auto rp = revealing_prob_exact(inst.a, inst.b, inst.c, rows, cols);
                                ++result.pairs_checked;
                                if (rp.value() < bound - 1e-12) ++result.failures;
                                if (wrong_inside == 1) {
                                    ++result.equality_cases;
                                    if (std::fabs(rp.value() - bound) > 1e-12) ++result.equality_failures;
                                }
                            }
            }
        }
    }
    return result;
}

GoodVecResult good_vec_battery(uint64_t seed) {
    GoodVecResult result;
    auto gf2 = DomainSpec::gf(2);
    const char* patterns[] = {"single", "random:2", "row", "rectangle:2,2"};
    for (int n : {3, 4})
        for (const char* p : patterns)
            for (int k : {1, 2}) {
                auto inst = generate_instance(
                    n, n, WrongPattern::parse(p), gf2,
                    derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(k),
                                       static_cast<uint64_t>(p[0])}));
                auto gv = good_vector_fraction(inst.a, inst.b, inst.c, k);
                ++result.fixtures;
                result.min_fraction = std::min(result.min_fraction, gv.value());
                if (!(gv.value() > 0.125)) ++result.failures;
            }
    return result;
}

std::vector<BbhtCell> bbht_battery(const std::vector<int64_t>& sizes,
                                   const std::vector<int64_t>& counts, int runs, uint64_t seed) {
    std::vector<BbhtCell> cells;
    for (int64_t n : sizes)
        for (int64_t t : counts) {
            BbhtCell cell{n, t, runs, 0, 0.0, std::sqrt(static_cast<double>(n) / t)};
            std::vector<uint64_t> calls(static_cast<size_t>(runs), 0);
            std::vector<int> found(static_cast<size_t>(runs), 0);
#pragma omp parallel for schedule(static)
            for (int i = 0; i < runs; ++i) {
                // solutions are the first t indices; BBHT symmetry makes the
                // placement irrelevant
                SearchProblem problem{n, [t](int64_t x) { return x <= t; }, 1};
                auto r = bbht_search(problem,
                                     derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(t),
                                                        static_cast<uint64_t>(i)}));
                calls[static_cast<size_t>(i)] = r.oracle_calls;
                found[static_cast<size_t>(i)] = r.found.has_value();
            }
            uint64_t total = 0;
            for (int i = 0; i < runs; ++i) {
                total += calls[static_cast<size_t>(i)];
                cell.found += found[static_cast<size_t>(i)];
            }
            cell.mean_calls = static_cast<double>(total) / runs;
            cells.push_back(cell);
        }
    return cells;
}

Regression linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double dn = static_cast<double>(n);
    Regression reg;
    const double cov = sxy - sx * sy / dn;
    const double varx = sxx - sx * sx / dn;
    const double vary = syy - sy * sy / dn;
    reg.slope = cov / varx;
    reg.intercept = (sy - reg.slope * sx) / dn;
    reg.correlation = cov / std::sqrt(varx * vary);
    return reg;
}

MultiplyCaseResult multiply_battery(int n, int m, int w, const DomainSpec& domain, int runs,
                                    uint64_t seed, int64_t dim_cap) {
    MultiplyCaseResult result{n, m, w, runs, 0, 0, 0};
    std::vector<int> exact(static_cast<size_t>(runs), 0), violations(static_cast<size_t>(runs), 0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < runs; ++t) {
        uint64_t s = derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(m),
                                        static_cast<uint64_t>(t)});
        WrongPattern pattern;
        pattern.kind = WrongPattern::Kind::random_cells;
        pattern.t = w;
        auto pi = generate_product_instance(n, m, pattern, domain, s);
        auto rep = matrix_multiplication(pi.a, pi.b, derive_seed(s, {2}), dim_cap, /*audit=*/true);
        exact[static_cast<size_t>(t)] = rep.audit_passed;
        if (rep.audit_passed && rep.iterations > pi.product_support.w_prime)
            violations[static_cast<size_t>(t)] = 1;
    }
    for (int t = 0; t < runs; ++t) {
        result.exact += exact[static_cast<size_t>(t)];
        result.iteration_violations += violations[static_cast<size_t>(t)];
    }
    result.audited_failures = runs - result.exact;
    return result;
}

BoolBatteryResult bool_battery(int n, int m, const std::vector<int64_t>& ts, int runs_per_t,
                               uint64_t seed) {
    BoolBatteryResult result;
    result.ts = ts;
    for (int64_t t : ts) {
        double time_sum = 0.0;
        for (int run = 0; run < runs_per_t; ++run) {
            uint64_t s = derive_seed(seed, {static_cast<uint64_t>(t), static_cast<uint64_t>(run)});
            Rng rng(s);
            // plant exactly t product cells: each used column is routed
            // through its own inner slot, so no cross terms appear
            BoolMatrix a(n, m), b(m, n);
            const int cc = static_cast<int>(std::min<int64_t>(t, std::min(n, m)));
            if (cc > 0) {
                auto columns = random_subset(n, cc, rng);
                const int64_t base = t / cc, extra = t % cc;
                for (int j = 0; j < cc; ++j) {
                    const int in_col = static_cast<int>(base + (j < extra ? 1 : 0));
                    for (int r : random_subset(n, in_col, rng)) a.at(r - 1, j) = 1;
                    b.at(j, columns[static_cast<size_t>(j)] - 1) = 1;
                }
            }
            auto rep = boolean_multiply(a, b, derive_seed(s, {3}));
            ++result.runs;
            if (rep.c == bool_mat_mul(a, b)) ++result.exact;
            time_sum += rep.model_time;
        }
        result.mean_time_by_t.push_back(time_sum / runs_per_t);
    }
    return result;
}

std::vector<ScalingRow> scaling_report(const std::vector<int>& ns, int trials, uint64_t seed,
                                       int64_t dim_cap) {
    std::vector<ScalingRow> rows;
    auto gf7 = DomainSpec::gf(7);
    for (int n : ns)
        for (const char* p : {"single", "row"}) {
            auto pattern = WrongPattern::parse(p);
            ScalingRow row;
            row.n = n;
            row.pattern = p;
            row.trials = trials;
            row.detected = 0;
            std::vector<int> term(static_cast<size_t>(trials), -1);
            double q = 0.0;
#pragma omp parallel for schedule(dynamic)
            for (int t = 0; t < trials; ++t) {
                uint64_t s = derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(p[0]),
                                                static_cast<uint64_t>(t)});
                auto inst = generate_instance(n, n, pattern, gf7, s);
                auto out = product_verification(inst.a, inst.b, inst.c, derive_seed(s, {1}),
                                                VerifyMode::sampled, dim_cap);
                if (out.verdict == Verdict::not_equal) term[static_cast<size_t>(t)] = out.terminating_k;
            }
            {
                Rng rng(derive_seed(seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(p[0]), 999}));
                q = wrong_set_from_cells(n, make_pattern_cells(n, pattern, rng)).q;
            }
            double k_sum = 0.0;
            for (int t = 0; t < trials; ++t)
                if (term[static_cast<size_t>(t)] >= 0) {
                    ++row.detected;
                    k_sum += term[static_cast<size_t>(t)];
                }
            row.q = q;
            row.mean_terminating_k = row.detected ? k_sum / row.detected : 0.0;
            rows.push_back(row);
        }
    return rows;
}

} // namespace qmv::experiments
