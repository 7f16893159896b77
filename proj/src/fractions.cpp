#include "qmv/fractions.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qmv/subsets.hpp"

namespace qmv {

namespace {

void check_rs(const WrongSet& w, int r, int s) {
    if (r < 1 || s < 1 || r > w.n || s > w.n)
        throw std::invalid_argument("epsilon: need 1 <= r, s <= n");
    if (w.n > 64) throw std::invalid_argument("epsilon: n > 64");
}

// Columns of W touched by rows of R, as a bitmask.
uint64_t touched_columns(const std::vector<uint64_t>& row_masks, const std::vector<int>& rows) {
    uint64_t u = 0;
    for (int r : rows) u |= row_masks[r];
    return u;
}

DomainMatrix difference_e_matrix(const DomainMatrix& a, const DomainMatrix& b,
                                 const DomainMatrix& c, const std::vector<int64_t>& p,
                                 const std::vector<int64_t>& q) {
    DomainMatrix d = mat_sub(mat_mul(a, b), c);
    const int n = d.rows();
    if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != d.cols())
        throw std::invalid_argument("zeta: vector length mismatch");
    DomainMatrix e(n, d.cols(), d.domain());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d.cols(); ++j)
            e.at(i, j) = dom_mul(dom_mul(p[i], q[j], d.domain()), d.at(i, j), d.domain());
    return e;
}

// Advances a GF(g)^len vector through all g^len values; returns false after
// the last one.
bool next_vector(std::vector<int64_t>& v, int64_t g) {
    for (auto& x : v) {
        if (++x < g) return true;
        x = 0;
    }
    return false;
}

uint64_t ipow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
        r *= base;
    }
    return r;
}

} // namespace

FractionEstimate epsilon_exact(const WrongSet& w, int r, int s, uint64_t enum_cap) {
    check_rs(w, r, s);
    const int n = w.n;
    const uint64_t count_r = binomial(n, r), count_s = binomial(n, s);
    if (count_r > enum_cap / count_s) throw std::runtime_error("epsilon_exact: enumeration cap exceeded");
    const auto row_masks = w.row_masks();
    uint64_t marked = 0;
#pragma omp parallel for schedule(static) reduction(+ : marked)
    for (int64_t rank = 0; rank < static_cast<int64_t>(count_r); ++rank) {
        auto rows = subset_unrank(n, r, static_cast<uint64_t>(rank));
        int untouched = n - std::popcount(touched_columns(row_masks, rows));
        marked += count_s - binomial(untouched, s);
    }
    FractionEstimate est;
    est.exact = true;
    est.numerator = marked;
    est.denominator = count_r * count_s;
    est.value = static_cast<double>(est.numerator) / static_cast<double>(est.denominator);
    return est;
}

FractionEstimate epsilon_exact_reference(const WrongSet& w, int r, int s, uint64_t enum_cap) {
    check_rs(w, r, s);
    const int n = w.n;
    const uint64_t count_r = binomial(n, r), count_s = binomial(n, s);
    if (count_r > enum_cap / count_s) throw std::runtime_error("epsilon_exact: enumeration cap exceeded");
    const auto row_masks = w.row_masks();
    uint64_t marked = 0;
    for (uint64_t i = 0; i < count_r; ++i) {
        auto rows = subset_unrank(n, r, i);
        uint64_t cols_touched = touched_columns(row_masks, rows);
        for (uint64_t j = 0; j < count_s; ++j) {
            auto cols = subset_unrank(n, s, j);
            if (cols_touched & subset_mask(cols)) ++marked;
        }
    }
    FractionEstimate est;
    est.exact = true;
    est.numerator = marked;
    est.denominator = count_r * count_s;
    est.value = static_cast<double>(est.numerator) / static_cast<double>(est.denominator);
    return est;
}

FractionEstimate epsilon_mc(const WrongSet& w, int r, int s, uint64_t trials, uint64_t seed) {
    check_rs(w, r, s);
    if (trials < 1) throw std::invalid_argument("epsilon_mc: trials >= 1");
    const auto row_masks = w.row_masks();
    Rng rng(seed);
    uint64_t marked = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        auto rows = random_subset(w.n, r, rng);
        auto cols = random_subset(w.n, s, rng);
        if (touched_columns(row_masks, rows) & subset_mask(cols)) ++marked;
    }
    FractionEstimate est;
    est.exact = false;
    est.trials = trials;
    est.seed = seed;
    est.value = static_cast<double>(marked) / static_cast<double>(trials);
    est.ci99_half_width = 2.576 * std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(trials));
    return est;
}

FractionEstimate zeta_exact_from_e(const DomainMatrix& e, int k, uint64_t enum_cap) {
    const int n = e.rows();
    if (e.cols() != n) throw std::invalid_argument("zeta: E must be square");
    if (k < 1 || k > n) throw std::invalid_argument("zeta: need 1 <= k <= n");
    const uint64_t count = binomial(n, k);
    if (count > enum_cap / count) throw std::runtime_error("zeta_exact: enumeration cap exceeded");
    const DomainSpec& d = e.domain();
    uint64_t revealing = 0;
#pragma omp parallel for schedule(static) reduction(+ : revealing)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
        auto rows = subset_unrank(n, k, static_cast<uint64_t>(i));
        std::vector<int64_t> colsum(n, 0);
        for (int j = 0; j < n; ++j) {
            int64_t acc = 0;
            for (int r : rows) acc = dom_add(acc, e.at(r - 1, j), d);
            colsum[j] = acc;
        }
        for (uint64_t j = 0; j < count; ++j) {
            auto cols = subset_unrank(n, k, j);
            int64_t total = 0;
            for (int c : cols) total = dom_add(total, colsum[c - 1], d);
            if (total != 0) ++revealing;
        }
    }
    FractionEstimate est;
    est.exact = true;
    est.numerator = revealing;
    est.denominator = count * count;
    est.value = static_cast<double>(est.numerator) / static_cast<double>(est.denominator);
    return est;
}

FractionEstimate zeta_exact(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                            const std::vector<int64_t>& p, const std::vector<int64_t>& q, int k,
                            uint64_t enum_cap) {
    return zeta_exact_from_e(difference_e_matrix(a, b, c, p, q), k, enum_cap);
}

RevealingProb revealing_prob_exact(const DomainMatrix& a, const DomainMatrix& b,
                                   const DomainMatrix& c, const IndexSubset& row_subset,
                                   const IndexSubset& col_subset, uint64_t enum_cap) {
    const DomainSpec& d = a.domain();
    if (!d.is_field()) throw std::invalid_argument("revealing_prob_exact: needs a finite field");
    const int n = c.rows();
    const uint64_t g = static_cast<uint64_t>(d.p);
    const uint64_t total = ipow(g, 2 * n);
    if (total > enum_cap) throw std::runtime_error("revealing_prob_exact: enumeration cap exceeded");
    DomainMatrix diff = mat_sub(mat_mul(a, b), c);

    RevealingProb rp;
    rp.denominator = total;
    rp.marked = false;
    for (int i : row_subset.members)
        for (int j : col_subset.members)
            if (diff.at(i - 1, j - 1) != 0) rp.marked = true;
    if (!rp.marked) return rp; // probability 0, flagged

    std::vector<int64_t> p(n, 0), q(n, 0);
    uint64_t revealing = 0;
    // iterate q in the outer loop so the (p-independent) column terms of the
    // sum can be grouped per row
    do {
        std::vector<int64_t> row_term(n, 0);
        for (int i : row_subset.members) {
            int64_t acc = 0;
            for (int j : col_subset.members)
                acc = dom_add(acc, dom_mul(q[j - 1], diff.at(i - 1, j - 1), d), d);
            row_term[i - 1] = acc;
        }
        std::fill(p.begin(), p.end(), 0);
        do {
            int64_t sum = 0;
            for (int i : row_subset.members) sum = dom_add(sum, dom_mul(p[i - 1], row_term[i - 1], d), d);
            if (sum != 0) ++revealing;
        } while (next_vector(p, d.p));
    } while (next_vector(q, d.p));
    rp.numerator = revealing;
    return rp;
}

double lower_bound_alpha() { return 1.0 - std::exp(-1.0); }

BoundCheck check_bound_small_set(const WrongSet& w, int r, int s, uint64_t enum_cap) {
    BoundCheck bc;
    const int n = w.n;
    if (w.empty()) {
        bc.applicable = true;
        bc.pass = true;
        return bc;
    }
    bc.applicable = (static_cast<double>(r) <= static_cast<double>(n) / w.w_rows) &&
                    (static_cast<double>(s) <= static_cast<double>(n) / w.max_row_count);
    if (!bc.applicable) return bc;
    const double alpha = lower_bound_alpha();
    bc.lhs = epsilon_exact(w, r, s, enum_cap).value;
    bc.rhs = alpha * alpha * w.size() * static_cast<double>(r) * s / (static_cast<double>(n) * n);
    bc.pass = bc.lhs >= bc.rhs;
    return bc;
}

BoundCheck check_bound_indep_set(const WrongSet& w, int r, int s, uint64_t enum_cap) {
    BoundCheck bc;
    const int n = w.n;
    if (!w.is_independent()) return bc; // not applicable
    if (w.empty()) {
        bc.applicable = true;
        bc.pass = true;
        return bc;
    }
    double rs_limit = std::pow(n, 4.0 / 3.0) / std::pow(static_cast<double>(w.size()), 2.0 / 3.0);
    bc.applicable = static_cast<double>(r) * s <= rs_limit;
    if (!bc.applicable) return bc;
    const double alpha = lower_bound_alpha();
    bc.lhs = epsilon_exact(w, r, s, enum_cap).value;
    bc.rhs = alpha * alpha * w.size() * static_cast<double>(r) * s / (static_cast<double>(n) * n);
    bc.pass = bc.lhs >= bc.rhs;
    return bc;
}

ExpProbCheck check_bound_exp_prob(int n, int t, int r, int s, uint64_t samples, uint64_t seed) {
    if (static_cast<double>(r) * s > static_cast<double>(n) * n / t)
        throw std::invalid_argument("check_bound_exp_prob: requires r s <= n^2 / t");
    if (samples < 1) throw std::invalid_argument("check_bound_exp_prob: samples >= 1");
    Rng rng(seed);
    double sum = 0.0;
    for (uint64_t i = 0; i < samples; ++i) {
        auto flat = random_subset(n * n, t, rng);
        std::vector<Cell> cells;
        cells.reserve(flat.size());
        for (int f : flat) cells.emplace_back((f - 1) / n + 1, (f - 1) % n + 1);
        sum += epsilon_exact(wrong_set_from_cells(n, std::move(cells)), r, s).value;
    }
    ExpProbCheck check;
    check.mean_epsilon = sum / static_cast<double>(samples);
    check.bound = lower_bound_alpha() * t * static_cast<double>(r) * s / (static_cast<double>(n) * n);
    check.pass = check.mean_epsilon >= check.bound;
    return check;
}

GoodVectorFraction good_vector_fraction(const DomainMatrix& a, const DomainMatrix& b,
                                        const DomainMatrix& c, int k, uint64_t enum_cap) {
    const DomainSpec& d = a.domain();
    if (!d.is_field()) throw std::invalid_argument("good_vector_fraction: needs a finite field");
    const int n = c.rows();
    const uint64_t total = ipow(static_cast<uint64_t>(d.p), 2 * n);
    if (total > enum_cap) throw std::runtime_error("good_vector_fraction: enumeration cap exceeded");

    WrongSet w = wrong_set(a, b, c);
    GoodVectorFraction gv;
    gv.denominator = total;
    if (w.empty()) {
        // the statement is conditioned on AB != C
        gv.vacuous = true;
        gv.numerator = total;
        return gv;
    }
    const double eps = epsilon_exact(w, k, k, enum_cap).value;
    DomainMatrix diff = mat_sub(mat_mul(a, b), c);
    std::vector<int64_t> p(n, 0), q(n, 0);
    uint64_t good = 0;
    do {
        std::fill(q.begin(), q.end(), 0);
        do {
            DomainMatrix e(n, n, d);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    e.at(i, j) = dom_mul(dom_mul(p[i], q[j], d), diff.at(i, j), d);
            if (zeta_exact_from_e(e, k, enum_cap).value >= eps / 8.0) ++good;
        } while (next_vector(q, d.p));
    } while (next_vector(p, d.p));
    gv.numerator = good;
    return gv;
}

double mean_revealing_fraction_over_vectors(const DomainMatrix& a, const DomainMatrix& b,
                                            const DomainMatrix& c, int k, uint64_t enum_cap) {
    const DomainSpec& d = a.domain();
    if (!d.is_field()) throw std::invalid_argument("mean_revealing_fraction: needs a finite field");
    const int n = c.rows();
    const uint64_t total = ipow(static_cast<uint64_t>(d.p), 2 * n);
    if (total > enum_cap) throw std::runtime_error("mean_revealing_fraction: enumeration cap exceeded");
    WrongSet w = wrong_set(a, b, c);
    const auto eps = epsilon_exact(w, k, k, enum_cap);
    if (eps.numerator == 0) throw std::invalid_argument("mean_revealing_fraction: no marked pairs");
    DomainMatrix diff = mat_sub(mat_mul(a, b), c);
    std::vector<int64_t> p(n, 0), q(n, 0);
    double sum = 0.0;
    do {
        std::fill(q.begin(), q.end(), 0);
        do {
            DomainMatrix e(n, n, d);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    e.at(i, j) = dom_mul(dom_mul(p[i], q[j], d), diff.at(i, j), d);
            auto zeta = zeta_exact_from_e(e, k, enum_cap);
            sum += static_cast<double>(zeta.numerator) / static_cast<double>(eps.numerator);
        } while (next_vector(q, d.p));
    } while (next_vector(p, d.p));
    return sum / static_cast<double>(total);
}

} // namespace qmv
