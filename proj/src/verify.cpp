#include "qmv/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace qmv {

namespace {

struct VerifyContext {
    const DomainMatrix* a;
    const DomainMatrix* b;
    const DomainMatrix* c;
    DomainMatrix diff; // AB - C, simulator preprocessing only
    int n_rows, n_cols, scalar_len;
    int64_t dim_cap;
};

VerifyContext make_context(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                           int64_t dim_cap) {
    if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
        throw std::invalid_argument("verify: dimensions do not form a product shape");
    VerifyContext ctx{&a, &b, &c, mat_sub(mat_mul(a, b), c), c.rows(), c.cols(), a.cols(), dim_cap};
    return ctx;
}

DomainMatrix e_matrix(const DomainMatrix& diff, const std::vector<int64_t>& p,
                      const std::vector<int64_t>& q) {
    const DomainSpec& d = diff.domain();
    DomainMatrix e(diff.rows(), diff.cols(), d);
    for (int i = 0; i < diff.rows(); ++i)
        for (int j = 0; j < diff.cols(); ++j)
            e.at(i, j) = dom_mul(dom_mul(p[i], q[j], d), diff.at(i, j), d);
    return e;
}

int exact_mode_ell_charge(int k) { return (k + 2) / 2; } // ceil((k+1)/2)

// Core of verify_once / verify_full; `revealing` selects the predicate.
VerifyOnceResult run_once(const VerifyContext& ctx, int k, uint64_t seed, VerifyMode mode,
                          bool revealing) {
    const int n_min = std::min(ctx.n_rows, ctx.n_cols);
    if (k < 1 || k > n_min - 1) throw std::invalid_argument("verify: need 1 <= k <= n-1");
    Rng rng(seed);
    auto space = walk_space_cached(JohnsonGraph(ctx.n_rows, k), JohnsonGraph(ctx.n_cols, k),
                                   ctx.dim_cap);
    MarkedSet marked;
    if (revealing) {
        auto p = random_test_vector(ctx.n_rows, ctx.diff.domain(), rng);
        auto q = random_test_vector(ctx.n_cols, ctx.diff.domain(), rng);
        marked = marked_from_e(*space, e_matrix(ctx.diff, p, q));
    } else {
        marked = marked_from_difference(*space, ctx.diff);
    }

    VerifyOnceResult res;
    charge_walk_init(res.ledger, k, ctx.scalar_len);
    auto charge_iters = [&](int iters) {
        for (int i = 0; i < iters; ++i) {
            if (revealing)
                charge_walk_iteration(res.ledger, k, ctx.scalar_len);
            else
                charge_walk_iteration_full(res.ledger, k, ctx.scalar_len);
        }
    };
    if (mode == VerifyMode::exact_prob) {
        res.prob = verify_once_success(*space, marked, k).average;
        res.result = res.prob > kProbZeroTol ? 1 : 0;
        charge_iters(exact_mode_ell_charge(k));
    } else {
        res.sampled_ell = 1 + static_cast<int>(rng.uniform_u64(static_cast<uint64_t>(k)));
        res.prob = run_verification_walk(*space, marked, res.sampled_ell);
        res.result = rng.bernoulli(res.prob) ? 1 : 0;
        charge_iters(res.sampled_ell);
    }
    return res;
}

// One Freivalds round; returns the detection flag for the drawn vectors.
int freivalds_round(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                    Rng& rng, QueryLedger& led) {
    const DomainSpec& d = a.domain();
    const int n_rows = c.rows(), n_cols = c.cols(), m = a.cols();
    auto p = random_test_vector(n_rows, d, rng);
    auto q = random_test_vector(n_cols, d, rng);
    // y = B q
    std::vector<int64_t> y(m, 0);
    for (int i = 0; i < m; ++i) {
        int64_t acc = 0;
        for (int j = 0; j < n_cols; ++j) acc = dom_add(acc, dom_mul(b.at(i, j), q[j], d), d);
        y[i] = acc;
    }
    // u = p . (A y), v = p . (C q)
    int64_t u = 0, v = 0;
    for (int i = 0; i < n_rows; ++i) {
        int64_t zi = 0;
        for (int t = 0; t < m; ++t) zi = dom_add(zi, dom_mul(a.at(i, t), y[t], d), d);
        u = dom_add(u, dom_mul(p[i], zi, d), d);
        int64_t ci = 0;
        for (int j = 0; j < n_cols; ++j) ci = dom_add(ci, dom_mul(c.at(i, j), q[j], d), d);
        v = dom_add(v, dom_mul(p[i], ci, d), d);
    }
    charge_freivalds_round(led, n_rows, n_cols, m);
    return u != v ? 1 : 0;
}

} // namespace

struct VerificationRun::Impl {
    DomainMatrix a, b, c;
    VerifyContext ctx;
    VerifySchedule sched;
    int n_sched, n_min;
    VerifyMode mode;
    uint64_t seed;
    VerifyOutcome out;
    // schedule cursor
    int i = 0, rep = 0;
    bool in_fallback = false;
    int fallback_rep = 0;
    Rng fallback_rng{0};
    bool done = false;

    Impl(DomainMatrix a_in, DomainMatrix b_in, DomainMatrix c_in, uint64_t seed_in,
         VerifyMode mode_in, int64_t dim_cap)
        : a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)),
          ctx(make_context(a, b, c, dim_cap)), n_sched(std::max(ctx.n_rows, ctx.n_cols)),
          n_min(std::min(ctx.n_rows, ctx.n_cols)), mode(mode_in), seed(seed_in),
          fallback_rng(derive_seed(seed_in, {0xf0f0f0f0ULL})) {
        out.mode = mode;
        out.seed = seed;
        skip_invalid();
    }

    // Skip schedule rows with no valid k (n < 2); land on fallback when the
    // schedule is exhausted.
    void skip_invalid() {
        while (!in_fallback && (i > sched.i_max(n_sched) || sched.k_at(i, n_min) < 1)) {
            if (i > sched.i_max(n_sched)) {
                in_fallback = true;
            } else {
                ++i;
            }
        }
    }

    bool step() {
        if (done) return false;
        if (!in_fallback) {
            const int k = sched.k_at(i, n_min);
            auto res = run_once(ctx, k,
                                derive_seed(seed, {static_cast<uint64_t>(i), static_cast<uint64_t>(rep)}),
                                mode, /*revealing=*/true);
            out.ledger += res.ledger;
            out.transcript.push_back({i, k, rep, res.sampled_ell, res.prob, res.result});
            if (res.result) {
                out.verdict = Verdict::not_equal;
                out.terminating_k = k;
                done = true;
                return false;
            }
            if (++rep >= sched.reps) {
                rep = 0;
                ++i;
                skip_invalid();
            }
            return true;
        }
        // Small-n fallback: the walk caps k at n-1, so finish with the k = n
        // limit of the revealing test (classical Freivalds), 16 rounds.
        if (fallback_rep >= sched.reps) {
            out.verdict = Verdict::equal;
            done = true;
            return false;
        }
        int det = freivalds_round(a, b, c, fallback_rng, out.ledger);
        out.transcript.push_back({-1, n_min, fallback_rep, 0, static_cast<double>(det), det});
        ++fallback_rep;
        if (det) {
            out.verdict = Verdict::not_equal;
            out.terminating_k = n_min;
            done = true;
            return false;
        }
        if (fallback_rep >= sched.reps) {
            out.verdict = Verdict::equal;
            done = true;
            return false;
        }
        return true;
    }
};

VerificationRun::VerificationRun(DomainMatrix a, DomainMatrix b, DomainMatrix c, uint64_t seed,
                                 VerifyMode mode, int64_t dim_cap)
    : impl_(std::make_unique<Impl>(std::move(a), std::move(b), std::move(c), seed, mode, dim_cap)) {}
VerificationRun::~VerificationRun() = default;
VerificationRun::VerificationRun(VerificationRun&&) noexcept = default;

bool VerificationRun::step() { return impl_->step(); }
bool VerificationRun::finished() const { return impl_->done; }
bool VerificationRun::detected() const { return impl_->out.verdict == Verdict::not_equal; }
const QueryLedger& VerificationRun::ledger() const { return impl_->out.ledger; }
VerifyOutcome VerificationRun::take_outcome() { return std::move(impl_->out); }

namespace {

VerifyOutcome run_schedule(DomainMatrix a, DomainMatrix b, DomainMatrix c, uint64_t seed,
                           VerifyMode mode, int64_t dim_cap) {
    VerificationRun run(std::move(a), std::move(b), std::move(c), seed, mode, dim_cap);
    while (run.step()) {
    }
    return run.take_outcome();
}

} // namespace

int VerifySchedule::i_max(int n) const {
    if (n < 1) throw std::invalid_argument("schedule: n >= 1");
    double l = std::log(std::pow(static_cast<double>(n), 2.0 / 3.0)) / std::log(lambda);
    return static_cast<int>(std::ceil(l - 1e-9)) + 9;
}

int VerifySchedule::k_at(int i, int n) const {
    int k = static_cast<int>(std::ceil(k_multiplier * std::pow(lambda, i) - 1e-9));
    return std::min(k, n - 1);
}

std::shared_ptr<const WalkSpace> walk_space_cached(const JohnsonGraph& left,
                                                   const JohnsonGraph& right, int64_t dim_cap) {
    using Key = std::tuple<int, int, int, int>;
    static std::map<Key, std::shared_ptr<const WalkSpace>> cache;
    static std::mutex mutex;
    Key key{left.n, left.k, right.n, right.k};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) {
            if (it->second->dim > dim_cap)
                throw std::runtime_error("WalkSpace: dimension cap exceeded (|X|^2 > cap)");
            return it->second;
        }
    }
    auto space = WalkSpace::create(left, right, dim_cap);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, space);
    return space;
}

MarkedSet marked_from_difference(const WalkSpace& space, const DomainMatrix& diff) {
    if (diff.rows() != space.left.n || diff.cols() != space.right.n)
        throw std::invalid_argument("marked_from_difference: shape mismatch");
    if (diff.cols() > 64) throw std::invalid_argument("marked_from_difference: n > 64");
    std::vector<uint64_t> row_mask(static_cast<size_t>(diff.rows()), 0);
    for (int i = 0; i < diff.rows(); ++i)
        for (int j = 0; j < diff.cols(); ++j)
            if (diff.at(i, j) != 0) row_mask[i] |= 1ULL << j;

    const int kl = space.left.k, kr = space.right.k;
    std::vector<uint64_t> left_union(static_cast<size_t>(space.nv_left), 0);
    for (int u = 0; u < space.nv_left; ++u) {
        uint64_t m = 0;
        for (int t = 0; t < kl; ++t) m |= row_mask[space.left_subsets[static_cast<size_t>(u) * kl + t] - 1];
        left_union[u] = m;
    }
    std::vector<uint64_t> right_mask(static_cast<size_t>(space.nv_right), 0);
    for (int v = 0; v < space.nv_right; ++v) {
        uint64_t m = 0;
        for (int t = 0; t < kr; ++t) m |= 1ULL << (space.right_subsets[static_cast<size_t>(v) * kr + t] - 1);
        right_mask[v] = m;
    }
    MarkedSet marked(static_cast<size_t>(space.num_vertices), 0);
    for (int u = 0; u < space.nv_left; ++u)
        for (int v = 0; v < space.nv_right; ++v)
            marked[static_cast<size_t>(space.vertex_id(u, v))] = (left_union[u] & right_mask[v]) ? 1 : 0;
    return marked;
}

MarkedSet marked_from_e(const WalkSpace& space, const DomainMatrix& e) {
    if (e.rows() != space.left.n || e.cols() != space.right.n)
        throw std::invalid_argument("marked_from_e: shape mismatch");
    const DomainSpec& d = e.domain();
    const int kl = space.left.k, kr = space.right.k, nc = e.cols();
    // column sums of E over the rows of each left subset
    std::vector<int64_t> colsum(static_cast<size_t>(space.nv_left) * nc);
    for (int u = 0; u < space.nv_left; ++u)
        for (int j = 0; j < nc; ++j) {
            int64_t acc = 0;
            for (int t = 0; t < kl; ++t)
                acc = dom_add(acc, e.at(space.left_subsets[static_cast<size_t>(u) * kl + t] - 1, j), d);
            colsum[static_cast<size_t>(u) * nc + j] = acc;
        }
    MarkedSet marked(static_cast<size_t>(space.num_vertices), 0);
    for (int u = 0; u < space.nv_left; ++u)
        for (int v = 0; v < space.nv_right; ++v) {
            int64_t acc = 0;
            for (int t = 0; t < kr; ++t)
                acc = dom_add(acc,
                              colsum[static_cast<size_t>(u) * nc +
                                     space.right_subsets[static_cast<size_t>(v) * kr + t] - 1],
                              d);
            marked[static_cast<size_t>(space.vertex_id(u, v))] = acc != 0 ? 1 : 0;
        }
    return marked;
}

std::vector<int64_t> random_test_vector(int len, const DomainSpec& d, Rng& rng) {
    std::vector<int64_t> v(static_cast<size_t>(len));
    for (auto& x : v)
        x = d.is_field() ? static_cast<int64_t>(rng.uniform_u64(static_cast<uint64_t>(d.p)))
                         : static_cast<int64_t>(rng.uniform_u64(2));
    return v;
}

VerifyOnceResult verify_once(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                             int k, uint64_t seed, VerifyMode mode, int64_t dim_cap) {
    return run_once(make_context(a, b, c, dim_cap), k, seed, mode, /*revealing=*/true);
}

VerifyOnceResult verify_full(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                             int k, uint64_t seed, VerifyMode mode, int64_t dim_cap) {
    return run_once(make_context(a, b, c, dim_cap), k, seed, mode, /*revealing=*/false);
}

VerifyOutcome product_verification(const DomainMatrix& a, const DomainMatrix& b,
                                   const DomainMatrix& c, uint64_t seed, VerifyMode mode,
                                   int64_t dim_cap) {
    if (c.rows() != c.cols())
        throw std::invalid_argument("product_verification: C must be square");
    return run_schedule(a, b, c, seed, mode, dim_cap);
}

VerifyOutcome product_verification_rect(const DomainMatrix& a, const DomainMatrix& b,
                                        const DomainMatrix& c, uint64_t seed, VerifyMode mode,
                                        int64_t dim_cap) {
    return run_schedule(a, b, c, seed, mode, dim_cap);
}

FreivaldsResult freivalds(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                          int rounds, uint64_t seed) {
    if (rounds < 1) throw std::invalid_argument("freivalds: rounds >= 1");
    if (a.cols() != b.rows() || a.rows() != c.rows() || b.cols() != c.cols())
        throw std::invalid_argument("freivalds: dimensions do not form a product shape");
    FreivaldsResult res;
    Rng rng(seed);
    for (int r = 0; r < rounds; ++r) {
        int det = freivalds_round(a, b, c, rng, res.ledger);
        res.per_round.push_back(static_cast<uint8_t>(det));
        if (det) res.verdict = Verdict::not_equal;
    }
    return res;
}

double freivalds_detection_prob(const DomainMatrix& a, const DomainMatrix& b,
                                const DomainMatrix& c) {
    const DomainSpec& d = a.domain();
    if (!d.is_field()) throw std::invalid_argument("freivalds_detection_prob: needs a finite field");
    DomainMatrix diff = mat_sub(mat_mul(a, b), c);
    // rank of D over GF(p) by Gaussian elimination
    const int rows = diff.rows(), cols = diff.cols();
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (diff.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(diff.at(rank, j), diff.at(pivot, j));
        // scale pivot row to 1 via Fermat inverse
        int64_t inv = 1, base = diff.at(rank, col), e = d.p - 2;
        while (e) {
            if (e & 1) inv = (inv * base) % d.p;
            base = (base * base) % d.p;
            e >>= 1;
        }
        for (int j = 0; j < cols; ++j) diff.at(rank, j) = (diff.at(rank, j) * inv) % d.p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || diff.at(r, col) == 0) continue;
            int64_t f = diff.at(r, col);
            for (int j = 0; j < cols; ++j)
                diff.at(r, j) = dom_sub(diff.at(r, j), dom_mul(f, diff.at(rank, j), d), d);
        }
        ++rank;
    }
    if (rank == 0) return 0.0;
    const double g = static_cast<double>(d.p);
    return (1.0 - std::pow(g, -rank)) * (1.0 - 1.0 / g);
}

int64_t walk_dim_cap_from_env() {
    if (const char* env = std::getenv("QMV_MAX_WALK_DIM")) {
        int64_t v = std::atoll(env);
        if (v > 0) return v;
    }
    return kDefaultWalkDimCap;
}

} // namespace qmv
