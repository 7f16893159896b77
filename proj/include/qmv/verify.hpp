#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qmv/domain.hpp"
#include "qmv/ledger.hpp"
#include "qmv/walk.hpp"
#include "qmv/wrong_set.hpp"

namespace qmv {

// Per-call success probabilities below this are treated as zero; the
// one-sided case produces only rounding noise orders of magnitude smaller.
inline constexpr double kProbZeroTol = 1e-12;

enum class VerifyMode { exact_prob, sampled };
enum class Verdict { equal, not_equal };

// The k-schedule of Product Verification: k_i = min(ceil(2 lambda^i), n-1)
// for i = 0 .. ceil(log_lambda(n^{2/3})) + 9, sixteen repetitions each.
struct VerifySchedule {
    double lambda = 15.0 / 14.0;
    int reps = 16;
    double k_multiplier = 2.0; // cube root of 8, rounded up at evaluation

    int i_max(int n) const;
    int k_at(int i, int n) const; // 0 when no valid k exists (n < 2)
};

struct VerifyOnceResult {
    int result = 0;      // sampled-mode coin, or prob > tol in exact mode
    double prob = 0.0;   // success probability (exact) or the per-ell prob used
    int sampled_ell = 0; // 0 in exact mode
    QueryLedger ledger;
};

struct TranscriptRow {
    int i = 0; // schedule index; -1 for the fallback round
    int k = 0;
    int rep = 0;
    int sampled_ell = 0;
    double prob = 0.0;
    int result = 0;
};

struct VerifyOutcome {
    Verdict verdict = Verdict::equal;
    QueryLedger ledger;
    std::vector<TranscriptRow> transcript;
    VerifyMode mode = VerifyMode::sampled;
    uint64_t seed = 0;
    int terminating_k = 0; // k of the detecting call; n for the fallback round
};

// Shared walk-space registry; spaces are immutable and reused across calls.
std::shared_ptr<const WalkSpace> walk_space_cached(const JohnsonGraph& left,
                                                   const JohnsonGraph& right,
                                                   int64_t dim_cap = kDefaultWalkDimCap);

// Marks (R,S) iff the difference matrix D = AB - C is nonzero somewhere on
// R x S.
MarkedSet marked_from_difference(const WalkSpace& space, const DomainMatrix& diff);
// Marks (R,S) iff sum of E over R x S is nonzero, E_ij = p_i q_j D_ij.
MarkedSet marked_from_e(const WalkSpace& space, const DomainMatrix& e);

// Random vectors of the revealing test.  Fields draw uniformly from GF(p);
// the integers domain draws from {0,1} (the classical Freivalds choice).
std::vector<int64_t> random_test_vector(int len, const DomainSpec& d, Rng& rng);

// One run of the k-row walk test with fresh random p, q.  Exact mode returns
// the exact success probability averaged over ell in {1..k} and charges the
// ledger with ceil((k+1)/2) iterations; sampled mode draws ell and a coin.
VerifyOnceResult verify_once(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                             int k, uint64_t seed, VerifyMode mode,
                             int64_t dim_cap = kDefaultWalkDimCap);

// Variant that reads whole sub-matrices instead of compressing with p, q:
// same queries, phase-flip time k*m.
VerifyOnceResult verify_full(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                             int k, uint64_t seed, VerifyMode mode,
                             int64_t dim_cap = kDefaultWalkDimCap);

// Resumable schedule execution: one step() runs exactly one verify-once call
// (or one fallback Freivalds round).  Used directly by the quadrant
// interleaving of the wrong-entry search; product_verification is the
// straight-through loop over it.
class VerificationRun {
  public:
    VerificationRun(DomainMatrix a, DomainMatrix b, DomainMatrix c, uint64_t seed,
                    VerifyMode mode, int64_t dim_cap = kDefaultWalkDimCap);
    ~VerificationRun();
    VerificationRun(VerificationRun&&) noexcept;

    bool step(); // returns false once finished (detection or schedule end)
    bool finished() const;
    bool detected() const;
    const QueryLedger& ledger() const;
    VerifyOutcome take_outcome();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Full verification schedule, one-sided: "not_equal" is only ever returned
// on a detection, which cannot happen when AB = C.  Appends one fallback
// round of 16 classical Freivalds tests so tiny n keeps the 2/3 guarantee
// (the walk itself caps k at n - 1).
VerifyOutcome product_verification(const DomainMatrix& a, const DomainMatrix& b,
                                   const DomainMatrix& c, uint64_t seed, VerifyMode mode,
                                   int64_t dim_cap = kDefaultWalkDimCap);
// Rectangular variant: A is n x m, B is m x n, only the scalar lengths
// change.  m = n reproduces product_verification exactly.
VerifyOutcome product_verification_rect(const DomainMatrix& a, const DomainMatrix& b,
                                        const DomainMatrix& c, uint64_t seed, VerifyMode mode,
                                        int64_t dim_cap = kDefaultWalkDimCap);

// Classical baseline: p (A (B q)) vs p (C q) per round, one-sided.
struct FreivaldsResult {
    Verdict verdict = Verdict::equal;
    std::vector<uint8_t> per_round; // detection flags
    QueryLedger ledger;
};
FreivaldsResult freivalds(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                          int rounds, uint64_t seed);

// Exact per-round detection probability of the Freivalds test over GF(p):
// (1 - p^{-rank(D)}) (1 - 1/p) with D = AB - C.
double freivalds_detection_prob(const DomainMatrix& a, const DomainMatrix& b,
                                const DomainMatrix& c);

int64_t walk_dim_cap_from_env(); // QMV_MAX_WALK_DIM override, else default

} // namespace qmv
