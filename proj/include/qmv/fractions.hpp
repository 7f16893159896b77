#pragma once

#include <cstdint>
#include <vector>

#include "qmv/domain.hpp"
#include "qmv/wrong_set.hpp"

namespace qmv {

// Fraction of marked / revealing pairs, exact (counted) or Monte-Carlo.
struct FractionEstimate {
    double value = 0.0;
    bool exact = true;
    uint64_t numerator = 0;   // exact mode
    uint64_t denominator = 1; // exact mode
    uint64_t trials = 0;      // Monte-Carlo mode
    uint64_t seed = 0;
    double ci99_half_width = 0.0; // Monte-Carlo, normal approximation
};

inline constexpr uint64_t kDefaultEnumCap = 10'000'000;

// Exact fraction of pairs (R,S), |R| = r, |S| = s, with W /\ (R x S)
// nonempty.  Counts marked R-sides combinatorially: for each R the number of
// non-marked S is C(n - |cols(W,R)|, s).  Partitioned over R-rank ranges.
FractionEstimate epsilon_exact(const WrongSet& w, int r, int s,
                               uint64_t enum_cap = kDefaultEnumCap);
// Serial double-enumeration reference (explicit subset pairs), kept as the
// testing oracle for the counting path.
FractionEstimate epsilon_exact_reference(const WrongSet& w, int r, int s,
                                         uint64_t enum_cap = kDefaultEnumCap);

FractionEstimate epsilon_mc(const WrongSet& w, int r, int s, uint64_t trials, uint64_t seed);

// E_ij = p_i q_j D_ij with D = AB - C; (R,S) is revealing iff the sum of E
// over R x S is nonzero.  Exact enumeration over all (R,S) with |R|=|S|=k.
FractionEstimate zeta_exact(const DomainMatrix& a, const DomainMatrix& b, const DomainMatrix& c,
                            const std::vector<int64_t>& p, const std::vector<int64_t>& q, int k,
                            uint64_t enum_cap = kDefaultEnumCap);
// Same, from a precomputed E matrix (n x n over d).
FractionEstimate zeta_exact_from_e(const DomainMatrix& e, int k,
                                   uint64_t enum_cap = kDefaultEnumCap);

// Exact probability over all (p, q) in GF(g)^n x GF(g)^n that the fixed pair
// (R, S) is revealing.  Flagged when (R,S) is not even marked.
struct RevealingProb {
    uint64_t numerator = 0;
    uint64_t denominator = 1;
    bool marked = true;
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};
RevealingProb revealing_prob_exact(const DomainMatrix& a, const DomainMatrix& b,
                                   const DomainMatrix& c, const IndexSubset& row_subset,
                                   const IndexSubset& col_subset, uint64_t enum_cap = kDefaultEnumCap);

// alpha = 1 - 1/e, the constant the proofs put in front of r w / n terms.
double lower_bound_alpha();

struct BoundCheck {
    bool applicable = false;
    double lhs = 0.0; // epsilon
    double rhs = 0.0; // bound
    bool pass = false;
};

// epsilon >= alpha^2 |W| r s / n^2, applicable for r <= n / w_rows and
// s <= n / max_row_count.
BoundCheck check_bound_small_set(const WrongSet& w, int r, int s,
                                 uint64_t enum_cap = kDefaultEnumCap);
// Same bound for independent W with r s <= n^{4/3} / |W|^{2/3}.
BoundCheck check_bound_indep_set(const WrongSet& w, int r, int s,
                                 uint64_t enum_cap = kDefaultEnumCap);

// Mean of epsilon over sampled uniform W with |W| = t; pass iff the mean is
// >= alpha t r s / n^2.  Requires r s <= n^2 / t.
struct ExpProbCheck {
    double mean_epsilon = 0.0;
    double bound = 0.0;
    bool pass = false;
};
ExpProbCheck check_bound_exp_prob(int n, int t, int r, int s, uint64_t samples, uint64_t seed);

// Exact fraction of (p, q) pairs with zeta_{p,q}(W,k) >= epsilon(W,k) / 8.
// Vacuous (returns 1, flagged) when AB = C.
struct GoodVectorFraction {
    uint64_t numerator = 0;
    uint64_t denominator = 1;
    bool vacuous = false; // no wrong entries
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};
GoodVectorFraction good_vector_fraction(const DomainMatrix& a, const DomainMatrix& b,
                                        const DomainMatrix& c, int k,
                                        uint64_t enum_cap = kDefaultEnumCap);

// Mean over all (p,q) of the fraction of marked pairs that are revealing.
// Test helper for the averaging step of the good-vector argument.
double mean_revealing_fraction_over_vectors(const DomainMatrix& a, const DomainMatrix& b,
                                            const DomainMatrix& c, int k,
                                            uint64_t enum_cap = kDefaultEnumCap);

} // namespace qmv
