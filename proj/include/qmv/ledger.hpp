#pragma once

#include <cstdint>

namespace qmv {

// Bit-exact model of the oracle cost accounting: queries to the entries of
// A, B, C plus abstract time units.  Distinct from simulator wall-clock.
struct QueryLedger {
    uint64_t queries_a = 0;
    uint64_t queries_b = 0;
    uint64_t queries_c = 0;
    uint64_t time_units = 0;

    QueryLedger& operator+=(const QueryLedger& o) {
        queries_a += o.queries_a;
        queries_b += o.queries_b;
        queries_c += o.queries_c;
        time_units += o.time_units;
        return *this;
    }
    bool operator==(const QueryLedger&) const = default;
};

QueryLedger ledger_max(const QueryLedger& a, const QueryLedger& b);

// Initialization of one walk run: time 2 k m + k^2 with scalar length m.
void charge_walk_init(QueryLedger& led, int k, int scalar_len);

// One walk iteration: the phase-flip scalar check costs time m and no
// queries; the diffusion update costs 2m queries to A, 2m to B, 4k to C and
// time 4m + 4k.
void charge_walk_iteration(QueryLedger& led, int k, int scalar_len);

// Verify-Full variant: the phase flip recomputes the sub-product classically
// in time k*m instead of a length-m scalar check.
void charge_walk_iteration_full(QueryLedger& led, int k, int scalar_len);

// One classical Freivalds round on C of shape n_rows x n_cols with inner
// length m: y = Bq, z = Ay, and p.z vs p.(Cq).
void charge_freivalds_round(QueryLedger& led, int n_rows, int n_cols, int scalar_len);

// Classical check of a single scalar product (the n = 1 recursion leaf).
void charge_scalar_check(QueryLedger& led, int scalar_len);

} // namespace qmv
