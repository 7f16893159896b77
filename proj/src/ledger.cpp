#include "qmv/ledger.hpp"

#include <algorithm>

namespace qmv {

QueryLedger ledger_max(const QueryLedger& a, const QueryLedger& b) {
    return QueryLedger{std::max(a.queries_a, b.queries_a), std::max(a.queries_b, b.queries_b),
                       std::max(a.queries_c, b.queries_c), std::max(a.time_units, b.time_units)};
}

void charge_walk_init(QueryLedger& led, int k, int scalar_len) {
    led.time_units += 2ULL * k * scalar_len + static_cast<uint64_t>(k) * k;
}

void charge_walk_iteration(QueryLedger& led, int k, int scalar_len) {
    const uint64_t m = static_cast<uint64_t>(scalar_len);
    led.queries_a += 2 * m;
    led.queries_b += 2 * m;
    led.queries_c += 4ULL * k;
    led.time_units += m + 4 * m + 4ULL * k; // scalar check + diffusion update
}

void charge_walk_iteration_full(QueryLedger& led, int k, int scalar_len) {
    const uint64_t m = static_cast<uint64_t>(scalar_len);
    led.queries_a += 2 * m;
    led.queries_b += 2 * m;
    led.queries_c += 4ULL * k;
    led.time_units += static_cast<uint64_t>(k) * m + 4 * m + 4ULL * k; // sub-product recompute
}

void charge_freivalds_round(QueryLedger& led, int n_rows, int n_cols, int scalar_len) {
    const uint64_t nr = static_cast<uint64_t>(n_rows), nc = static_cast<uint64_t>(n_cols);
    const uint64_t m = static_cast<uint64_t>(scalar_len);
    led.queries_a += nr * m;
    led.queries_b += m * nc;
    led.queries_c += nr * nc;
    led.time_units += m * nc + nr * m + nr * nc + 2 * nr;
}

void charge_scalar_check(QueryLedger& led, int scalar_len) {
    const uint64_t m = static_cast<uint64_t>(scalar_len);
    led.queries_a += m;
    led.queries_b += m;
    led.queries_c += 1;
    led.time_units += m;
}

} // namespace qmv
