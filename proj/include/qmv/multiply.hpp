#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmv/domain.hpp"
#include "qmv/ledger.hpp"
#include "qmv/verify.hpp"
#include "qmv/wrong_set.hpp"

namespace qmv {

// Recursive quadrant binary search for one wrong position.  The four
// quadrant verifications of each repeat round advance round-robin at
// verify-once-call granularity and stop on the first detection; both cost
// accountings of that concurrency are reported.
struct FindWrongResult {
    bool equal = true;
    Cell position{0, 0};            // 1-based, valid when !equal
    QueryLedger ledger_sequential;  // sum over the four quadrant streams
    QueryLedger ledger_parallel;    // per-round elementwise max over streams
    std::vector<int> quadrant_trace; // chosen quadrant per level (0..3)
};

FindWrongResult find_wrong_entry(const DomainMatrix& a, const DomainMatrix& b,
                                 const DomainMatrix& c, uint64_t seed,
                                 int64_t dim_cap = kDefaultWalkDimCap);

enum class AccountingMode { sequential_sum, parallel_max };

// Iterated correction: start from C = 0, locate a wrong entry, fix it and
// sweep its row and column with the unknown-count Grover search, repeat.
struct MultiplyReport {
    DomainMatrix c;
    int iterations = 0;
    QueryLedger find_wrong;          // sequential_sum stream
    QueryLedger find_wrong_parallel; // parallel_max stream
    QueryLedger grover_rows;
    QueryLedger grover_cols;
    AccountingMode accounting_mode = AccountingMode::sequential_sum;
    bool audited = false;
    bool audit_passed = false;
    std::vector<Cell> corrections; // entries fixed via the binary search
};

MultiplyReport matrix_multiplication(const DomainMatrix& a, const DomainMatrix& b, uint64_t seed,
                                     int64_t dim_cap = kDefaultWalkDimCap, bool audit = false);

// Boolean matrices over {or, and}; the random-vector compression does not
// apply, so verification runs a two-level search instead: a Grover search
// over the n^2 cells whose inner Or of length m is modeled at sqrt(m) time
// units per oracle call.
struct BoolMatrix {
    int rows = 0, cols = 0;
    std::vector<uint8_t> v;

    BoolMatrix() = default;
    BoolMatrix(int rows, int cols) : rows(rows), cols(cols), v(static_cast<size_t>(rows) * cols, 0) {}
    uint8_t at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
    uint8_t& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    bool operator==(const BoolMatrix&) const = default;

    static BoolMatrix random(int rows, int cols, double density, Rng& rng);
};

BoolMatrix bool_mat_mul(const BoolMatrix& a, const BoolMatrix& b);

struct BoolVerifyResult {
    Verdict verdict = Verdict::equal;
    std::optional<Cell> witness; // a wrong cell, when detected
    uint64_t oracle_calls = 0;
    double model_time = 0.0; // oracle_calls * sqrt(m)
};

// Worst-case modeled running time of boolean_verify (the c n sqrt(m) shape).
double boolean_verify_cost(int n, int m);
BoolVerifyResult boolean_verify(const BoolMatrix& a, const BoolMatrix& b, const BoolMatrix& c,
                                uint64_t seed);

struct BoolMultiplyReport {
    BoolMatrix c;
    int cells_set = 0;
    uint64_t oracle_calls = 0;
    double model_time = 0.0;
};
BoolMultiplyReport boolean_multiply(const BoolMatrix& a, const BoolMatrix& b, uint64_t seed);

} // namespace qmv
