#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmv/rng.hpp"

namespace qmv {

// Scalars live in one of two integral domains: the prime field GF(p) with
// values normalized to [0, p), or the exact signed 64-bit integers where any
// overflow raises instead of wrapping.
enum class DomainKind { prime_field, integers };

struct DomainSpec {
    DomainKind kind = DomainKind::integers;
    int64_t p = 0; // prime modulus, prime_field only

    static DomainSpec gf(int64_t p);
    static DomainSpec integers() { return DomainSpec{DomainKind::integers, 0}; }
    static DomainSpec parse(const std::string& token); // "gf:7" or "int"

    bool is_field() const { return kind == DomainKind::prime_field; }
    std::string str() const;
    bool operator==(const DomainSpec&) const = default;
};

int64_t dom_normalize(int64_t v, const DomainSpec& d);
int64_t dom_add(int64_t a, int64_t b, const DomainSpec& d);
int64_t dom_sub(int64_t a, int64_t b, const DomainSpec& d);
int64_t dom_mul(int64_t a, int64_t b, const DomainSpec& d);
int64_t dom_neg(int64_t a, const DomainSpec& d);

// Uniform sample: GF(p) draws from [0, p); the integers domain draws from the
// small generation window [-99, 99] (the generators cap magnitudes far below
// 2^31 so any product at desk scale stays exact in 64 bits).
int64_t dom_random(const DomainSpec& d, Rng& rng);
int64_t dom_random_nonzero(const DomainSpec& d, Rng& rng);

// 1-based, strictly increasing subset of [1, universe].
struct IndexSubset {
    int universe = 0;
    std::vector<int> members;

    IndexSubset() = default;
    IndexSubset(int universe, std::vector<int> members);
    static IndexSubset all(int universe);
    int size() const { return static_cast<int>(members.size()); }
};

// Dense row-major matrix over a domain.  Entry access is 0-based internally;
// all subset/cell types in public interfaces stay 1-based to match the usual
// matrix notation.
class DomainMatrix {
  public:
    DomainMatrix() = default;
    DomainMatrix(int rows, int cols, DomainSpec domain);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const DomainSpec& domain() const { return domain_; }

    int64_t at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    int64_t& at(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    const std::vector<int64_t>& entries() const { return entries_; }

    bool operator==(const DomainMatrix&) const = default;

    static DomainMatrix identity(int n, DomainSpec domain);
    static DomainMatrix random(int rows, int cols, DomainSpec domain, Rng& rng);

  private:
    int rows_ = 0, cols_ = 0;
    DomainSpec domain_;
    std::vector<int64_t> entries_;
};

// Exact product; rows of A are independent so the loop parallelizes.
DomainMatrix mat_mul(const DomainMatrix& a, const DomainMatrix& b);
// Serial reference product (naive triple loop), kept as the testing oracle
// for the parallel kernel.
DomainMatrix mat_mul_reference(const DomainMatrix& a, const DomainMatrix& b);

DomainMatrix mat_sub(const DomainMatrix& a, const DomainMatrix& b);

// Sub-matrix with rows R and columns S in subset order; nullopt keeps all.
DomainMatrix restrict_matrix(const DomainMatrix& a, const std::optional<IndexSubset>& row_subset,
                             const std::optional<IndexSubset>& col_subset);

// Text format: first line "rows cols domain" with domain "gf:p" or "int",
// then one line of entries per row.
void write_matrix(std::ostream& os, const DomainMatrix& m);
DomainMatrix read_matrix(std::istream& is);
DomainMatrix read_matrix_file(const std::string& path);

} // namespace qmv
