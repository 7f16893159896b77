#include "qmv/domain.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qmv {

namespace {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer domain: addition overflow");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer domain: multiplication overflow");
    return r;
}

} // namespace

DomainSpec DomainSpec::gf(int64_t p) {
    if (p >= (int64_t{1} << 31)) throw std::invalid_argument("prime modulus must be < 2^31");
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
    return DomainSpec{DomainKind::prime_field, p};
}

DomainSpec DomainSpec::parse(const std::string& token) {
    if (token == "int") return integers();
    if (token.rfind("gf:", 0) == 0) return gf(std::stoll(token.substr(3)));
    throw std::invalid_argument("unknown domain '" + token + "' (expected gf:p or int)");
}

std::string DomainSpec::str() const {
    return is_field() ? "gf:" + std::to_string(p) : "int";
}

int64_t dom_normalize(int64_t v, const DomainSpec& d) {
    if (!d.is_field()) return v;
    int64_t r = v % d.p;
    return r < 0 ? r + d.p : r;
}

int64_t dom_add(int64_t a, int64_t b, const DomainSpec& d) {
    if (d.is_field()) {
        int64_t r = a + b;
        return r >= d.p ? r - d.p : r;
    }
    return checked_add(a, b);
}

int64_t dom_sub(int64_t a, int64_t b, const DomainSpec& d) {
    if (d.is_field()) {
        int64_t r = a - b;
        return r < 0 ? r + d.p : r;
    }
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer domain: subtraction overflow");
    return r;
}

int64_t dom_mul(int64_t a, int64_t b, const DomainSpec& d) {
    if (d.is_field()) return (a * b) % d.p; // a, b in [0, p), p < 2^31: product fits
    return checked_mul(a, b);
}

int64_t dom_neg(int64_t a, const DomainSpec& d) {
    if (d.is_field()) return a == 0 ? 0 : d.p - a;
    if (a == INT64_MIN) throw std::overflow_error("integer domain: negation overflow");
    return -a;
}

int64_t dom_random(const DomainSpec& d, Rng& rng) {
    if (d.is_field()) return static_cast<int64_t>(rng.uniform_u64(static_cast<uint64_t>(d.p)));
    return rng.uniform_int(-99, 99);
}

int64_t dom_random_nonzero(const DomainSpec& d, Rng& rng) {
    if (d.is_field()) return 1 + static_cast<int64_t>(rng.uniform_u64(static_cast<uint64_t>(d.p - 1)));
    int64_t v = rng.uniform_int(1, 99);
    return rng.bernoulli(0.5) ? v : -v;
}

IndexSubset::IndexSubset(int universe, std::vector<int> members_in)
    : universe(universe), members(std::move(members_in)) {
    int prev = 0;
    for (int e : members) {
        if (e <= prev || e > universe)
            throw std::invalid_argument("IndexSubset: members must be strictly increasing in [1, n]");
        prev = e;
    }
}

IndexSubset IndexSubset::all(int universe) {
    std::vector<int> m(universe);
    for (int i = 0; i < universe; ++i) m[i] = i + 1;
    return IndexSubset(universe, std::move(m));
}

DomainMatrix::DomainMatrix(int rows, int cols, DomainSpec domain)
    : rows_(rows), cols_(cols), domain_(domain),
      entries_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
}

DomainMatrix DomainMatrix::identity(int n, DomainSpec domain) {
    DomainMatrix m(n, n, domain);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DomainMatrix DomainMatrix::random(int rows, int cols, DomainSpec domain, Rng& rng) {
    DomainMatrix m(rows, cols, domain);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = dom_random(domain, rng);
    return m;
}

DomainMatrix mat_mul(const DomainMatrix& a, const DomainMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimensions differ");
    if (!(a.domain() == b.domain())) throw std::invalid_argument("mat_mul: domains differ");
    const DomainSpec& d = a.domain();
    const int n = a.rows(), m = a.cols(), l = b.cols();
    DomainMatrix c(n, l, d);
    if (d.is_field()) {
        const int64_t p = d.p;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < l; ++j) {
                int64_t acc = 0;
                for (int k = 0; k < m; ++k) acc = (acc + a.at(i, k) * b.at(k, j)) % p;
                c.at(i, j) = acc;
            }
    } else {
        // Checked arithmetic may throw; collect the first failure outside the loop.
        bool overflow = false;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            try {
                for (int j = 0; j < l; ++j) {
                    int64_t acc = 0;
                    for (int k = 0; k < m; ++k) acc = dom_add(acc, dom_mul(a.at(i, k), b.at(k, j), d), d);
                    c.at(i, j) = acc;
                }
            } catch (const std::overflow_error&) {
#pragma omp atomic write
                overflow = true;
            }
        }
        if (overflow) throw std::overflow_error("integer domain: matrix product overflow");
    }
    return c;
}

DomainMatrix mat_mul_reference(const DomainMatrix& a, const DomainMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimensions differ");
    if (!(a.domain() == b.domain())) throw std::invalid_argument("mat_mul: domains differ");
    const DomainSpec& d = a.domain();
    DomainMatrix c(a.rows(), b.cols(), d);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            int64_t acc = 0;
            for (int k = 0; k < a.cols(); ++k)
                acc = dom_add(acc, dom_mul(a.at(i, k), b.at(k, j), d), d);
            c.at(i, j) = acc;
        }
    return c;
}

DomainMatrix mat_sub(const DomainMatrix& a, const DomainMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.domain() == b.domain()))
        throw std::invalid_argument("mat_sub: shape or domain mismatch");
    DomainMatrix c(a.rows(), a.cols(), a.domain());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = dom_sub(a.at(i, j), b.at(i, j), a.domain());
    return c;
}

DomainMatrix restrict_matrix(const DomainMatrix& a, const std::optional<IndexSubset>& row_subset,
                             const std::optional<IndexSubset>& col_subset) {
    const IndexSubset rows = row_subset.value_or(IndexSubset::all(a.rows()));
    const IndexSubset cols = col_subset.value_or(IndexSubset::all(a.cols()));
    if (rows.universe != a.rows() || cols.universe != a.cols())
        throw std::invalid_argument("restrict_matrix: subset universe does not match matrix shape");
    DomainMatrix r(rows.size(), cols.size(), a.domain());
    for (int i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols.size(); ++j)
            r.at(i, j) = a.at(rows.members[i] - 1, cols.members[j] - 1);
    return r;
}

void write_matrix(std::ostream& os, const DomainMatrix& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << m.domain().str() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j);
        os << '\n';
    }
}

DomainMatrix read_matrix(std::istream& is) {
    int rows, cols;
    std::string domain_token;
    if (!(is >> rows >> cols >> domain_token)) throw std::invalid_argument("matrix header parse error");
    DomainMatrix m(rows, cols, DomainSpec::parse(domain_token));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int64_t v;
            if (!(is >> v)) throw std::invalid_argument("matrix entry parse error");
            m.at(i, j) = dom_normalize(v, m.domain());
        }
    return m;
}

DomainMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file " + path);
    return read_matrix(in);
}

} // namespace qmv
