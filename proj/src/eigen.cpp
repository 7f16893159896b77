#include "qmv/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmv {

namespace {

double pythag(double a, double b) {
    double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

// Householder reduction to tridiagonal form, eigenvalues-only variant.
// On exit d holds the diagonal and e the subdiagonal (e[0] unused).
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
}

// Implicit-shift QL on a tridiagonal matrix; d/e as from householder_tridiag.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, int n) {
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tridiag_ql: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n == 0) return {};
    if (static_cast<size_t>(n) * n != a.size())
        throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
    std::vector<double> d(n), e(n);
    if (n == 1) {
        d[0] = a[0];
    } else {
        householder_tridiag(a, n, d, e);
        tridiag_ql(d, e, n);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> symmetric_eigenvalues_jacobi(std::vector<double> a, int n) {
    if (static_cast<size_t>(n) * n != a.size())
        throw std::invalid_argument("symmetric_eigenvalues_jacobi: size mismatch");
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(at(p, q)) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double apq = at(p, q);
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = akp - s * (akq + tau * akp);
                    at(k, q) = at(q, k) = akq + s * (akp - tau * akq);
                }
            }
    }
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
    std::sort(d.begin(), d.end());
    return d;
}

double johnson_gap_formula(int n, int k) {
    if (k < 1 || k >= n) throw std::invalid_argument("johnson_gap_formula: need 1 <= k < n");
    return static_cast<double>(n) / (static_cast<double>(n - k) * k);
}

Spectrum spectral_gap_eig(const AdjGraph& g, int vertex_cap) {
    if (g.vertex_count() > vertex_cap) throw std::runtime_error("spectral_gap_eig: vertex cap exceeded");
    if (g.vertex_count() < 2) throw std::invalid_argument("spectral_gap_eig: need at least 2 vertices");
    Spectrum s;
    s.eigenvalues = symmetric_eigenvalues(normalized_laplacian(g), g.vertex_count());
    s.gap = s.eigenvalues[1];
    return s;
}

Spectrum product_spectrum(const AdjGraph& g1, const AdjGraph& g2, int vertex_cap) {
    if (g1.vertex_count() > vertex_cap || g2.vertex_count() > vertex_cap)
        throw std::runtime_error("product_spectrum: vertex cap exceeded");
    auto nu = symmetric_eigenvalues(normalized_adjacency(g1), g1.vertex_count());
    auto mu = symmetric_eigenvalues(normalized_adjacency(g2), g2.vertex_count());
    Spectrum s;
    s.eigenvalues.reserve(nu.size() * mu.size());
    for (double a : nu)
        for (double b : mu) s.eigenvalues.push_back(1.0 - a * b);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    s.gap = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    return s;
}

} // namespace qmv
