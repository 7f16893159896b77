#include "qmv/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmv/subsets.hpp"

namespace qmv {

namespace {

void build_factor(const JohnsonGraph& g, int nv, std::vector<int32_t>& adj,
                  std::vector<int32_t>& twin, std::vector<int32_t>& subsets) {
    const int deg = g.degree();
    adj.assign(static_cast<size_t>(nv) * deg, 0);
    twin.assign(static_cast<size_t>(nv) * deg, 0);
    subsets.assign(static_cast<size_t>(nv) * g.k, 0);
    for (int v = 0; v < nv; ++v) {
        auto subset = subset_unrank(g.n, g.k, static_cast<uint64_t>(v));
        for (int i = 0; i < g.k; ++i) subsets[static_cast<size_t>(v) * g.k + i] = subset[i];
        uint64_t mask = subset_mask(subset);
        int slot = 0;
        for (int out = 0; out < g.k; ++out)
            for (int in = 1; in <= g.n; ++in) {
                if (mask & (1ULL << (in - 1))) continue;
                auto s = subset;
                s[out] = in;
                std::sort(s.begin(), s.end());
                adj[static_cast<size_t>(v) * deg + slot] = static_cast<int32_t>(subset_rank(s));
                ++slot;
            }
    }
    // twin[v * deg + i] = slot of v within adj(neighbor)
    for (int v = 0; v < nv; ++v)
        for (int i = 0; i < deg; ++i) {
            int u = adj[static_cast<size_t>(v) * deg + i];
            for (int j = 0; j < deg; ++j)
                if (adj[static_cast<size_t>(u) * deg + j] == v) {
                    twin[static_cast<size_t>(v) * deg + i] = j;
                    break;
                }
        }
}

} // namespace

std::shared_ptr<const WalkSpace> WalkSpace::create(const JohnsonGraph& left,
                                                   const JohnsonGraph& right, int64_t dim_cap) {
    if (left.k >= left.n || right.k >= right.n)
        throw std::invalid_argument("WalkSpace: k = n gives an edgeless graph");
    auto space = std::make_shared<WalkSpace>();
    space->left = left;
    space->right = right;
    space->nv_left = static_cast<int>(left.vertex_count());
    space->nv_right = static_cast<int>(right.vertex_count());
    space->num_vertices = static_cast<int64_t>(space->nv_left) * space->nv_right;
    space->deg_left = left.degree();
    space->deg_right = right.degree();
    space->degree = space->deg_left * space->deg_right;
    space->dim = space->num_vertices * space->num_vertices;
    if (space->num_vertices > dim_cap / space->num_vertices)
        throw std::runtime_error("WalkSpace: dimension cap exceeded (|X|^2 > cap)");
    space->edge_dim = space->num_vertices * space->degree;
    build_factor(left, space->nv_left, space->adj_left, space->twin_left, space->left_subsets);
    build_factor(right, space->nv_right, space->adj_right, space->twin_right, space->right_subsets);
    return space;
}

int64_t marked_count(const MarkedSet& marked) {
    int64_t n = 0;
    for (uint8_t m : marked) n += m != 0;
    return n;
}

WalkState uniform_edge_state(const WalkSpace& space) {
    WalkState state;
    state.amp.assign(static_cast<size_t>(space.edge_dim),
                     1.0 / std::sqrt(static_cast<double>(space.num_vertices) * space.degree));
    return state;
}

void phase_flip(const WalkSpace& space, WalkState& state, const MarkedSet& marked) {
    const int64_t nx = space.num_vertices;
    const int deg = space.degree;
#pragma omp parallel for schedule(static)
    for (int64_t x = 0; x < nx; ++x) {
        if (!marked[static_cast<size_t>(x)]) continue;
        double* block = state.amp.data() + x * deg;
        for (int t = 0; t < deg; ++t) block[t] = -block[t];
    }
}

namespace {

// Shared by the parallel kernel and the serial reference; `parallel` only
// toggles the omp pragmas, the arithmetic per element is identical.
template <bool Parallel>
void walk_step_impl(const WalkSpace& space, WalkState& state) {
    const int64_t nx = space.num_vertices;
    const int deg = space.degree;
    const int dl = space.deg_left, dr = space.deg_right;
    const int nvr = space.nv_right;
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(deg));
    double* amp = state.amp.data();

    // R1: reflect each x-block about |p_x>
#pragma omp parallel for schedule(static) if (Parallel)
    for (int64_t x = 0; x < nx; ++x) {
        double* block = amp + x * deg;
        double c = 0.0;
        for (int t = 0; t < deg; ++t) c += block[t];
        c *= inv_sqrt_d;
        const double twice = 2.0 * c * inv_sqrt_d;
        for (int t = 0; t < deg; ++t) block[t] = twice - block[t];
    }

    // R2: reflect about |p_y>|y>; gather the projection per head vertex y
    std::vector<double> c2(static_cast<size_t>(nx));
#pragma omp parallel for schedule(static) if (Parallel)
    for (int64_t y = 0; y < nx; ++y) {
        const int u2 = static_cast<int>(y / nvr), v2 = static_cast<int>(y % nvr);
        double acc = 0.0;
        for (int i = 0; i < dl; ++i) {
            const int u = space.adj_left[static_cast<size_t>(u2) * dl + i];
            const int islot = space.twin_left[static_cast<size_t>(u2) * dl + i];
            for (int j = 0; j < dr; ++j) {
                const int v = space.adj_right[static_cast<size_t>(v2) * dr + j];
                const int jslot = space.twin_right[static_cast<size_t>(v2) * dr + j];
                const int64_t x = static_cast<int64_t>(u) * nvr + v;
                acc += amp[x * deg + static_cast<int64_t>(islot) * dr + jslot];
            }
        }
        c2[static_cast<size_t>(y)] = acc * inv_sqrt_d;
    }
#pragma omp parallel for schedule(static) if (Parallel)
    for (int64_t x = 0; x < nx; ++x) {
        const int u = static_cast<int>(x / nvr), v = static_cast<int>(x % nvr);
        double* block = amp + x * deg;
        for (int i = 0; i < dl; ++i) {
            const int64_t u2 = space.adj_left[static_cast<size_t>(u) * dl + i];
            for (int j = 0; j < dr; ++j) {
                const int64_t v2 = space.adj_right[static_cast<size_t>(v) * dr + j];
                const double cy = c2[static_cast<size_t>(u2 * nvr + v2)];
                double& a = block[static_cast<size_t>(i) * dr + j];
                a = 2.0 * cy * inv_sqrt_d - a;
            }
        }
    }
}

} // namespace

void walk_step(const WalkSpace& space, WalkState& state) { walk_step_impl<true>(space, state); }
void walk_step_reference(const WalkSpace& space, WalkState& state) {
    walk_step_impl<false>(space, state);
}

double inner_product(const WalkState& a, const WalkState& b) {
    if (a.amp.size() != b.amp.size()) throw std::invalid_argument("inner_product: dimension mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < a.amp.size(); ++i) acc += a.amp[i] * b.amp[i];
    return acc;
}

double state_norm(const WalkState& a) { return std::sqrt(inner_product(a, a)); }

double uniform_overlap(const WalkSpace& space, const WalkState& psi) {
    double acc = 0.0;
    for (double v : psi.amp) acc += v;
    return acc / std::sqrt(static_cast<double>(space.num_vertices) * space.degree);
}

double hadamard_test_prob(const std::vector<double>& phi, const std::vector<double>& psi) {
    if (phi.size() != psi.size()) throw std::invalid_argument("hadamard_test_prob: dimension mismatch");
    double dot = 0.0;
    for (size_t i = 0; i < phi.size(); ++i) dot += phi[i] * psi[i];
    return 0.5 * (1.0 - dot);
}

double run_verification_walk(const WalkSpace& space, const MarkedSet& marked, int ell) {
    if (ell < 0) throw std::invalid_argument("run_verification_walk: ell >= 0");
    WalkState state = uniform_edge_state(space);
    for (int i = 0; i < ell; ++i) {
        phase_flip(space, state, marked);
        walk_step(space, state);
    }
    return 0.5 * (1.0 - uniform_overlap(space, state));
}

SuccessCurve verify_once_success(const WalkSpace& space, const MarkedSet& marked, int k_max_ell) {
    if (k_max_ell < 1) throw std::invalid_argument("verify_once_success: k >= 1");
    SuccessCurve curve;
    curve.per_ell.reserve(static_cast<size_t>(k_max_ell));
    WalkState state = uniform_edge_state(space);
    double sum = 0.0;
    for (int l = 1; l <= k_max_ell; ++l) {
        phase_flip(space, state, marked);
        walk_step(space, state);
        double prob = 0.5 * (1.0 - uniform_overlap(space, state));
        curve.per_ell.push_back(prob);
        sum += prob;
    }
    curve.average = sum / k_max_ell;
    return curve;
}

RestrictedCheck restricted_matrix_check(const WalkSpace& space, const MarkedSet& marked,
                                        int eig_cap) {
    const int64_t nx = space.num_vertices;
    if (nx > eig_cap) throw std::runtime_error("restricted_matrix_check: eigensolver cap exceeded");
    RestrictedCheck check;
    check.epsilon = static_cast<double>(marked_count(marked)) / static_cast<double>(nx);

    auto left_adj = johnson_adjacency(space.left);
    auto right_adj = johnson_adjacency(space.right);
    check.delta = product_spectrum(left_adj, right_adj, eig_cap).gap;
    check.bound = 1.0 - check.delta * check.epsilon / 2.0;

    std::vector<int64_t> keep;
    for (int64_t x = 0; x < nx; ++x)
        if (!marked[static_cast<size_t>(x)]) keep.push_back(x);
    if (keep.empty()) {
        check.lambda_pm = 0.0; // empty matrix convention
        check.pass = true;
        return check;
    }
    const int m = static_cast<int>(keep.size());
    std::vector<int64_t> position(static_cast<size_t>(nx), -1);
    for (int i = 0; i < m; ++i) position[static_cast<size_t>(keep[i])] = i;
    std::vector<double> walk_matrix(static_cast<size_t>(m) * m, 0.0);
    const double inv_deg = 1.0 / space.degree;
    const int nvr = space.nv_right;
    for (int i = 0; i < m; ++i) {
        const int64_t x = keep[static_cast<size_t>(i)];
        const int u = static_cast<int>(x / nvr), v = static_cast<int>(x % nvr);
        for (int a = 0; a < space.deg_left; ++a)
            for (int b = 0; b < space.deg_right; ++b) {
                const int64_t y =
                    static_cast<int64_t>(space.adj_left[static_cast<size_t>(u) * space.deg_left + a]) * nvr +
                    space.adj_right[static_cast<size_t>(v) * space.deg_right + b];
                const int64_t pos = position[static_cast<size_t>(y)];
                if (pos >= 0) walk_matrix[static_cast<size_t>(i) * m + pos] = inv_deg;
            }
    }
    auto eig = symmetric_eigenvalues(std::move(walk_matrix), m);
    check.lambda_pm = eig.back();
    check.pass = check.lambda_pm <= check.bound + 1e-9;
    return check;
}

std::vector<double> to_dense_edge_vector(const WalkSpace& space, const WalkState& state) {
    const int64_t nx = space.num_vertices;
    std::vector<double> dense(static_cast<size_t>(space.dim), 0.0);
    const int nvr = space.nv_right;
    for (int64_t x = 0; x < nx; ++x) {
        const int u = static_cast<int>(x / nvr), v = static_cast<int>(x % nvr);
        for (int i = 0; i < space.deg_left; ++i)
            for (int j = 0; j < space.deg_right; ++j) {
                const int64_t y =
                    static_cast<int64_t>(space.adj_left[static_cast<size_t>(u) * space.deg_left + i]) * nvr +
                    space.adj_right[static_cast<size_t>(v) * space.deg_right + j];
                dense[static_cast<size_t>(x * nx + y)] =
                    state.amp[static_cast<size_t>(x * space.degree + static_cast<int64_t>(i) * space.deg_right + j)];
            }
    }
    return dense;
}

} // namespace qmv
