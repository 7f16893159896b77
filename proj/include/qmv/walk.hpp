#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qmv/eigen.hpp"
#include "qmv/graph.hpp"

namespace qmv {

inline constexpr int64_t kDefaultWalkDimCap = int64_t{1} << 30;

// Walk space over X = V(left) x V(right), the categorical product of two
// Johnson graphs, with the uniform transition matrix P_xy = 1/deg.  States
// live on the edge space of X; amplitudes off the adjacency support stay
// zero under both reflections and the phase flip, so they are not stored:
// amp[x * degree + i * deg_right + j] is the amplitude on (x, y) with
// x = (u, v) and y = (adj_left(u)[i], adj_right(v)[j]).
struct WalkSpace {
    JohnsonGraph left, right;
    int nv_left = 0, nv_right = 0;
    int64_t num_vertices = 0; // |X|
    int deg_left = 0, deg_right = 0;
    int degree = 0;     // product degree
    int64_t dim = 0;    // |X|^2, the logical state dimension
    int64_t edge_dim = 0;

    std::vector<int32_t> adj_left, adj_right;   // [u * deg + slot]
    std::vector<int32_t> twin_left, twin_right; // slot of u within adj(neighbor)
    std::vector<int32_t> left_subsets, right_subsets; // [rank * k + pos], 1-based elements

    static std::shared_ptr<const WalkSpace> create(const JohnsonGraph& left,
                                                   const JohnsonGraph& right,
                                                   int64_t dim_cap = kDefaultWalkDimCap);

    int64_t vertex_id(int left_rank, int right_rank) const {
        return static_cast<int64_t>(left_rank) * nv_right + right_rank;
    }
};

struct WalkState {
    std::vector<double> amp; // edge_dim entries
};

using MarkedSet = std::vector<uint8_t>; // one flag per vertex of X

int64_t marked_count(const MarkedSet& marked);

// |phi> = (1/sqrt|X|) sum_x |x>|p_x>, all edge amplitudes 1/sqrt(|X| deg).
WalkState uniform_edge_state(const WalkSpace& space);

// Negates the amplitudes of every edge whose first register is marked.
void phase_flip(const WalkSpace& space, WalkState& state, const MarkedSet& marked);

// One diffusion U = R2 R1 with R1 = 2 sum_x |x><x| (x) |p_x><p_x| - I and
// R2 = 2 sum_y |p_y><p_y| (x) |y><y| - I.  Parallel over blocks; every
// element's update is independent, so results match the reference exactly.
void walk_step(const WalkSpace& space, WalkState& state);
// Serial reference implementation kept for testing and benchmarks.
void walk_step_reference(const WalkSpace& space, WalkState& state);

double inner_product(const WalkState& a, const WalkState& b);
double state_norm(const WalkState& a);
// <phi|psi> against the uniform edge state, without materializing it.
double uniform_overlap(const WalkSpace& space, const WalkState& psi);

// Pr[measuring 1] = (1 - <phi|psi>) / 2 for real unit states.
double hadamard_test_prob(const std::vector<double>& phi, const std::vector<double>& psi);

// |psi> = (U F)^ell |phi>; returns (1 - <phi|psi>) / 2.
double run_verification_walk(const WalkSpace& space, const MarkedSet& marked, int ell);

// Success probability of one run with ell drawn uniformly from {1..k}:
// the average of the per-ell probabilities, computed in a single pass.
struct SuccessCurve {
    double average = 0.0;
    std::vector<double> per_ell; // per_ell[l-1] for l = 1..k
};
SuccessCurve verify_once_success(const WalkSpace& space, const MarkedSet& marked, int k_max_ell);

// Largest eigenvalue of the walk matrix restricted to unmarked vertices,
// against the bound 1 - delta_G epsilon / 2.
struct RestrictedCheck {
    double lambda_pm = 0.0;
    double bound = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    bool pass = false;
};
RestrictedCheck restricted_matrix_check(const WalkSpace& space, const MarkedSet& marked,
                                        int eig_cap = kDefaultEigCap);

// Expands an edge-compressed state into the full |X|^2 vector indexed by
// x * |X| + y; used by the dense-operator cross checks.
std::vector<double> to_dense_edge_vector(const WalkSpace& space, const WalkState& state);

} // namespace qmv
