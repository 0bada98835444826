#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "prng.hpp"
#include "sparse_matrix.hpp"

namespace olab {

// Predictor bundle for one matrix realization:
//   theta = sqrt(max(max_row_sq - np, np)),  rho = theta + np/theta.
// rho >= 2 sqrt(np) always, with equality iff max_row_sq <= 2 np.
struct RhoSummary {
    double max_row_sq;
    double np;
    double theta;
    double rho;
};

std::vector<double> row_norms_sq(const SparseSymMatrix& m);

RhoSummary rho(double max_row_sq, double np);

// Principal branch of the Lambert W function: w e^w = z, w >= -1, z >= -1/e.
// Halley iteration from a branch-aware initial guess; residual <= 1e-12.
double lambert_w0(double z);

// Max-degree asymptote for G(n, p): gamma = e np exp(W0((log n - np)/(e np))).
double predict_max_degree(std::int64_t n, double p);

// Closed-form Erdos-Renyi outlier predictor: rho evaluated at the max-degree
// asymptote, theta_g = sqrt(max(gamma - np, np)).
double rho_g_predictor(std::int64_t n, double p);

// Second-largest-|eigenvalue| detachment threshold: np/log n = 1/log(4/e).
inline double phase_threshold_c() { return 1.0 / std::log(4.0 / std::exp(1.0)); }

struct RitzPair {
    double value;
    double residual; // ||M v - value * v||_2
};

struct SpectrumResult {
    std::vector<RitzPair> eigenvalues; // ordered by |value| desc, then value desc
    std::int64_t k = 0;
    std::uint64_t matvec_count = 0;
    bool converged = false;
    double best_residual = 0.0; // largest residual among returned pairs
};

// k eigenvalues of largest absolute value, by Lanczos with full
// reorthogonalization; both spectrum ends extracted and merged by |value|.
// Deterministic: the start vector is derived from seed.
SpectrumResult extreme_eigenvalues(const SparseSymMatrix& m, std::int64_t k,
                                   double tol = 1e-8, std::int64_t max_iter = 400,
                                   SeedSpec seed = {0xa5a5a5a5ULL, 0});

// ||M|| / max_i ||row_i(M)||_2 (>= 1 - tol deterministically).
double seginer_ratio(const SparseSymMatrix& m, double tol = 1e-8);

// BBP limit for a rank-one deformation of strength theta.
inline double bbp_prediction(double theta) {
    return theta <= 1.0 ? 2.0 : theta + 1.0 / theta;
}

} // namespace olab
