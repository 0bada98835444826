#pragma once
#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "distribution.hpp"
#include "prng.hpp"
#include "sparse_matrix.hpp"

namespace olab {

// Sparse symmetric random matrix: entries above the diagonal i.i.d. b*xi with
// b ~ Bernoulli(p), xi ~ dist; mirrored below; diagonal per diag_mode.
// Deterministic function of (params, seed).
SparseSymMatrix sample_sparse_wigner(std::int64_t n, double p, const BoundedDistribution& dist,
                                     DiagMode diag_mode, SeedSpec seed);

// Erdos-Renyi adjacency matrix: the constant_one atom with zero diagonal.
SparseSymMatrix sample_er_adjacency(std::int64_t n, double p, SeedSpec seed);

struct CoupledPair {
    SparseSymMatrix w;       // entries ~ Bern(p) * xi
    SparseSymMatrix w_prime; // entries ~ Bern(p/eps) * (centered unit-variance atom)
    double beta;             // Var(xi_eps)^{1/2}; entry bound for w_prime is h/beta^2
};

// Per entry: a ~ Bern(eps), b' ~ Bern(p/eps), xi ~ dist;
//   w   = (a b') xi
//   w'  = b' xi_eps / beta,   xi_eps = a xi - eps(1-a) E xi / (1-eps),
//   beta = sqrt(Var xi_eps) = sqrt(eps + eps^2 (E xi)^2 / (1-eps)).
// The w-marginal is a Bern(p)*xi matrix; w' has centered unit-variance atoms.
CoupledPair couple_centered(std::int64_t n, double p, double eps,
                            const BoundedDistribution& dist, SeedSpec seed);

// (1/sqrt(n)) Xi + sum_i thetas[i] e_i e_i^T with Xi a full Wigner matrix
// (zero diagonal) drawn from dist.
Eigen::MatrixXd sample_deformed_wigner(std::int64_t n, const std::vector<double>& thetas,
                                       const BoundedDistribution& dist, SeedSpec seed);

} // namespace olab
