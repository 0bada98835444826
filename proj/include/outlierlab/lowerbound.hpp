#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "sparse_matrix.hpp"

namespace olab {

// Radius-q BFS ball around a root, organized in layers with a parent map.
struct RootedTreeNbhd {
    std::int64_t root = -1;
    std::int64_t q = 0;
    std::vector<std::vector<std::int64_t>> layers;          // V_0 .. V_q
    std::unordered_map<std::int64_t, std::int64_t> parent;  // no entry for the root
    std::unordered_map<std::int64_t, std::int64_t> depth;
    bool proper = false; // induced ball is a tree and every leaf has depth q
};

struct NbhdResult {
    bool ok = false;
    std::string reason; // "cycle in ball" / "leaf above depth q" / "interior degree out of range"
    RootedTreeNbhd tree;
};

// BFS ball of radius q (q >= 1, odd). Structured failure when the induced
// ball contains a cycle or a leaf of depth < q. When degree_lo <= degree_hi,
// interior vertices (neither root nor leaf) must have graph degree in range.
NbhdResult q_neighborhood(const Graph& g, std::int64_t v, std::int64_t q,
                          double degree_lo = 1.0, double degree_hi = 0.0);

// Sparse test vector supported on the odd-depth layers of a tree
// neighborhood. The coefficient at a vertex z of odd depth r+1 (a child of a
// depth-r vertex) is delta_r times the product of the matrix entries along
// the root-to-z tree path. The deltas follow the geometric recursion
//   delta_0 = 1,
//   delta_r = delta_{r-2} * dt / ((dt - 1) (||row_root||^2 - dt)),
// which makes the vector a witness for ||M|| >= ||row||^2 / sqrt(||row||^2 - dt)
// up to (1 - eps) on trees with degrees up to dt.
struct TestVector {
    std::vector<std::pair<std::int64_t, double>> support; // (vertex, coeff), vertex-sorted
    std::vector<double> deltas;                           // deltas[i] = delta_{2i}
    double norm() const;
};

TestVector build_test_vector(const SparseSymMatrix& m, const RootedTreeNbhd& t,
                             double d_tilde);

// ||M y|| / ||y||, always a lower bound on the operator norm.
double rayleigh(const SparseSymMatrix& m, const TestVector& y);

// Exact Rayleigh quotient of the geometric test vector on a layered tree all
// of whose edge weights have magnitude one: root with root_children children,
// every depth-d vertex (1 <= d <= q-1) with children[d-1] children, leaves at
// depth q. With unit-magnitude weights the quotient depends only on this
// degree profile, so trees far too large to materialize (10^11 vertices at
// q = 5, degrees ~200) are evaluated in closed form. Cross-validated against
// rayleigh() on small materialized trees.
double layered_tree_rayleigh(std::int64_t root_children,
                             const std::vector<std::int64_t>& children, std::int64_t q,
                             double d_tilde);

struct CertEntry {
    std::int64_t root = -1;
    std::int64_t depth = 0;  // tree depth used; 0 marks the bulk fallback (coordinate vector)
    double row_norm_sq = 0.0;
    double d_tilde = 0.0;
    double rayleigh = 0.0;
    double target = 0.0;     // (1-eps) r2/sqrt(r2-dt), or 2 sqrt(np)(1-eps) in the bulk regime
    bool bulk = false;
    bool ok = false;         // rank-wise interlacing against the eigensolver
};

struct CertificateResult {
    bool ok = false;
    std::string failure; // nonempty when k disjoint tree neighborhoods were not found
    std::vector<CertEntry> entries;
    double lambda_k = 0.0; // k-th largest |eigenvalue| from the eigensolver
    double min_rayleigh = 0.0;
};

// Greedy certificate for |lambda_k|: scan vertices in decreasing row-norm
// order, keep roots whose radius-q ball is a proper tree and which are far
// enough from previously kept roots that the vectors M y_i have disjoint
// supports. Each kept root contributes a Rayleigh quotient (geometric test
// vector above the bulk threshold 2 (1+eps) d_tilde, coordinate vector
// otherwise); the j-th largest quotient deterministically lower-bounds the
// j-th largest |eigenvalue|.
CertificateResult lower_bound_certificate(const SparseSymMatrix& m, std::int64_t k,
                                          std::int64_t q, double d_tilde, double np,
                                          double eps, double tol = 1e-8);

// CSV report: root, depth, row_norm_sq, d_tilde, rayleigh, lambda_k, ok.
void write_certificate_csv(std::ostream& os, const CertificateResult& cert);

} // namespace olab
