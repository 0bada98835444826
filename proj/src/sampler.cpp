#include "outlierlab/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace olab {
namespace {

// Map a linear index t in [0, n(n-1)/2) over the upper triangle (row-major,
// i < j) back to the pair (i, j).
inline std::pair<std::int64_t, std::int64_t> unrank_pair(std::int64_t n, std::int64_t t) {
    const double nd = static_cast<double>(n);
    std::int64_t i = static_cast<std::int64_t>(
        std::floor(nd - 0.5 - std::sqrt((nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(t))));
    if (i < 0) i = 0;
    auto offset = [n](std::int64_t r) { return r * n - r * (r + 1) / 2; };
    while (offset(i + 1) <= t) ++i;
    while (offset(i) > t) --i;
    const std::int64_t j = t - offset(i) + i + 1;
    return {i, j};
}

void check_np(std::int64_t n, double p) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("need 0 < p <= 1");
}

} // namespace

SparseSymMatrix sample_sparse_wigner(std::int64_t n, double p, const BoundedDistribution& dist,
                                     DiagMode diag_mode, SeedSpec seed) {
    check_np(n, p);
    Rng rng(seed);
    SparseSymMatrix m(n, diag_mode);
    const std::int64_t total = n * (n - 1) / 2;
    std::int64_t t = static_cast<std::int64_t>(rng.next_geometric_skip(p));
    while (t < total) {
        auto [i, j] = unrank_pair(n, t);
        m.add_upper(i, j, dist.sample(rng));
        t += 1 + static_cast<std::int64_t>(rng.next_geometric_skip(p));
    }
    if (diag_mode == DiagMode::iid) {
        std::int64_t d = static_cast<std::int64_t>(rng.next_geometric_skip(p));
        while (d < n) {
            m.add_upper(d, d, dist.sample(rng));
            d += 1 + static_cast<std::int64_t>(rng.next_geometric_skip(p));
        }
    }
    m.finalize();
    return m;
}

SparseSymMatrix sample_er_adjacency(std::int64_t n, double p, SeedSpec seed) {
    return sample_sparse_wigner(n, p, make_distribution(DistKind::constant_one, 1.0),
                                DiagMode::zero, seed);
}

CoupledPair couple_centered(std::int64_t n, double p, double eps,
                            const BoundedDistribution& dist, SeedSpec seed) {
    check_np(n, p);
    if (!(eps >= p && eps < 1.0)) throw std::invalid_argument("need p <= eps < 1");
    Rng rng(seed);
    const double q = p / eps; // sparsity of the coupled centered matrix
    const double beta = std::sqrt(eps + eps * eps * dist.mean * dist.mean / (1.0 - eps));
    CoupledPair out{SparseSymMatrix(n, DiagMode::zero), SparseSymMatrix(n, DiagMode::zero), beta};
    const std::int64_t total = n * (n - 1) / 2;
    std::int64_t t = static_cast<std::int64_t>(rng.next_geometric_skip(q));
    while (t < total) {
        auto [i, j] = unrank_pair(n, t);
        const bool a = rng.next_unit() < eps;
        const double xi = dist.sample(rng);
        const double xi_eps = a ? xi : -eps * dist.mean / (1.0 - eps);
        if (a) out.w.add_upper(i, j, xi);
        out.w_prime.add_upper(i, j, xi_eps / beta);
        t += 1 + static_cast<std::int64_t>(rng.next_geometric_skip(q));
    }
    out.w.finalize();
    out.w_prime.finalize();
    return out;
}

Eigen::MatrixXd sample_deformed_wigner(std::int64_t n, const std::vector<double>& thetas,
                                       const BoundedDistribution& dist, SeedSpec seed) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (static_cast<std::int64_t>(thetas.size()) >= n)
        throw std::invalid_argument("deformation rank must be < n");
    Rng rng(seed);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    // Zero diagonal: the library's operating convention throughout; a bounded
    // diagonal perturbs eigenvalues by O(n^{-1/2}) and does not affect the
    // deformation targets.
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            const double v = scale * dist.sample(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    for (std::size_t r = 0; r < thetas.size(); ++r)
        m(static_cast<std::int64_t>(r), static_cast<std::int64_t>(r)) += thetas[r];
    return m;
}

} // namespace olab
