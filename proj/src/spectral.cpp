#include "outlierlab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace olab {

std::vector<double> row_norms_sq(const SparseSymMatrix& m) {
    std::vector<double> out(static_cast<std::size_t>(m.size()), 0.0);
    for (std::int64_t i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (const auto& e : m.row(i)) acc += e.value * e.value;
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

RhoSummary rho(double max_row_sq, double np) {
    if (!(np > 0.0) || max_row_sq < 0.0)
        throw std::invalid_argument("need np > 0 and max_row_sq >= 0");
    RhoSummary s;
    s.max_row_sq = max_row_sq;
    s.np = np;
    s.theta = std::sqrt(std::max(max_row_sq - np, np));
    s.rho = s.theta + np / s.theta;
    return s;
}

double lambert_w0(double z) {
    const double e_inv = std::exp(-1.0);
    if (z < -e_inv) {
        if (z > -e_inv - 1e-15) z = -e_inv; // absorb floating slack at the branch point
        else throw std::domain_error("lambert_w0 needs z >= -1/e");
    }
    double w;
    if (z < -0.25) {
        // Series around the branch point in p = sqrt(2(ez + 1)).
        const double p = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else if (z < std::exp(1.0)) {
        w = z / (1.0 + z); // crude but in-basin for moderate z
    } else {
        const double l = std::log(z);
        w = l - std::log(l);
    }
    // Halley iteration.
    for (int it = 0; it < 60; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (std::abs(f) <= 1e-13 * (1.0 + std::abs(z))) break;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        w -= f / denom;
        if (w < -1.0) w = -1.0;
    }
    return w;
}

double predict_max_degree(std::int64_t n, double p) {
    if (!(n >= 2 && p > 0.0 && p < 1.0)) throw std::invalid_argument("need n >= 2, 0 < p < 1");
    const double np = static_cast<double>(n) * p;
    const double arg = (std::log(static_cast<double>(n)) - np) / (std::exp(1.0) * np);
    return std::exp(1.0) * np * std::exp(lambert_w0(arg));
}

double rho_g_predictor(std::int64_t n, double p) {
    const double np = static_cast<double>(n) * p;
    return rho(predict_max_degree(n, p), np).rho;
}

namespace {

void matvec(const SparseSymMatrix& m, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const std::int64_t n = m.size();
    y.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& e : m.row(i)) acc += e.value * x[e.col];
        y[i] = acc;
    }
}

// Deterministic pseudo-random unit start vector.
Eigen::VectorXd start_vector(std::int64_t n, SeedSpec seed) {
    Rng rng(seed);
    Eigen::VectorXd v(n);
    for (std::int64_t i = 0; i < n; ++i) v[i] = 2.0 * rng.next_unit() - 1.0;
    const double nrm = v.norm();
    if (nrm == 0.0) v[0] = 1.0;
    else v /= nrm;
    return v;
}

} // namespace

SpectrumResult extreme_eigenvalues(const SparseSymMatrix& m, std::int64_t k, double tol,
                                   std::int64_t max_iter, SeedSpec seed) {
    const std::int64_t n = m.size();
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (!(tol > 0.0)) throw std::invalid_argument("need tol > 0");

    SpectrumResult result;
    result.k = k;

    const std::int64_t m_max = std::min<std::int64_t>(max_iter, n);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(static_cast<std::size_t>(m_max));
    std::vector<double> alpha, betav; // betav[j] links v_j and v_{j+1}
    Rng aux_rng(SeedSpec{seed.master_seed ^ 0x5bd1e995ULL, seed.trial_index});

    Eigen::VectorXd v = start_vector(n, seed);
    basis.push_back(v);
    Eigen::VectorXd w(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_solver;
    auto solve_tridiag = [&](std::int64_t j) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
        for (std::int64_t i = 0; i < j; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < j) {
                t(i, i + 1) = betav[static_cast<std::size_t>(i)];
                t(i + 1, i) = betav[static_cast<std::size_t>(i)];
            }
        }
        tri_solver.compute(t);
    };

    auto select_indices = [&](const Eigen::VectorXd& vals) {
        std::vector<std::int64_t> idx(static_cast<std::size_t>(vals.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
        std::sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
            const double aa = std::abs(vals[a]), ab = std::abs(vals[b]);
            if (aa != ab) return aa > ab;
            return vals[a] > vals[b]; // tie on |value|: signed value descending
        });
        return idx;
    };

    bool estimate_ok = false;
    std::int64_t j = 0;
    while (j < m_max) {
        matvec(m, basis[static_cast<std::size_t>(j)], w);
        ++result.matvec_count;
        const double a = w.dot(basis[static_cast<std::size_t>(j)]);
        alpha.push_back(a);
        w -= a * basis[static_cast<std::size_t>(j)];
        if (j > 0) w -= betav[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
        // Full reorthogonalization, two passes.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;
        double b = w.norm();
        ++j;
        if (j >= m_max) break;
        if (b < 1e-12) {
            // Invariant subspace exhausted: continue with a fresh orthogonal
            // direction (T becomes block-diagonal, which is fine).
            if (j >= n) break;
            Eigen::VectorXd fresh(n);
            for (std::int64_t i = 0; i < n; ++i) fresh[i] = 2.0 * aux_rng.next_unit() - 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) fresh -= q.dot(fresh) * q;
            const double fn = fresh.norm();
            if (fn < 1e-12) break;
            w = fresh / fn;
            b = 0.0;
        } else {
            w /= b;
        }
        betav.push_back(b);
        basis.push_back(w);

        // Periodic convergence estimate from the tridiagonal problem.
        if (j >= std::max<std::int64_t>(2 * k + 2, 8) && (j % 8 == 0 || j == m_max - 1)) {
            solve_tridiag(j);
            const Eigen::VectorXd vals = tri_solver.eigenvalues();
            auto idx = select_indices(vals);
            const double scale = std::max(std::abs(vals[idx[0]]), 1e-300);
            bool all_ok = true;
            for (std::int64_t t = 0; t < k && t < static_cast<std::int64_t>(idx.size()); ++t) {
                const double est =
                    b * std::abs(tri_solver.eigenvectors()(j - 1, idx[static_cast<std::size_t>(t)]));
                if (est > 0.1 * tol * scale) { all_ok = false; break; }
            }
            if (all_ok) { estimate_ok = true; break; }
        }
    }

    solve_tridiag(j);
    const Eigen::VectorXd vals = tri_solver.eigenvalues();
    const Eigen::MatrixXd vecs = tri_solver.eigenvectors();
    auto idx = select_indices(vals);

    const std::int64_t avail = std::min<std::int64_t>(k, static_cast<std::int64_t>(idx.size()));
    const double scale = std::max(std::abs(vals[idx[0]]), 1e-300);
    result.best_residual = 0.0;
    for (std::int64_t t = 0; t < avail; ++t) {
        const std::int64_t id = idx[static_cast<std::size_t>(t)];
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (std::int64_t c = 0; c < j; ++c)
            x += vecs(c, id) * basis[static_cast<std::size_t>(c)];
        x.normalize();
        Eigen::VectorXd mx(n);
        matvec(m, x, mx);
        ++result.matvec_count;
        const double lambda = vals[id];
        const double res = (mx - lambda * x).norm();
        result.eigenvalues.push_back({lambda, res});
        result.best_residual = std::max(result.best_residual, res);
    }
    result.converged = (avail == k) && (result.best_residual <= tol * scale);
    (void)estimate_ok;
    return result;
}

double seginer_ratio(const SparseSymMatrix& m, double tol) {
    const auto rn = row_norms_sq(m);
    double max_row = 0.0;
    for (double v : rn) max_row = std::max(max_row, v);
    if (max_row == 0.0) throw std::invalid_argument("zero matrix");
    auto res = extreme_eigenvalues(m, 1, tol);
    return std::abs(res.eigenvalues.at(0).value) / std::sqrt(max_row);
}

} // namespace olab
