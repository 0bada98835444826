#include "outlierlab/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "outlierlab/spectral.hpp"

namespace olab {

NbhdResult q_neighborhood(const Graph& g, std::int64_t v, std::int64_t q,
                          double degree_lo, double degree_hi) {
    if (q < 1 || q % 2 == 0) throw std::invalid_argument("radius q must be odd and >= 1");
    if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("root out of range");

    NbhdResult res;
    RootedTreeNbhd& t = res.tree;
    t.root = v;
    t.q = q;
    t.layers.assign(static_cast<std::size_t>(q + 1), {});
    t.layers[0].push_back(v);
    t.depth[v] = 0;

    std::deque<std::int64_t> queue{v};
    while (!queue.empty()) {
        const std::int64_t u = queue.front();
        queue.pop_front();
        const std::int64_t du = t.depth.at(u);
        if (du == q) continue;
        for (const auto& [w, eid] : g.adj(u)) {
            (void)eid;
            if (t.depth.count(w)) continue;
            t.depth[w] = du + 1;
            t.parent[w] = u;
            t.layers[static_cast<std::size_t>(du + 1)].push_back(w);
            queue.push_back(w);
        }
    }

    // tree test: the induced ball has exactly |ball| - 1 internal edges
    std::int64_t internal_edges = 0, ball_size = 0;
    for (const auto& layer : t.layers) ball_size += static_cast<std::int64_t>(layer.size());
    for (const auto& [u, du] : t.depth) {
        (void)du;
        for (const auto& [w, eid] : g.adj(u)) {
            (void)eid;
            if (t.depth.count(w)) ++internal_edges;
        }
    }
    internal_edges /= 2; // each internal edge seen from both endpoints
    if (internal_edges != ball_size - 1) {
        res.reason = "cycle in ball";
        return res;
    }

    // every leaf must sit at depth q (the root must have at least one child)
    for (std::int64_t d = 0; d < q; ++d) {
        for (std::int64_t u : t.layers[static_cast<std::size_t>(d)]) {
            const auto deg = static_cast<std::int64_t>(g.adj(u).size());
            const std::int64_t children = (d == 0) ? deg : deg - 1;
            if (children <= 0) {
                res.reason = "leaf above depth q";
                return res;
            }
        }
    }
    t.proper = true;

    if (degree_lo <= degree_hi) {
        for (std::int64_t d = 1; d < q; ++d) {
            for (std::int64_t u : t.layers[static_cast<std::size_t>(d)]) {
                const auto deg = static_cast<double>(g.adj(u).size());
                if (deg < degree_lo || deg > degree_hi) {
                    res.reason = "interior degree out of range";
                    res.tree.proper = true; // tree shape fine, degrees not
                    return res;
                }
            }
        }
    }
    res.ok = true;
    return res;
}

double TestVector::norm() const {
    double s = 0.0;
    for (const auto& [v, c] : support) {
        (void)v;
        s += c * c;
    }
    return std::sqrt(s);
}

TestVector build_test_vector(const SparseSymMatrix& m, const RootedTreeNbhd& t,
                             double d_tilde) {
    if (d_tilde <= 1.0) throw std::invalid_argument("d_tilde must exceed 1");
    if (t.root < 0 || t.layers.empty()) throw std::invalid_argument("empty tree neighborhood");

    double row_sq = 0.0;
    for (const auto& e : m.row(t.root)) row_sq += e.value * e.value;
    if (row_sq <= d_tilde)
        throw std::invalid_argument("root row norm^2 must exceed d_tilde");

    const std::int64_t q = t.q;
    TestVector y;
    y.deltas.assign(static_cast<std::size_t>((q + 1) / 2), 0.0);
    y.deltas[0] = 1.0;
    for (std::size_t i = 1; i < y.deltas.size(); ++i)
        y.deltas[i] = y.deltas[i - 1] * d_tilde / ((d_tilde - 1.0) * (row_sq - d_tilde));

    // path products from the root, filled layer by layer
    std::unordered_map<std::int64_t, double> prod;
    prod[t.root] = 1.0;
    for (std::int64_t d = 1; d <= q; ++d) {
        for (std::int64_t z : t.layers[static_cast<std::size_t>(d)]) {
            const std::int64_t u = t.parent.at(z);
            prod[z] = prod.at(u) * m.value(u, z);
        }
        if (d % 2 == 1) {
            const double delta = y.deltas[static_cast<std::size_t>((d - 1) / 2)];
            for (std::int64_t z : t.layers[static_cast<std::size_t>(d)])
                y.support.emplace_back(z, delta * prod.at(z));
        }
    }
    std::sort(y.support.begin(), y.support.end());
    return y;
}

double rayleigh(const SparseSymMatrix& m, const TestVector& y) {
    const double ny = y.norm();
    if (ny == 0.0) throw std::invalid_argument("zero test vector");
    std::vector<double> x(static_cast<std::size_t>(m.size()), 0.0);
    for (const auto& [v, c] : y.support) x[static_cast<std::size_t>(v)] = c;
    std::vector<double> mx;
    m.multiply(x, mx);
    double s = 0.0;
    for (double v : mx) s += v * v;
    return std::sqrt(s) / ny;
}

double layered_tree_rayleigh(std::int64_t root_children,
                             const std::vector<std::int64_t>& children, std::int64_t q,
                             double d_tilde) {
    if (q < 1 || q % 2 == 0) throw std::invalid_argument("depth q must be odd and >= 1");
    if (root_children < 1) throw std::invalid_argument("root needs at least one child");
    if (static_cast<std::int64_t>(children.size()) != q - 1)
        throw std::invalid_argument("need a child count for every depth 1..q-1");
    const double row_sq = static_cast<double>(root_children); // unit-magnitude weights
    if (d_tilde <= 1.0 || row_sq <= d_tilde)
        throw std::invalid_argument("need row norm^2 > d_tilde > 1");

    // layer sizes and deltas
    std::vector<double> layer(static_cast<std::size_t>(q + 1), 0.0);
    layer[0] = 1.0;
    layer[1] = row_sq;
    for (std::int64_t d = 2; d <= q; ++d)
        layer[static_cast<std::size_t>(d)] = layer[static_cast<std::size_t>(d - 1)] *
                                             static_cast<double>(children[static_cast<std::size_t>(d - 2)]);
    std::vector<double> delta(static_cast<std::size_t>((q + 1) / 2), 0.0);
    delta[0] = 1.0;
    for (std::size_t i = 1; i < delta.size(); ++i)
        delta[i] = delta[i - 1] * d_tilde / ((d_tilde - 1.0) * (row_sq - d_tilde));

    // squared path products are one, so both norms are layer sums
    double y_sq = 0.0;
    for (std::int64_t t = 1; t <= q; t += 2)
        y_sq += delta[static_cast<std::size_t>((t - 1) / 2)] *
                delta[static_cast<std::size_t>((t - 1) / 2)] * layer[static_cast<std::size_t>(t)];
    double my_sq = row_sq * row_sq;
    for (std::int64_t r = 2; r <= q - 1; r += 2) {
        const double c = static_cast<double>(children[static_cast<std::size_t>(r - 1)]);
        const double coeff = delta[static_cast<std::size_t>((r - 2) / 2)] +
                             delta[static_cast<std::size_t>(r / 2)] * c;
        my_sq += layer[static_cast<std::size_t>(r)] * coeff * coeff;
    }
    return std::sqrt(my_sq / y_sq);
}

namespace {

// Mark every vertex within the given BFS radius of root as blocked.
void block_ball(const Graph& g, std::int64_t root, std::int64_t radius,
                std::vector<char>& blocked) {
    std::vector<std::pair<std::int64_t, std::int64_t>> queue{{root, 0}};
    std::unordered_map<std::int64_t, char> seen{{root, 1}};
    blocked[static_cast<std::size_t>(root)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto [u, du] = queue[head];
        if (du == radius) continue;
        for (const auto& [w, eid] : g.adj(u)) {
            (void)eid;
            if (seen.count(w)) continue;
            seen[w] = 1;
            blocked[static_cast<std::size_t>(w)] = 1;
            queue.emplace_back(w, du + 1);
        }
    }
}

} // namespace

CertificateResult lower_bound_certificate(const SparseSymMatrix& m, std::int64_t k,
                                          std::int64_t q, double d_tilde, double np,
                                          double eps, double tol) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (q < 1 || q % 2 == 0) throw std::invalid_argument("radius q must be odd and >= 1");

    const Graph g = graph_from_matrix(m);
    const auto row_sq = row_norms_sq(m);
    std::vector<std::int64_t> order(static_cast<std::size_t>(m.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return row_sq[static_cast<std::size_t>(a)] > row_sq[static_cast<std::size_t>(b)];
    });

    CertificateResult cert;
    std::vector<char> blocked(static_cast<std::size_t>(m.size()), 0);
    for (std::int64_t v : order) {
        if (static_cast<std::int64_t>(cert.entries.size()) == k) break;
        if (blocked[static_cast<std::size_t>(v)]) continue;
        if (row_sq[static_cast<std::size_t>(v)] == 0.0) break; // isolated tail
        auto nb = q_neighborhood(g, v, q);
        if (!nb.ok) continue;

        CertEntry entry;
        entry.root = v;
        entry.row_norm_sq = row_sq[static_cast<std::size_t>(v)];
        entry.d_tilde = d_tilde;
        entry.bulk = entry.row_norm_sq <= 2.0 * (1.0 + eps) * d_tilde;
        if (!entry.bulk) {
            const auto y = build_test_vector(m, nb.tree, d_tilde);
            entry.depth = q;
            entry.rayleigh = rayleigh(m, y);
            entry.target =
                (1.0 - eps) * entry.row_norm_sq / std::sqrt(entry.row_norm_sq - d_tilde);
        } else {
            // coordinate vector e_v: Rayleigh quotient equals the row norm
            entry.depth = 0;
            entry.rayleigh = std::sqrt(entry.row_norm_sq);
            entry.target = 2.0 * std::sqrt(np) * (1.0 - eps);
        }
        cert.entries.push_back(entry);
        // keep radius-(q+1) balls disjoint so the vectors M y_i are orthogonal
        block_ball(g, v, 2 * q + 2, blocked);
    }

    if (static_cast<std::int64_t>(cert.entries.size()) < k) {
        cert.failure = "only " + std::to_string(cert.entries.size()) +
                       " disjoint proper tree neighborhoods found, need " + std::to_string(k);
        return cert;
    }

    const auto spec = extreme_eigenvalues(m, k, tol);
    cert.lambda_k = std::abs(spec.eigenvalues.back().value);
    const double slack = tol + spec.best_residual;

    // rank-wise interlacing: j-th largest quotient <= j-th largest |eigenvalue|
    std::vector<std::size_t> by_rayleigh(cert.entries.size());
    std::iota(by_rayleigh.begin(), by_rayleigh.end(), std::size_t{0});
    std::stable_sort(by_rayleigh.begin(), by_rayleigh.end(), [&](std::size_t a, std::size_t b) {
        return cert.entries[a].rayleigh > cert.entries[b].rayleigh;
    });
    cert.ok = true;
    cert.min_rayleigh = cert.entries[by_rayleigh.back()].rayleigh;
    for (std::size_t j = 0; j < by_rayleigh.size(); ++j) {
        auto& entry = cert.entries[by_rayleigh[j]];
        entry.ok = entry.rayleigh <= std::abs(spec.eigenvalues[j].value) + slack;
        if (!entry.ok) cert.ok = false;
    }
    return cert;
}

void write_certificate_csv(std::ostream& os, const CertificateResult& cert) {
    os << "root,depth,row_norm_sq,d_tilde,rayleigh,lambda_k,ok\n";
    os << std::setprecision(17);
    for (const auto& e : cert.entries)
        os << e.root << ',' << e.depth << ',' << e.row_norm_sq << ',' << e.d_tilde << ','
           << e.rayleigh << ',' << cert.lambda_k << ',' << (e.ok ? 1 : 0) << '\n';
}

} // namespace olab
