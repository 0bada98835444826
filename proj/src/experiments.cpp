#include "outlierlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "outlierlab/dyck.hpp"
#include "outlierlab/graph.hpp"
#include "outlierlab/majorizer.hpp"
#include "outlierlab/pathenc.hpp"
#include "outlierlab/precancel.hpp"
#include "outlierlab/sampler.hpp"
#include "outlierlab/spectral.hpp"

namespace olab {

namespace {

void parallel_for(std::int64_t total, std::int64_t threads,
                  const std::function<void(std::int64_t)>& fn) {
    if (threads <= 0)
        threads = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, total);
    if (threads <= 1) {
        for (std::int64_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (std::int64_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::int64_t i; (i = next.fetch_add(1)) < total;) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

BoundedDistribution default_distribution(DistKind kind) {
    return make_distribution(kind, dist_actual_bound_sq(kind, DistKind::rademacher, 1e-3));
}

} // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (n < 100) throw std::invalid_argument("n must be >= 100 for spectral experiments");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    for (std::size_t i = 1; i < c_grid.size(); ++i)
        if (!(c_grid[i] > c_grid[i - 1]))
            throw std::invalid_argument("c grid must be strictly increasing");
    if (c_grid.empty()) throw std::invalid_argument("c grid must be nonempty");
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const double logn = std::log(static_cast<double>(cfg.n));
    const std::int64_t total = static_cast<std::int64_t>(cfg.c_grid.size()) * cfg.trials;
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));
    parallel_for(total, cfg.threads, [&](std::int64_t idx) {
        const double c = cfg.c_grid[static_cast<std::size_t>(idx / cfg.trials)];
        const std::int64_t trial = idx % cfg.trials;
        const double np = c * logn;
        const double p = np / static_cast<double>(cfg.n);
        auto m = sample_er_adjacency(cfg.n, p,
                                     {cfg.master_seed, static_cast<std::uint64_t>(idx)});
        const auto spec = extreme_eigenvalues(m, cfg.k);
        const auto norms = row_norms_sq(m);
        const double max_sq = *std::max_element(norms.begin(), norms.end());
        const auto summary = rho(max_sq, np);
        SweepRow row;
        row.c = c;
        row.n = cfg.n;
        row.trial = trial;
        row.lambda_abs_k = std::abs(spec.eigenvalues.back().value);
        row.two_sqrt_np = 2.0 * std::sqrt(np);
        row.rho = summary.rho;
        row.rho_g_pred = rho_g_predictor(cfg.n, p);
        row.max_row_norm = std::sqrt(max_sq);
        row.max_degree = static_cast<std::int64_t>(std::llround(max_sq)); // adjacency atom
        row.converged = spec.converged;
        rows[static_cast<std::size_t>(idx)] = row;
    });
    return rows; // index order == sorted by (c, trial)
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "#schema=1\n";
    os << "c,n,trial,lambda_abs_k,two_sqrt_np,rho,rho_g_pred,max_row_norm,max_degree,"
          "converged\n";
    for (const auto& r : rows)
        os << num(r.c) << ',' << r.n << ',' << r.trial << ',' << num(r.lambda_abs_k) << ','
           << num(r.two_sqrt_np) << ',' << num(r.rho) << ',' << num(r.rho_g_pred) << ','
           << num(r.max_row_norm) << ',' << r.max_degree << ',' << (r.converged ? 1 : 0)
           << '\n';
}

PhaseReport phase_report_from_rows(const std::vector<SweepRow>& rows, double eps) {
    PhaseReport rep;
    std::map<double, std::vector<const SweepRow*>> by_c;
    for (const auto& r : rows) by_c[r.c].push_back(&r);
    for (const auto& [c, group] : by_c) {
        std::vector<double> ratios;
        std::int64_t outliers = 0;
        double pred = 0.0;
        for (const SweepRow* r : group) {
            ratios.push_back(r->lambda_abs_k / r->two_sqrt_np);
            if (r->lambda_abs_k > (1.0 + eps) * r->two_sqrt_np) ++outliers;
            pred = r->rho_g_pred / r->two_sqrt_np;
        }
        rep.c.push_back(c);
        rep.outlier_fraction.push_back(static_cast<double>(outliers) /
                                       static_cast<double>(group.size()));
        rep.median_ratio.push_back(median(ratios));
        rep.predictor_ratio.push_back(pred);
    }
    rep.crossing_c = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i + 1 < rep.c.size(); ++i) {
        const double f0 = rep.outlier_fraction[i], f1 = rep.outlier_fraction[i + 1];
        if (f0 >= 0.5 && f1 < 0.5) {
            const double t = (f0 - 0.5) / (f0 - f1);
            rep.crossing_c = rep.c[i] + t * (rep.c[i + 1] - rep.c[i]);
            break;
        }
    }
    return rep;
}

void write_phase_report(std::ostream& os, const PhaseReport& rep) {
    os << "#schema=1\n";
    os << "c,outlier_fraction,median_ratio,predictor_ratio\n";
    for (std::size_t i = 0; i < rep.c.size(); ++i)
        os << num(rep.c[i]) << ',' << num(rep.outlier_fraction[i]) << ','
           << num(rep.median_ratio[i]) << ',' << num(rep.predictor_ratio[i]) << '\n';
    os << "#crossing_c=" << num(rep.crossing_c) << '\n';
}

std::vector<SeginerRow> run_seginer(const ExperimentConfig& cfg) {
    cfg.validate();
    const double logn = std::log(static_cast<double>(cfg.n));
    const auto dist = default_distribution(cfg.dist);
    const std::int64_t total = static_cast<std::int64_t>(cfg.c_grid.size()) * cfg.trials;
    std::vector<SeginerRow> rows(static_cast<std::size_t>(total));
    parallel_for(total, cfg.threads, [&](std::int64_t idx) {
        const double c = cfg.c_grid[static_cast<std::size_t>(idx / cfg.trials)];
        const double p = c * logn / static_cast<double>(cfg.n);
        auto m = sample_sparse_wigner(cfg.n, p, dist, DiagMode::zero,
                                      {cfg.master_seed ^ 0x5e61ULL,
                                       static_cast<std::uint64_t>(idx)});
        rows[static_cast<std::size_t>(idx)] = {c, idx % cfg.trials, seginer_ratio(m)};
    });
    return rows;
}

void write_seginer_csv(std::ostream& os, const std::vector<SeginerRow>& rows) {
    os << "#schema=1\n";
    os << "c,trial,ratio\n";
    for (const auto& r : rows)
        os << num(r.c) << ',' << r.trial << ',' << num(r.ratio) << '\n';
}

std::vector<BbpRow> run_bbp(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<double> thetas = {0.5, 0.9, 1.5, 2.0, 3.0};
    const auto dist = default_distribution(cfg.dist);
    const std::int64_t total = static_cast<std::int64_t>(thetas.size()) * cfg.trials;
    std::vector<BbpRow> rows(static_cast<std::size_t>(total));
    parallel_for(total, cfg.threads, [&](std::int64_t idx) {
        const double theta = thetas[static_cast<std::size_t>(idx / cfg.trials)];
        auto dense = sample_deformed_wigner(cfg.n, {theta}, dist,
                                            {cfg.master_seed ^ 0xbb9ULL,
                                             static_cast<std::uint64_t>(idx)});
        SparseSymMatrix m(cfg.n, DiagMode::iid);
        for (std::int64_t i = 0; i < cfg.n; ++i)
            for (std::int64_t j = i; j < cfg.n; ++j) m.add_upper(i, j, dense(i, j));
        m.finalize();
        const auto spec = extreme_eigenvalues(m, 2);
        double lambda1 = -std::numeric_limits<double>::infinity();
        for (const auto& pair : spec.eigenvalues) lambda1 = std::max(lambda1, pair.value);
        rows[static_cast<std::size_t>(idx)] = {theta, idx % cfg.trials, lambda1,
                                               bbp_prediction(theta)};
    });
    return rows;
}

void write_bbp_csv(std::ostream& os, const std::vector<BbpRow>& rows) {
    os << "#schema=1\n";
    os << "theta,trial,lambda1,prediction\n";
    for (const auto& r : rows)
        os << num(r.theta) << ',' << r.trial << ',' << num(r.lambda1) << ','
           << num(r.prediction) << '\n';
}

PrecancelReport run_precancel(std::uint64_t master_seed, std::int64_t instances) {
    PrecancelReport rep;
    rep.ok = true;
    Rng rng({master_seed ^ 0x9ecaULL, 0});
    const AtomDist dists[] = {rademacher_atoms(), two_magnitude_atoms(0.6, 1.2)};
    for (std::int64_t t = 0; t < instances; ++t) {
        const AtomDist& dist = dists[t % 2];
        const double h = dist.bound_sq();
        const std::int64_t n = 3 + static_cast<std::int64_t>(rng.next_below(3));
        std::vector<Couple> all;
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::vector<Couple> e, s;
        const std::uint64_t want_s = rng.next_below(3);
        for (std::size_t tries = 0; tries < 20 && s.size() < want_s; ++tries) {
            const auto& cpl = all[rng.next_below(all.size())];
            if (used[static_cast<std::size_t>(cpl.first)] ||
                used[static_cast<std::size_t>(cpl.second)])
                continue;
            used[static_cast<std::size_t>(cpl.first)] = 1;
            used[static_cast<std::size_t>(cpl.second)] = 1;
            s.push_back(cpl);
            e.push_back(cpl);
        }
        const std::uint64_t extra = 1 + rng.next_below(3);
        for (std::uint64_t x = 0; x < extra; ++x) {
            const auto& cpl = all[rng.next_below(all.size())];
            if (std::find(s.begin(), s.end(), cpl) != s.end()) continue;
            const std::uint64_t mult = 1 + rng.next_below(3);
            for (std::uint64_t z = 0; z < mult; ++z) e.push_back(cpl);
        }
        const double r = h * (1.0 + rng.next_unit() * static_cast<double>(n - 1));
        const auto res = precancel_check(n, e, s, r, dist);
        PrecancelInstanceRow row;
        row.n = n;
        row.edges = static_cast<std::int64_t>(e.size());
        row.couples = static_cast<std::int64_t>(s.size());
        row.r = r;
        row.lhs = res.lhs;
        row.rhs = res.rhs;
        row.ok = std::abs(res.lhs - res.rhs) <= 1e-12;
        if (!row.ok) rep.ok = false;
        if (!s.empty() && res.prob_e > 0.0 && res.prob_e < 1.0) ++rep.nontrivial;
        rep.instances.push_back(row);
    }
    return rep;
}

void write_precancel_report(std::ostream& os, const PrecancelReport& rep) {
    os << "#schema=1\n";
    os << "n,edges,couples,r,lhs,rhs,ok\n";
    for (const auto& r : rep.instances)
        os << r.n << ',' << r.edges << ',' << r.couples << ',' << num(r.r) << ','
           << num(r.lhs) << ',' << num(r.rhs) << ',' << (r.ok ? 1 : 0) << '\n';
    os << "#nontrivial=" << rep.nontrivial << '\n';
    os << "#result=" << (rep.ok ? "equal" : "MISMATCH") << '\n';
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

Graph random_connected(Rng& rng, std::int64_t n, std::int64_t extra) {
    Graph g(n);
    std::vector<std::pair<std::int64_t, std::int64_t>> present;
    for (std::int64_t v = 1; v < n; ++v) {
        const auto u = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(v)));
        g.add_edge(u, v);
        present.emplace_back(u, v);
    }
    std::int64_t attempts = 0;
    while (extra > 0 && ++attempts < 200) {
        auto a = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
        auto b = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (std::find(present.begin(), present.end(), std::make_pair(a, b)) != present.end())
            continue;
        g.add_edge(a, b);
        present.emplace_back(a, b);
        --extra;
    }
    g.finalize();
    return g;
}

SparseSymMatrix random_edge_matrix(const Graph& g, Rng& rng) {
    SparseSymMatrix m(g.vertex_count(), DiagMode::zero);
    for (const auto& [a, b] : g.edges()) {
        const double mag = 0.3 + 0.7 * rng.next_unit_open();
        m.add_upper(a, b, rng.next_bool() ? mag : -mag);
    }
    m.finalize();
    return m;
}

// Random non-increasing vector in R(h, gamma, s): clipped geometric decay
// with random l1 target.
std::vector<double> adversarial_vector(Rng& rng, double h, double gamma, double s) {
    const auto len = 1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(s)));
    std::vector<double> x(static_cast<std::size_t>(len));
    double top = (rng.next_below(3) == 0) ? h : h * rng.next_unit_open();
    const double decay = 0.5 + 0.5 * rng.next_unit();
    for (auto& v : x) {
        v = top;
        top *= decay * rng.next_unit_open();
    }
    double l1 = 0.0;
    for (double v : x) l1 += v;
    const double budget = gamma * (0.2 + 0.8 * rng.next_unit());
    if (l1 > budget)
        for (auto& v : x) v *= budget / l1;
    if (x[0] > h)
        for (auto& v : x) v *= h / x[0];
    return x;
}

SuiteResult suite_dyck() {
    SuiteResult res{"dyck", true, ""};
    for (std::int64_t k = 1; k <= 8 && res.ok; ++k) {
        BigCount total = 0;
        for (std::int64_t u = 1; u <= k; ++u) {
            DyckConstraints c;
            c.exact_returns = u;
            if (dyck_count_returns(k, u) !=
                static_cast<std::int64_t>(enumerate_dyck(k, c).size())) {
                res.ok = false;
                res.detail = "return-count formula mismatch at k=" + std::to_string(k);
            }
            total += dyck_count_returns(k, u);
        }
        if (res.ok && total != catalan(k)) {
            res.ok = false;
            res.detail = "catalan identity broken at k=" + std::to_string(k);
        }
    }
    for (std::int64_t k = 9; k <= 30 && res.ok; ++k) {
        BigCount total = 0;
        for (std::int64_t u = 1; u <= k; ++u) total += dyck_count_returns(k, u);
        if (total != catalan(k)) {
            res.ok = false;
            res.detail = "catalan identity broken at k=" + std::to_string(k);
        }
    }
    for (std::int64_t p = 1; p <= 20 && res.ok; ++p)
        for (double l : {1.2, 2.0, 3.0, 5.0})
            if (!binomial_sum_check(p, l).ok) {
                res.ok = false;
                res.detail = "binomial sum bound fails at p=" + std::to_string(p);
            }
    for (std::int64_t k = 1; k <= 12 && res.ok; ++k)
        for (double dt : {1.5, 3.0, 10.0})
            if (!toy_norm_bound(1.0, dt, k).ok) {
                res.ok = false;
                res.detail = "tree norm bound fails at k=" + std::to_string(k);
            }
    if (res.ok) res.detail = "formulas = enumeration, identities hold";
    return res;
}

SuiteResult suite_majorizer(std::uint64_t seed) {
    SuiteResult res{"majorizer", true, ""};
    const double params[][4] = {{4, 100, 50, 0.5}, {2, 64, 80, 0.25}, {9, 400, 120, 0.4}};
    for (const auto& p : params) {
        const auto net = build_net(p[0], p[1], p[2], p[3]);
        Rng rng({seed ^ 0x3a70ULL, static_cast<std::uint64_t>(p[0] * 1000)});
        for (int t = 0; t < 200 && res.ok; ++t) {
            const auto x = adversarial_vector(rng, p[0], p[1], p[2]);
            const auto y = classify(x, net);
            if (!dominates(y, x) || !net_contains(net, y) ||
                y.l1() > (1.0 + p[3]) * p[1] * (1.0 + 1e-12)) {
                res.ok = false;
                res.detail = "coverage failure at h=" + std::to_string(p[0]);
            }
        }
    }
    for (DistKind kind : {DistKind::rademacher, DistKind::uniform_symmetric}) {
        const auto dist = default_distribution(kind);
        const double h = dist.bound_sq;
        for (double kappa : {50.0, 200.0}) {
            const auto y = standard_majorizer(dist, h, kappa, 0.1);
            const double l1 = y.l1();
            if (!(kappa - h <= l1 + 1e-9 && l1 <= kappa + (1.0 + 0.1 * kappa) * h + 1e-9)) {
                res.ok = false;
                res.detail = "standard majorizer bracket fails at kappa=" + std::to_string(kappa);
            }
        }
    }
    if (res.ok) res.detail = "600 adversarial vectors covered, brackets hold";
    return res;
}

SuiteResult suite_pathenc(std::uint64_t seed) {
    SuiteResult res{"pathenc", true, ""};
    Rng rng({seed ^ 0x9a7eULL, 0});
    const auto net = build_net(2.0, 40.0, 40.0, 0.5);
    Majorizer flat;
    flat.levels.assign(3, 0.6);
    std::int64_t paths_checked = 0;
    for (int trial = 0; trial < 4 && res.ok; ++trial) {
        Graph g = (trial == 0) ? [] {
            Graph k4(4);
            for (std::int64_t i = 0; i < 4; ++i)
                for (std::int64_t j = i + 1; j < 4; ++j) k4.add_edge(i, j);
            k4.finalize();
            return k4;
        }()
                                : random_connected(rng, 6, 3);
        auto m = random_edge_matrix(g, rng);
        const auto paths = enumerate_closed_paths(g, 6);
        auto rep = check_injectivity(paths, g, m, flat, net);
        if (!rep.ok) {
            res.ok = false;
            res.detail = "encoding collision";
            break;
        }
        const std::size_t stride = std::max<std::size_t>(1, paths.size() / 60);
        for (std::size_t i = 0; i < paths.size(); i += stride) {
            auto ds = encode(paths[i], g, m, flat, net);
            const double w = std::abs(path_weight(paths[i], m));
            if (w > structure_weight_bound(ds, flat, 2.0) * (1.0 + 1e-12)) {
                res.ok = false;
                res.detail = "weight bound violated";
                break;
            }
            auto props = verify_structure_props(paths[i], ds);
            if (!props.ok) {
                res.ok = false;
                res.detail = "structure property: " + props.violation;
                break;
            }
            ++paths_checked;
        }
    }
    if (res.ok)
        res.detail = "injective, " + std::to_string(paths_checked) + " paths bounded";
    return res;
}

SuiteResult suite_graphcomb(std::uint64_t seed) {
    SuiteResult res{"graphcomb", true, ""};
    Rng rng({seed ^ 0x6c0bULL, 0});
    for (int trial = 0; trial < 10 && res.ok; ++trial) {
        auto g = random_connected(rng, 8 + static_cast<std::int64_t>(rng.next_below(5)),
                                  2 + static_cast<std::int64_t>(rng.next_below(4)));
        // separated sets are pairwise far apart (BFS check)
        const auto sep = max_r_separated(g, 3);
        std::vector<std::int64_t> dist(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t a = 0; a < sep.size() && res.ok; ++a) {
            std::fill(dist.begin(), dist.end(), -1);
            std::vector<std::int64_t> queue{sep[a]};
            dist[static_cast<std::size_t>(sep[a])] = 0;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const auto u = queue[head];
                for (const auto& [w, eid] : g.adj(u)) {
                    (void)eid;
                    if (dist[static_cast<std::size_t>(w)] < 0) {
                        dist[static_cast<std::size_t>(w)] =
                            dist[static_cast<std::size_t>(u)] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (std::size_t b = a + 1; b < sep.size(); ++b)
                if (dist[static_cast<std::size_t>(sep[b])] >= 0 &&
                    dist[static_cast<std::size_t>(sep[b])] <= 3) {
                    res.ok = false;
                    res.detail = "separated set too close";
                }
        }
        // half of any admissible edge set can be removed keeping connectivity;
        // admissible = cycle edges touching a connected subgraph but not in it
        const auto mask = cycle_edge_mask(g);
        const std::int64_t n = g.vertex_count();
        const auto root = static_cast<std::int64_t>(
            rng.next_below(static_cast<std::uint64_t>(n)));
        const auto want =
            1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
        std::vector<bool> in_tree_v(static_cast<std::size_t>(n), false);
        std::vector<bool> in_tree_e(static_cast<std::size_t>(g.edge_count()), false);
        std::vector<std::int64_t> frontier{root};
        in_tree_v[static_cast<std::size_t>(root)] = true;
        std::int64_t tree_size = 1;
        for (std::size_t head = 0; head < frontier.size() && tree_size < want; ++head) {
            for (const auto& [u, id] : g.adj(frontier[head])) {
                if (tree_size >= want) break;
                if (!in_tree_v[static_cast<std::size_t>(u)]) {
                    in_tree_v[static_cast<std::size_t>(u)] = true;
                    in_tree_e[static_cast<std::size_t>(id)] = true;
                    frontier.push_back(u);
                    ++tree_size;
                }
            }
        }
        std::vector<std::int64_t> cyc;
        for (std::int64_t e = 0; e < g.edge_count(); ++e) {
            if (!mask[static_cast<std::size_t>(e)] ||
                in_tree_e[static_cast<std::size_t>(e)])
                continue;
            const auto [a, b] = g.edges()[static_cast<std::size_t>(e)];
            if ((in_tree_v[static_cast<std::size_t>(a)] ||
                 in_tree_v[static_cast<std::size_t>(b)]) &&
                cyc.size() < 12)
                cyc.push_back(e);
        }
        if (!cyc.empty()) {
            const auto half = find_removable_half(g, cyc);
            if (!half.ok ||
                static_cast<std::int64_t>(half.removed.size()) <
                    (static_cast<std::int64_t>(cyc.size()) + 1) / 2) {
                res.ok = false;
                res.detail = "removable-half failure";
            }
        }
    }
    if (res.ok) res.detail = "separation and removable-half hold on 10 graphs";
    return res;
}

SuiteResult suite_precancel(std::uint64_t seed) {
    SuiteResult res{"precancel", true, ""};
    const auto rep = run_precancel(seed, 20);
    res.ok = rep.ok;
    res.detail = rep.ok ? "20 instances equal to 1e-12" : "cancellation identity violated";
    return res;
}

SuiteResult suite_interlacing(std::uint64_t seed) {
    SuiteResult res{"interlacing", true, ""};
    const std::int64_t n = 2000;
    const double np = 6.0;
    for (int t = 0; t < 5; ++t) {
        auto m = sample_er_adjacency(n, np / static_cast<double>(n),
                                     {seed ^ 0x11acULL, static_cast<std::uint64_t>(t)});
        auto cert = lower_bound_certificate(m, 2, 1, 1.1 * np, np, 0.1);
        if (!cert.failure.empty() || !cert.ok ||
            cert.min_rayleigh > cert.lambda_k + 1e-6) {
            res.ok = false;
            res.detail = cert.failure.empty() ? "interlacing violated" : cert.failure;
            break;
        }
    }
    if (res.ok) res.detail = "5/5 certificates interlace";
    return res;
}

} // namespace

VerifyReport verify_all(std::uint64_t master_seed, const std::string& suite_filter) {
    VerifyReport rep;
    const std::vector<std::pair<std::string, std::function<SuiteResult()>>> suites = {
        {"dyck", [&] { return suite_dyck(); }},
        {"majorizer", [&] { return suite_majorizer(master_seed); }},
        {"pathenc", [&] { return suite_pathenc(master_seed); }},
        {"graphcomb", [&] { return suite_graphcomb(master_seed); }},
        {"precancel", [&] { return suite_precancel(master_seed); }},
        {"interlacing", [&] { return suite_interlacing(master_seed); }},
    };
    bool matched = false;
    rep.ok = true;
    for (const auto& [name, fn] : suites) {
        if (!suite_filter.empty() && name != suite_filter) continue;
        matched = true;
        rep.suites.push_back(fn());
        if (!rep.suites.back().ok) rep.ok = false;
    }
    if (!matched) throw std::invalid_argument("unknown suite: " + suite_filter);
    return rep;
}

void write_verify_report(std::ostream& os, const VerifyReport& rep) {
    for (const auto& s : rep.suites)
        os << "suite " << s.name << ": " << (s.ok ? "PASS" : "FAIL") << " (" << s.detail
           << ")\n";
    os << "verify: " << (rep.ok ? "OK" : "FALSIFIED") << '\n';
}

CertificateResult run_lowerbound_demo(const ExperimentConfig& cfg) {
    cfg.validate();
    const double np = cfg.c_grid.front() * std::log(static_cast<double>(cfg.n));
    auto m = sample_er_adjacency(cfg.n, np / static_cast<double>(cfg.n),
                                 {cfg.master_seed ^ 0x10bULL, 0});
    return lower_bound_certificate(m, cfg.k, 3, 1.1 * np, np, 0.1);
}

// ---------------------------------------------------------------------------
// plotting

namespace {

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

void emit_plot(std::istream& csv, std::ostream& svg) {
    std::string line;
    bool header_seen = false;
    // per c (file order): medians of rho, predictor and lambda over sqrt(np)
    std::vector<double> cs;
    std::vector<std::array<std::vector<double>, 3>> samples;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("c,n,trial,lambda_abs_k", 0) != 0)
                throw std::runtime_error("not a sweep CSV (unexpected header)");
            header_seen = true;
            continue;
        }
        std::vector<double> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(std::stod(cell));
        if (f.size() < 10) throw std::runtime_error("short sweep CSV row");
        const double c = f[0], lambda = f[3], sqrt_np = f[4] / 2.0, rho_v = f[5],
                     pred = f[6];
        if (cs.empty() || cs.back() != c) {
            cs.push_back(c);
            samples.emplace_back();
        }
        samples.back()[0].push_back(rho_v / sqrt_np);
        samples.back()[1].push_back(pred / sqrt_np);
        samples.back()[2].push_back(lambda / sqrt_np);
    }
    if (cs.empty()) throw std::runtime_error("empty sweep CSV");

    std::array<std::vector<double>, 3> series;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (int s = 0; s < 3; ++s) {
            const double v = median(samples[i][static_cast<std::size_t>(s)]);
            series[static_cast<std::size_t>(s)].push_back(v);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    const double xmin = cs.front(), xmax = cs.back();
    const double xpad = (xmax > xmin) ? 0.0 : 0.5;
    const double ypad = (ymax > ymin) ? 0.05 * (ymax - ymin) : 0.5;
    const double x0 = xmin - xpad, x1 = xmax + xpad;
    const double y0 = ymin - ypad, y1 = ymax + ypad;
    const double left = 70, right = 920, top = 30, bottom = 500;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
    auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"960\" "
           "height=\"540\" viewBox=\"0 0 960 540\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"white\"/>\n";
    svg << "<line x1=\"70\" y1=\"500\" x2=\"920\" y2=\"500\" stroke=\"black\"/>\n";
    svg << "<line x1=\"70\" y1=\"30\" x2=\"70\" y2=\"500\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double xv = x0 + (x1 - x0) * t / 5.0;
        const double yv = y0 + (y1 - y0) * t / 5.0;
        svg << "<line x1=\"" << coord(px(xv)) << "\" y1=\"500\" x2=\"" << coord(px(xv))
            << "\" y2=\"505\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << coord(px(xv))
            << "\" y=\"520\" font-size=\"12\" text-anchor=\"middle\">" << tick_label(xv)
            << "</text>\n";
        svg << "<line x1=\"65\" y1=\"" << coord(py(yv)) << "\" x2=\"70\" y2=\""
            << coord(py(yv)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"60\" y=\"" << coord(py(yv) + 4.0)
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"495\" y=\"538\" font-size=\"13\" text-anchor=\"middle\">c = np / log "
           "n</text>\n";
    const char* colors[3] = {"#1f77b4", "#2ca02c", "#d62728"};
    const char* labels[3] = {"rho / sqrt(np)", "predictor / sqrt(np)",
                             "|lambda_k| / sqrt(np)"};
    for (int s = 0; s < 3; ++s) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[s]
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) svg << ' ';
            svg << coord(px(cs[i])) << ',' << coord(py(series[static_cast<std::size_t>(s)][i]));
        }
        svg << "\"/>\n";
        const double ly = 50 + 20 * s;
        svg << "<line x1=\"760\" y1=\"" << coord(ly) << "\" x2=\"790\" y2=\"" << coord(ly)
            << "\" stroke=\"" << colors[s] << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"796\" y=\"" << coord(ly + 4.0) << "\" font-size=\"12\">"
            << labels[s] << "</text>\n";
    }
    svg << "</svg>\n";
}

} // namespace olab
