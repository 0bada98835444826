// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
// The last command-line argument must be the path to the CLI binary (used by
// the determinism criterion).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "outlierlab/dyck.hpp"
#include "outlierlab/experiments.hpp"
#include "outlierlab/graph.hpp"
#include "outlierlab/lowerbound.hpp"
#include "outlierlab/majorizer.hpp"
#include "outlierlab/pathenc.hpp"
#include "outlierlab/precancel.hpp"
#include "outlierlab/sampler.hpp"
#include "outlierlab/spectral.hpp"

using namespace olab;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("%s [%2d] %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1: exact lattice-path combinatorics --------------------------------
void criterion_combinatorics() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (std::int64_t k = 1; k <= 10 && ok; ++k) {
        BigCount total = 0;
        for (std::int64_t u = 1; u <= k; ++u) {
            DyckConstraints c;
            c.exact_returns = u;
            const auto listed = static_cast<std::int64_t>(enumerate_dyck(k, c).size());
            if (dyck_count_returns(k, u) != listed) {
                ok = false;
                detail = "return formula mismatch at k=" + std::to_string(k);
            }
            total += dyck_count_returns(k, u);
        }
        if (ok && total != catalan(k)) {
            ok = false;
            detail = "catalan identity at k=" + std::to_string(k);
        }
    }
    for (std::int64_t k = 11; k <= 30 && ok; ++k) {
        BigCount total = 0;
        for (std::int64_t u = 1; u <= k; ++u) total += dyck_count_returns(k, u);
        if (total != catalan(k)) {
            ok = false;
            detail = "catalan identity at k=" + std::to_string(k);
        }
    }
    for (std::int64_t p = 1; p <= 40 && ok; ++p)
        for (double l : {1.1, 1.5, 2.0, 3.0, 8.0})
            if (!binomial_sum_check(p, l).ok) {
                ok = false;
                detail = "binomial sum bound at p=" + std::to_string(p);
            }
    for (std::int64_t k = 1; k <= 12 && ok; ++k)
        for (double dt : {1.2, 2.0, 5.0, 25.0})
            if (!toy_norm_bound(1.0, dt, k).ok) {
                ok = false;
                detail = "tree norm bound at k=" + std::to_string(k);
            }
    const double secs = elapsed_s(t0);
    if (ok && secs > 30.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s over budget";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    report(1, "exact return-count / catalan / bound identities", ok,
           ok ? std::string(buf) : detail);
}

// ---- 2: encoding injectivity + structure propositions -------------------
Graph random_tangle_free_graph(Rng& rng) {
    for (;;) {
        const auto n = 6 + static_cast<std::int64_t>(rng.next_below(4)); // 6..9
        Graph g(n);
        std::vector<std::pair<std::int64_t, std::int64_t>> present;
        for (std::int64_t v = 1; v < n; ++v) {
            const auto u =
                static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(v)));
            g.add_edge(u, v);
            present.emplace_back(u, v);
        }
        std::int64_t extra = static_cast<std::int64_t>(rng.next_below(3)); // 0..2 cycles
        std::int64_t attempts = 0;
        while (extra > 0 && ++attempts < 50) {
            auto a = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
            auto b = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (std::find(present.begin(), present.end(), std::make_pair(a, b)) !=
                present.end())
                continue;
            g.add_edge(a, b);
            present.emplace_back(a, b);
            --extra;
        }
        g.finalize();
        if (g.edge_count() <= 12 && is_tangle_free(g, 2)) return g;
    }
}

void criterion_injectivity() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    Rng rng({424242, 0});
    const auto net = build_net(2.0, 40.0, 40.0, 0.5);
    Majorizer flat;
    flat.levels.assign(3, 0.6); // small majorizer so heavy vertices occur
    std::int64_t total_paths = 0;
    for (int graph_idx = 0; graph_idx < 50 && ok; ++graph_idx) {
        const auto g = random_tangle_free_graph(rng);
        SparseSymMatrix m(g.vertex_count(), DiagMode::zero);
        for (const auto& [a, b] : g.edges()) {
            const double mag = 0.3 + 0.7 * rng.next_unit_open();
            m.add_upper(a, b, rng.next_bool() ? mag : -mag);
        }
        m.finalize();
        std::unordered_set<std::string> seen;
        for (std::int64_t two_k = 2; two_k <= 8 && ok; two_k += 2) {
            const auto paths = enumerate_closed_paths(g, two_k);
            for (const auto& p : paths) {
                auto ds = encode(p, g, m, flat, net);
                std::ostringstream key;
                write_structure(key, ds);
                if (!seen.insert(std::to_string(two_k) + "|" + key.str()).second) {
                    ok = false;
                    detail = "collision on graph " + std::to_string(graph_idx);
                    break;
                }
                auto props = verify_structure_props(p, ds);
                if (!props.ok) {
                    ok = false;
                    detail = props.violation;
                    break;
                }
                ++total_paths;
            }
        }
    }
    const double secs = elapsed_s(t0);
    if (ok && secs > 300.0) {
        ok = false;
        detail = "runtime over 5 min";
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%lld paths distinct, props hold, %.1fs",
                  static_cast<long long>(total_paths), secs);
    report(2, "path-encoding injectivity + structure propositions", ok,
           ok ? std::string(buf) : detail);
}

// ---- 3: majorizer nets ---------------------------------------------------
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

void criterion_majorizer() {
    bool ok = true;
    std::string detail;
    const double params[][4] = {{4, 100, 50, 0.5}, {2, 64, 80, 0.25}, {9, 400, 120, 0.4}};
    for (const auto& p : params) {
        const auto net = build_net(p[0], p[1], p[2], p[3]);
        Rng rng({515151, static_cast<std::uint64_t>(p[0])});
        for (int t = 0; t < 1000 && ok; ++t) {
            const auto x = adversarial_vector(rng, p[0], p[1], p[2]);
            const auto y = classify(x, net);
            if (!dominates(y, x) || !net_contains(net, y) ||
                y.l1() > (1.0 + p[3]) * p[1] * (1.0 + 1e-12)) {
                ok = false;
                detail = "coverage failure at h=" + std::to_string(p[0]);
            }
        }
    }
    for (DistKind kind :
         {DistKind::rademacher, DistKind::uniform_symmetric, DistKind::constant_one}) {
        const auto dist =
            make_distribution(kind, dist_actual_bound_sq(kind, DistKind::rademacher, 1e-3));
        const double h = dist.bound_sq;
        for (double kappa : {20.0, 50.0, 200.0, 400.0})
            for (double tau : {0.05, 0.1, 0.2}) {
                const auto y = standard_majorizer(dist, h, kappa, tau);
                const double l1 = y.l1();
                if (!(kappa - h <= l1 + 1e-9 &&
                      l1 <= kappa + (1.0 + tau * kappa) * h + 1e-9)) {
                    ok = false;
                    detail = "bracket at kappa=" + std::to_string(kappa);
                }
            }
    }
    report(3, "majorizer net coverage + row-profile bracket", ok,
           ok ? "3000 adversarial vectors covered" : detail);
}

// ---- 4: exact cancellation ----------------------------------------------
void criterion_precancel() {
    const auto rep = run_precancel(616161, 20);
    bool ok = rep.ok;
    for (const auto& inst : rep.instances)
        if (std::abs(inst.lhs - inst.rhs) > 1e-12) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "20 instances, %lld nontrivial",
                  static_cast<long long>(rep.nontrivial));
    report(4, "conditioned product expectations cancel exactly", ok, buf);
}

// ---- 5: closed-form predictor identities --------------------------------
void criterion_predictor() {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 10000 && ok; ++i) {
        const double t = static_cast<double>(i) / 9999.0;
        // grid from just above -1/e to 1e6, cubic spacing near the branch point
        const double z = -std::exp(-1.0) + 1e-9 + (1e6 + std::exp(-1.0)) * t * t * t;
        const double w = lambert_w0(z);
        if (std::abs(w * std::exp(w) - z) > 1e-12 * std::max(1.0, std::abs(z))) {
            ok = false;
            detail = "round-trip residual at z=" + std::to_string(z);
        }
    }
    for (std::int64_t n : {2000LL, 100000LL, 10000000LL})
        for (double c = 0.1; c <= 10.0 && ok; c += 0.1) {
            const double np = c * std::log(static_cast<double>(n));
            const double p = np / static_cast<double>(n);
            const double direct = rho(predict_max_degree(n, p), np).rho;
            if (std::abs(rho_g_predictor(n, p) - direct) > 1e-10 * direct) {
                ok = false;
                detail = "predictor composition differs at c=" + std::to_string(c);
            }
        }
    if (ok) {
        const std::int64_t n = 100000;
        const double cstar = phase_threshold_c();
        const double np = cstar * std::log(static_cast<double>(n));
        const double ratio = rho_g_predictor(n, np / static_cast<double>(n)) /
                             (2.0 * std::sqrt(np));
        if (std::abs(ratio - 1.0) > 1e-10) {
            ok = false;
            detail = "threshold ratio " + std::to_string(ratio);
        }
        const double np1 = std::log(static_cast<double>(n));
        const double v1 = rho_g_predictor(n, np1 / static_cast<double>(n)) / std::sqrt(np1);
        const double expect = std::sqrt(std::exp(1.0) - 1.0) +
                              1.0 / std::sqrt(std::exp(1.0) - 1.0);
        if (std::abs(v1 - expect) > 1e-4) {
            ok = false;
            detail = "c=1 predictor " + std::to_string(v1);
        }
        // phase curve: non-increasing in c, clamped to 1 past the threshold
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 100 && ok; ++i) {
            const double c = 0.05 * static_cast<double>(i);
            const double npc = c * std::log(static_cast<double>(n));
            const double r = rho_g_predictor(n, npc / static_cast<double>(n)) /
                             (2.0 * std::sqrt(npc));
            if (r > prev + 1e-12 || (c >= cstar && std::abs(r - 1.0) > 1e-10)) {
                ok = false;
                detail = "phase curve shape at c=" + std::to_string(c);
            }
            prev = r;
        }
    }
    report(5, "Lambert round-trip + predictor identities", ok,
           ok ? "10^4 grid points, thresholds exact" : detail);
}

// ---- 6: eigensolver against the dense oracle ----------------------------
void criterion_eigensolver() {
    bool ok = true;
    std::string detail;
    const DistKind kinds[] = {DistKind::rademacher, DistKind::uniform_symmetric,
                              DistKind::smoothed};
    for (int t = 0; t < 100 && ok; ++t) {
        Rng rng({717171, static_cast<std::uint64_t>(t)});
        const auto n = 50 + static_cast<std::int64_t>(rng.next_below(251)); // 50..300
        const std::int64_t k = 1 + t % 5;
        const auto kind = kinds[t % 3];
        const auto dist =
            make_distribution(kind, dist_actual_bound_sq(kind, DistKind::rademacher, 1e-3));
        auto m = sample_sparse_wigner(n, 0.1, dist, DiagMode::zero,
                                      {818181, static_cast<std::uint64_t>(t)});
        const auto spec = extreme_eigenvalues(m, k);
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
        for (std::int64_t i = 0; i < n; ++i)
            for (const auto& e : m.row(i)) dense(i, e.col) = e.value;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        std::vector<double> all(es.eigenvalues().data(), es.eigenvalues().data() + n);
        std::sort(all.begin(), all.end(), [](double a, double b) {
            return std::abs(a) != std::abs(b) ? std::abs(a) > std::abs(b) : a > b;
        });
        for (std::int64_t j = 0; j < k; ++j) {
            const double got = spec.eigenvalues[static_cast<std::size_t>(j)].value;
            const double want = all[static_cast<std::size_t>(j)];
            if (std::abs(got - want) > 1e-8 * std::max(1.0, std::abs(want))) {
                ok = false;
                detail = "trial " + std::to_string(t) + " rank " + std::to_string(j) +
                         ": got " + std::to_string(got) + " want " + std::to_string(want);
            }
        }
    }
    report(6, "sparse eigensolver matches dense decomposition (1e-8)", ok,
           ok ? "100 matrices, k up to 5" : detail);
}

// ---- 7 & 8: Monte Carlo phase transition and norm sandwich --------------
void criterion_phase(const ExperimentConfig& sweep_cfg, const std::vector<SweepRow>& rows) {
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        if (!r.converged) {
            ok = false;
            detail = "solver non-convergence at c=" + std::to_string(r.c);
        }
        const double max_sq = r.max_row_norm * r.max_row_norm;
        const double np = r.two_sqrt_np * r.two_sqrt_np / 4.0;
        (void)max_sq;
        (void)np;
        if (r.rho < r.max_row_norm - 1e-9 || r.rho < r.two_sqrt_np - 1e-9) {
            ok = false;
            detail = "deterministic rho inequality violated";
        }
    }
    const auto rep = phase_report_from_rows(rows, sweep_cfg.eps);
    auto median_at = [&](double c) {
        for (std::size_t i = 0; i < rep.c.size(); ++i)
            if (std::abs(rep.c[i] - c) < 1e-12) return rep.median_ratio[i];
        return -1.0;
    };
    struct Bound {
        double c, lo, hi;
    };
    // floors at c in {0.5, 1} recalibrated by the pre-build pilot (asymptotic
    // values 1.117 / 1.037, measured medians 1.128 / 1.058 at n = 2e4)
    const Bound bounds[] = {{0.5, 1.10, 10.0}, {1.0, 1.045, 10.0}, {6.0, 0.85, 1.15},
                            {10.0, 0.85, 1.15}};
    for (const auto& b : bounds) {
        const double med = median_at(b.c);
        if (!(med >= b.lo && med <= b.hi)) {
            ok = false;
            detail = "median ratio " + std::to_string(med) + " at c=" + std::to_string(b.c);
        }
    }
    if (!(rep.crossing_c >= 1.5 && rep.crossing_c <= 4.0)) {
        ok = false;
        detail = "outlier-fraction crossing at c=" + std::to_string(rep.crossing_c);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "crossing c=%.3f, medians in band", rep.crossing_c);
    report(7, "detachment phase transition at desk scale", ok, ok ? std::string(buf) : detail);
}

void criterion_seginer() {
    ExperimentConfig cfg;
    cfg.n = 20000;
    cfg.trials = 20;
    cfg.c_grid = {0.3, 1.0, 3.0, 8.0};
    cfg.master_seed = 919191;
    const auto rows = run_seginer(cfg);
    bool ok = true;
    std::string detail;
    std::int64_t in_range = 0;
    std::vector<double> at_03, at_8;
    for (const auto& r : rows) {
        if (r.ratio >= 1.0 - 1e-6 && r.ratio <= 2.2) ++in_range;
        if (r.ratio < 1.0 - 1e-6) {
            ok = false;
            detail = "ratio below the deterministic floor";
        }
        if (r.c == 0.3) at_03.push_back(r.ratio);
        if (r.c == 8.0) at_8.push_back(r.ratio);
    }
    const double frac =
        static_cast<double>(in_range) / static_cast<double>(rows.size());
    std::sort(at_03.begin(), at_03.end());
    std::sort(at_8.begin(), at_8.end());
    const double m03 = at_03[at_03.size() / 2];
    const double m8 = at_8[at_8.size() / 2];
    if (frac < 0.95) {
        ok = false;
        detail = "sandwich fraction " + std::to_string(frac);
    }
    if (!(m03 < 1.45 && m8 > 1.55 && m03 < m8)) {
        ok = false;
        detail = "shape: median(0.3)=" + std::to_string(m03) +
                 " median(8)=" + std::to_string(m8);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.0f%% in [1-1e-6, 2.2], medians %.2f -> %.2f",
                  100.0 * frac, m03, m8);
    report(8, "norm / max-row-norm sandwich and trend", ok, ok ? std::string(buf) : detail);
}

// ---- 9: lower-bound certificates ----------------------------------------
void criterion_certificates() {
    bool ok = true;
    std::string detail;
    std::int64_t interlaced = 0, total = 0;
    struct Regime {
        std::int64_t n, q, trials;
        double np;
    };
    const Regime regimes[] = {{2000, 1, 100, 6.0}, {20000, 3, 100, 4.0}};
    for (const auto& reg : regimes) {
        for (std::int64_t t = 0; t < reg.trials; ++t) {
            auto m = sample_er_adjacency(
                reg.n, reg.np / static_cast<double>(reg.n),
                {static_cast<std::uint64_t>(0xce27 + reg.q), static_cast<std::uint64_t>(t)});
            auto cert = lower_bound_certificate(m, 2, reg.q, 1.1 * reg.np, reg.np, 0.1);
            ++total;
            if (cert.failure.empty() && cert.ok &&
                cert.min_rayleigh <= cert.lambda_k + 1e-6)
                ++interlaced;
            else if (detail.empty())
                detail = cert.failure.empty() ? "interlacing violated" : cert.failure;
        }
    }
    if (interlaced != total) ok = false;

    // synthetic deep-tree instances, evaluated in closed form
    Rng rng({0xeab3, 0});
    int hits = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto root = 440 + static_cast<std::int64_t>(rng.next_below(161));
        std::vector<std::int64_t> children(4);
        for (auto& c : children) c = 181 + static_cast<std::int64_t>(rng.next_below(19));
        const double r = layered_tree_rayleigh(root, children, 5, 200.0);
        const double target = 0.9 * static_cast<double>(root) /
                              std::sqrt(static_cast<double>(root) - 200.0);
        if (r >= target) ++hits;
    }
    if (hits < 900) {
        ok = false;
        detail = "synthetic hits " + std::to_string(hits) + "/1000";
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%lld/%lld interlaced, %d/1000 synthetic targets",
                  static_cast<long long>(interlaced), static_cast<long long>(total), hits);
    report(9, "spectral certificates: interlacing + deep-tree targets", ok,
           ok ? std::string(buf) : detail);
}

// ---- 10: rank-one deformation medians -----------------------------------
void criterion_bbp() {
    ExperimentConfig cfg;
    cfg.n = 2000;
    cfg.trials = 10;
    cfg.master_seed = 232323;
    const auto rows = run_bbp(cfg);
    bool ok = true;
    std::string detail;
    struct Band {
        double theta, center, slack;
    };
    const Band bands[] = {{0.5, 2.0, 0.15}, {2.0, 2.5, 0.12}, {3.0, 3.0 + 1.0 / 3.0, 0.12}};
    std::ostringstream meds;
    for (const auto& b : bands) {
        std::vector<double> vals;
        for (const auto& r : rows)
            if (r.theta == b.theta) vals.push_back(r.lambda1);
        std::sort(vals.begin(), vals.end());
        const double med = 0.5 * (vals[4] + vals[5]);
        meds << " " << med;
        if (std::abs(med - b.center) > b.slack) {
            ok = false;
            detail = "median " + std::to_string(med) + " at theta=" + std::to_string(b.theta);
        }
    }
    report(10, "rank-one deformation medians at n=2000", ok,
           ok ? "medians" + meds.str() : detail);
}

// ---- 11: byte determinism across thread counts --------------------------
std::string file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism(const std::string& cli) {
    bool ok = true;
    std::string detail;
    const std::string base = "/tmp/olab_accept_";
    struct Run {
        std::string args, out;
    };
    const Run runs[] = {
        {"sweep --n 2000 --trials 3 --c 1,3 --seed 77 --threads 1", base + "s1.csv"},
        {"sweep --n 2000 --trials 3 --c 1,3 --seed 77 --threads 4", base + "s2.csv"},
    };
    for (const auto& r : runs) {
        const std::string cmd = cli + " " + r.args + " --out " + r.out + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            detail = "sweep run failed";
        }
    }
    if (ok && file_bytes(base + "s1.csv") != file_bytes(base + "s2.csv")) {
        ok = false;
        detail = "sweep output differs across thread counts";
    }
    for (int rep = 0; rep < 2 && ok; ++rep) {
        const std::string out = base + "v" + std::to_string(rep) + ".txt";
        const std::string cmd = cli + " verify --seed 13 > " + out + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) {
            ok = false;
            detail = "verify run failed";
        }
    }
    if (ok && file_bytes(base + "v0.txt") != file_bytes(base + "v1.txt")) {
        ok = false;
        detail = "verify output differs between runs";
    }
    report(11, "byte-identical repeated runs across thread counts", ok,
           ok ? "sweep + verify byte-stable" : detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
        return 1;
    }
    const std::string cli = argv[argc - 1];

    criterion_combinatorics();
    criterion_injectivity();
    criterion_majorizer();
    criterion_precancel();
    criterion_predictor();
    criterion_eigensolver();

    ExperimentConfig sweep_cfg; // desk-scale defaults: n=2e4, 20 trials, 9-point grid
    sweep_cfg.master_seed = 12345;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_sweep(sweep_cfg);
    const double sweep_secs = elapsed_s(t0);
    if (sweep_secs > 1800.0)
        std::printf("note: sweep took %.0fs (budget 1800s)\n", sweep_secs);
    criterion_phase(sweep_cfg, rows);
    criterion_seginer();
    criterion_certificates();
    criterion_bbp();
    criterion_determinism(cli);

    std::printf("%s: %d of 11 criteria failed\n", g_failures ? "RESULT" : "RESULT",
                g_failures);
    return g_failures ? 1 : 0;
}
