#include "outlierlab/pathenc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace olab {

namespace {

std::vector<char> heavy_flags(const SparseSymMatrix& m, const Majorizer& y) {
    std::vector<char> heavy(static_cast<std::size_t>(m.size()), 0);
    std::vector<double> row_sq;
    for (std::int64_t v = 0; v < m.size(); ++v) {
        row_sq.clear();
        for (const auto& e : m.row(v)) row_sq.push_back(e.value * e.value);
        heavy[static_cast<std::size_t>(v)] = is_heavy(row_sq, y) ? 1 : 0;
    }
    return heavy;
}

void require_distinct_rows(const SparseSymMatrix& m) {
    std::vector<double> mags;
    for (std::int64_t v = 0; v < m.size(); ++v) {
        mags.clear();
        for (const auto& e : m.row(v)) mags.push_back(std::abs(e.value));
        std::sort(mags.begin(), mags.end());
        for (std::size_t i = 1; i < mags.size(); ++i)
            if (mags[i] == mags[i - 1])
                throw std::invalid_argument(
                    "row has tied absolute entries; local indexation is ambiguous");
    }
}

// rank of v among u's neighbors in g by |entry| (1 = largest)
std::int64_t simple_index(const Graph& g, const SparseSymMatrix& m, std::int64_t u,
                          std::int64_t v) {
    const double mag = std::abs(m.value(u, v));
    std::int64_t rank = 0;
    for (const auto& [w, eid] : g.adj(u)) {
        (void)eid;
        if (std::abs(m.value(u, w)) >= mag) ++rank;
    }
    return rank;
}

std::int64_t heavy_index(const Graph& g, const SparseSymMatrix& m, const std::vector<char>& heavy,
                         std::int64_t u, std::int64_t v) {
    const double mag = std::abs(m.value(u, v));
    std::int64_t rank = 0;
    for (const auto& [w, eid] : g.adj(u)) {
        (void)eid;
        if (heavy[static_cast<std::size_t>(w)] && std::abs(m.value(u, w)) >= mag) ++rank;
    }
    return rank;
}

// Neighbors of P(t-1) in the traveled subgraph that are reachable over an
// already-discovered cycle edge or are already-discovered special cycle
// vertices; returns the rank of `target` among them by |entry| (0 if absent).
std::int64_t cycle_index(const Graph& g, const SparseSymMatrix& m, const PathReplay& r,
                         std::int64_t t, std::int64_t target) {
    const std::int64_t u = r.path.steps[static_cast<std::size_t>(t - 1)];
    const double mag = std::abs(m.value(u, target));
    std::int64_t rank = 0;
    bool member = false;
    for (const auto& [w, eid] : g.adj(u)) {
        if (r.edge_multiplicity[static_cast<std::size_t>(eid)] == 0) continue; // not in G_P
        const bool cyc_edge = r.full_cycle_edge[static_cast<std::size_t>(eid)] &&
                              r.edge_discovery[static_cast<std::size_t>(eid)] <= t - 1;
        const bool special = r.special_time(w) <= t - 1;
        if (!cyc_edge && !special) continue;
        if (w == target) member = true;
        if (std::abs(m.value(u, w)) >= mag) ++rank;
    }
    if (!member) throw std::logic_error("cycle indexation target not in the candidate set");
    return rank;
}

} // namespace

Diagram build_diagram(const PathReplay& replay) {
    const std::int64_t two_k = replay.path.length();
    Diagram h;
    h.values.assign(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t e = replay.edge_at[static_cast<std::size_t>(t)];
        const std::int64_t from = replay.path.steps[static_cast<std::size_t>(t - 1)];
        int step;
        if (replay.first_time[static_cast<std::size_t>(e)] == t) {
            step = +1; // new edge
        } else if (!replay.full_cycle_edge[static_cast<std::size_t>(e)]) {
            // re-traveled non-cycle edge: sign of the first-traversal direction
            step = (replay.first_from[static_cast<std::size_t>(e)] == from) ? +1 : -1;
        } else {
            step = -1; // re-traveled cycle edge
        }
        h.values[static_cast<std::size_t>(t)] = h.values[static_cast<std::size_t>(t - 1)] + step;
    }
    return h;
}

Diagram build_diagram(const Graph& g, const ClosedPath& p) {
    return build_diagram(replay_path(g, p));
}

bool PathDataStructure::reduced_equal(const PathDataStructure& o) const {
    return v == o.v && H.values == o.H.values && A == o.A && B == o.B && C == o.C && W == o.W;
}

PathDataStructure encode(const ClosedPath& p, const Graph& g, const SparseSymMatrix& m,
                         const Majorizer& y, const MajorizerNet& net) {
    require_distinct_rows(m);
    const auto heavy = heavy_flags(m, y);
    const auto replay = replay_path(g, p);
    const std::int64_t two_k = p.length();

    PathDataStructure ds;
    ds.v = p.steps.front();
    ds.H = build_diagram(replay);
    ds.C = replay.in_c;

    std::vector<char> in_a(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t prev = p.steps[static_cast<std::size_t>(t - 1)];
        const std::int64_t cur = p.steps[static_cast<std::size_t>(t)];
        const bool up = ds.H.up(t);
        if ((!up && replay.special_time(prev) <= t - 1) ||
            (up && replay.special_time(cur) <= t - 1)) {
            ds.A.push_back(t);
            in_a[static_cast<std::size_t>(t)] = 1;
        }
    }

    std::vector<char> in_b(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t = 0; t <= two_k; ++t)
        if (heavy[static_cast<std::size_t>(p.steps[static_cast<std::size_t>(t)])]) {
            ds.B.push_back(t);
            in_b[static_cast<std::size_t>(t)] = 1;
        }

    ds.W.assign(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t prev = p.steps[static_cast<std::size_t>(t - 1)];
        const std::int64_t cur = p.steps[static_cast<std::size_t>(t)];
        const std::int64_t e = replay.edge_at[static_cast<std::size_t>(t)];
        const bool cyc_disc =
            replay.full_cycle_edge[static_cast<std::size_t>(e)] &&
            replay.edge_discovery[static_cast<std::size_t>(e)] <= t - 1;
        const bool a_or_c =
            in_a[static_cast<std::size_t>(t)] || replay.is_c_time[static_cast<std::size_t>(t)];
        std::int64_t w;
        if ((a_or_c && cyc_disc) || replay.special_time(cur) <= t - 1) {
            w = -cycle_index(g, m, replay, t, cur);
        } else if (in_a[static_cast<std::size_t>(t)] && !cyc_disc) {
            w = 0;
        } else if (in_b[static_cast<std::size_t>(t)] && ds.H.up(t)) {
            w = heavy_index(g, m, heavy, prev, cur);
        } else if (ds.H.up(t)) {
            w = simple_index(g, m, prev, cur);
        } else {
            w = 1;
        }
        ds.W[static_cast<std::size_t>(t)] = w;
    }

    // split of B by arrow; time 0 counts as an up-time
    std::vector<char> in_b_up(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t : ds.B)
        if (t == 0 || ds.H.up(t)) in_b_up[static_cast<std::size_t>(t)] = 1;

    for (std::int64_t t : ds.B) {
        if (t == 0 || ds.H.up(t)) continue; // B-down only
        if (in_a[static_cast<std::size_t>(t)] ||
            replay.is_c_time[static_cast<std::size_t>(t)])
            continue;
        // previous B-time; when none exists the majorizer information has no
        // earlier carrier, so the time is kept in V
        std::int64_t s_t = -1;
        for (std::int64_t q : ds.B) {
            if (q >= t) break;
            s_t = q;
        }
        bool in_v = s_t < 0;
        if (!in_v && ds.H.values[static_cast<std::size_t>(s_t)] !=
                         ds.H.values[static_cast<std::size_t>(t)])
            in_v = true;
        if (!in_v)
            for (std::int64_t q = s_t; q <= t && !in_v; ++q)
                if (in_a[static_cast<std::size_t>(q)] ||
                    in_b_up[static_cast<std::size_t>(q)] ||
                    replay.is_c_time[static_cast<std::size_t>(q)])
                    in_v = true;
        if (in_v) ds.V.push_back(t);
    }

    // majorizer assignment: up-B times, V-times, and down-B times that
    // coincide with A or C (the weight-bound lookup can land on those)
    std::vector<double> row_sq;
    auto assign = [&](std::int64_t t) {
        if (ds.BC.count(t)) return;
        const std::int64_t vert = p.steps[static_cast<std::size_t>(t)];
        row_sq.clear();
        for (const auto& e : m.row(vert)) row_sq.push_back(e.value * e.value);
        ds.BC.emplace(t, classify(row_sq, net));
    };
    for (std::int64_t t : ds.B)
        if (t == 0 || ds.H.up(t) || in_a[static_cast<std::size_t>(t)] ||
            replay.is_c_time[static_cast<std::size_t>(t)])
            assign(t);
    for (std::int64_t t : ds.V) assign(t);

    return ds;
}

PathDataStructure encode(const ClosedPath& p, const SparseSymMatrix& m, const Majorizer& y,
                         const MajorizerNet& net) {
    return encode(p, graph_from_matrix(m), m, y, net);
}

void write_structure(std::ostream& os, const PathDataStructure& ds) {
    auto csv = [&os](const std::vector<std::int64_t>& xs, std::size_t from) {
        for (std::size_t i = from; i < xs.size(); ++i) os << (i > from ? "," : "") << xs[i];
    };
    os << ds.v << "|";
    csv(ds.H.values, 0);
    os << "|";
    csv(ds.A, 0);
    os << "|";
    csv(ds.B, 0);
    os << "|";
    csv(ds.C, 0);
    os << "|";
    csv(ds.W, 1);
    os << "\n";
}

InjectivityReport check_injectivity(const std::vector<ClosedPath>& paths, const Graph& g,
                                    const SparseSymMatrix& m, const Majorizer& y,
                                    const MajorizerNet& net) {
    InjectivityReport rep;
    std::unordered_map<std::string, std::int64_t> seen;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        auto ds = encode(paths[i], g, m, y, net);
        std::ostringstream key;
        write_structure(key, ds);
        auto [it, inserted] = seen.emplace(key.str(), static_cast<std::int64_t>(i));
        if (!inserted) {
            rep.ok = false;
            rep.first = it->second;
            rep.second = static_cast<std::int64_t>(i);
            return rep;
        }
    }
    return rep;
}

double path_weight(const ClosedPath& p, const SparseSymMatrix& m) {
    double acc = 1.0;
    for (std::size_t t = 1; t < p.steps.size(); ++t)
        acc *= m.value(p.steps[t - 1], p.steps[t]);
    return acc;
}

double structure_weight_bound(const PathDataStructure& ds, const Majorizer& y, double h) {
    const std::int64_t two_k = static_cast<std::int64_t>(ds.W.size()) - 1;
    std::vector<char> in_a(static_cast<std::size_t>(two_k) + 1, 0);
    std::vector<char> in_b(static_cast<std::size_t>(two_k) + 1, 0);
    std::vector<char> in_c(static_cast<std::size_t>(two_k) + 1, 0);
    std::vector<char> in_b_up(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t : ds.A) in_a[static_cast<std::size_t>(t)] = 1;
    for (std::int64_t t : ds.B) in_b[static_cast<std::size_t>(t)] = 1;
    for (std::int64_t t : ds.C) in_c[static_cast<std::size_t>(t)] = 1;
    for (std::int64_t t : ds.B)
        if (t == 0 || ds.H.up(t)) in_b_up[static_cast<std::size_t>(t)] = 1;

    double bound = 1.0;
    for (std::int64_t t : ds.C) {
        (void)t;
        bound *= std::sqrt(h);
    }
    for (std::int64_t t = 1; t <= two_k; ++t) {
        if (!ds.H.up(t)) continue;
        const bool a = in_a[static_cast<std::size_t>(t)];
        const bool b = in_b[static_cast<std::size_t>(t)];
        const bool c = in_c[static_cast<std::size_t>(t)];
        if (c) continue; // already covered by the sqrt(h) factors
        if (a || b) {
            bound *= h;
            continue;
        }
        const std::int64_t w = ds.W[static_cast<std::size_t>(t)];
        if (w < 1) throw std::logic_error("nonpositive weight at a plain up-step");
        if (in_b[static_cast<std::size_t>(t - 1)]) {
            // majorizer of the row at P(t-1): the time itself if it carries
            // one, otherwise the latest V-time before it
            std::int64_t f = t - 1;
            if (!in_a[static_cast<std::size_t>(f)] && !in_b_up[static_cast<std::size_t>(f)] &&
                !in_c[static_cast<std::size_t>(f)]) {
                f = -1;
                for (std::int64_t q : ds.V) {
                    if (q > t - 1) break;
                    f = q;
                }
                if (f < 0) throw std::logic_error("no V-time before a heavy down step");
            }
            bound *= ds.BC.at(f).at(static_cast<std::size_t>(w - 1));
        } else {
            bound *= y.at(static_cast<std::size_t>(w - 1));
        }
    }
    return bound;
}

StructureReport verify_structure_props(const ClosedPath& p, const PathDataStructure& ds) {
    StructureReport rep;
    auto fail = [&rep](const std::string& msg) {
        if (rep.ok) {
            rep.ok = false;
            rep.violation = msg;
        }
    };
    const std::int64_t two_k = p.length();
    std::vector<char> in_a(static_cast<std::size_t>(two_k) + 1, 0);
    std::vector<char> in_c(static_cast<std::size_t>(two_k) + 1, 0);
    for (std::int64_t t : ds.A) in_a[static_cast<std::size_t>(t)] = 1;
    for (std::int64_t t : ds.C) in_c[static_cast<std::size_t>(t)] = 1;
    const auto& h = ds.H.values;

    // equal-height minima with no A/C times strictly inside land on one vertex
    for (std::int64_t t = 0; t <= two_k; ++t) {
        bool blocked = false;
        std::int64_t lo = h[static_cast<std::size_t>(t)];
        for (std::int64_t u = t + 1; u <= two_k; ++u) {
            if (in_a[static_cast<std::size_t>(u)] || in_c[static_cast<std::size_t>(u)])
                blocked = true;
            if (blocked) break;
            lo = std::min(lo, h[static_cast<std::size_t>(u)]);
            if (h[static_cast<std::size_t>(u)] == h[static_cast<std::size_t>(t)] &&
                lo >= h[static_cast<std::size_t>(t)] &&
                p.steps[static_cast<std::size_t>(t)] != p.steps[static_cast<std::size_t>(u)])
                fail("equal-minima times " + std::to_string(t) + "," + std::to_string(u) +
                     " land on different vertices");
        }
    }

    // counting bound on B-times followed by a down arrow
    std::int64_t b_prime = 0, b_up = 0, c_down = 0, c_up = 0;
    for (std::int64_t t : ds.B) {
        if (t < two_k && h[static_cast<std::size_t>(t)] > h[static_cast<std::size_t>(t + 1)])
            ++b_prime;
        if (t == 0 || ds.H.up(t)) ++b_up;
    }
    for (std::int64_t t : ds.C) (ds.H.up(t) ? c_up : c_down)++;
    if (b_prime > 3 * c_down + b_up + 1) fail("B' exceeds 3|C-down| + |B-up| + 1");

    // V-set facts
    std::int64_t abc = 0;
    {
        std::vector<char> seen(static_cast<std::size_t>(two_k) + 1, 0);
        for (std::int64_t t : ds.A) seen[static_cast<std::size_t>(t)] = 1;
        for (std::int64_t t : ds.C) seen[static_cast<std::size_t>(t)] = 1;
        for (std::int64_t t : ds.B)
            if (t == 0 || ds.H.up(t)) seen[static_cast<std::size_t>(t)] = 1;
        for (char s : seen) abc += s;
    }
    if (static_cast<std::int64_t>(ds.V.size()) > 5 * abc + 1)
        fail("|V| exceeds 5|A u B-up u C| + 1");
    for (std::int64_t t : ds.B) {
        if (t == 0 || ds.H.up(t)) continue;
        if (in_a[static_cast<std::size_t>(t)] || in_c[static_cast<std::size_t>(t)]) continue;
        std::int64_t kappa = -1;
        for (std::int64_t q : ds.V) {
            if (q > t) break;
            kappa = q;
        }
        if (kappa < 0) {
            fail("B-down time " + std::to_string(t) + " has no V-time before it");
            continue;
        }
        if (p.steps[static_cast<std::size_t>(kappa)] != p.steps[static_cast<std::size_t>(t)])
            fail("latest V-time before " + std::to_string(t) + " lands on a different vertex");
    }

    // per non-cycle edge of the traveled graph, up arrows match down arrows
    {
        std::int64_t n = 0;
        for (std::int64_t v : p.steps) n = std::max(n, v + 1);
        Graph gp(n);
        std::vector<std::pair<std::int64_t, std::int64_t>> uniq;
        for (std::int64_t t = 1; t <= two_k; ++t) {
            auto a = p.steps[static_cast<std::size_t>(t - 1)];
            auto b = p.steps[static_cast<std::size_t>(t)];
            if (a > b) std::swap(a, b);
            uniq.emplace_back(a, b);
        }
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (auto [a, b] : uniq) gp.add_edge(a, b);
        gp.finalize();
        const auto cyc = cycle_edge_mask(gp);
        std::vector<std::int64_t> balance(uniq.size(), 0);
        for (std::int64_t t = 1; t <= two_k; ++t) {
            const std::int64_t eid =
                gp.edge_id(p.steps[static_cast<std::size_t>(t - 1)],
                           p.steps[static_cast<std::size_t>(t)]);
            balance[static_cast<std::size_t>(eid)] += ds.H.up(t) ? 1 : -1;
        }
        for (std::size_t e = 0; e < uniq.size(); ++e)
            if (!cyc[e] && balance[e] != 0)
                fail("non-cycle edge with unbalanced arrows");
    }

    // diagram endpoint identities
    if (h.back() != c_up - c_down) fail("H(2k) != |C-up| - |C-down|");
    std::int64_t ups = 0;
    for (std::int64_t t = 1; t <= two_k; ++t) ups += ds.H.up(t) ? 1 : 0;
    if (2 * ups != two_k + (c_up - c_down)) fail("up-arrow count != k + (|C-up|-|C-down|)/2");

    return rep;
}

} // namespace olab
