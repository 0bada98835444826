#include "outlierlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace olab {

void Graph::add_edge(std::int64_t u, std::int64_t v) {
    if (u == v) throw std::invalid_argument("loops not allowed");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
    if (u > v) std::swap(u, v);
    const std::int64_t id = static_cast<std::int64_t>(edges_.size());
    edges_.emplace_back(u, v);
    adj_[static_cast<std::size_t>(u)].emplace_back(v, id);
    adj_[static_cast<std::size_t>(v)].emplace_back(u, id);
}

void Graph::finalize() {
    if (finalized_) return;
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i].first == a[i - 1].first)
                throw std::invalid_argument("duplicate edge");
    }
    finalized_ = true;
}

std::int64_t Graph::edge_id(std::int64_t u, std::int64_t v) const {
    const auto& a = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(a.begin(), a.end(), std::make_pair(v, std::int64_t{-1}));
    if (it != a.end() && it->first == v) return it->second;
    return -1;
}

bool Graph::connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::deque<std::int64_t> q{0};
    seen[0] = true;
    std::int64_t count = 1;
    while (!q.empty()) {
        const std::int64_t v = q.front();
        q.pop_front();
        for (const auto& [u, id] : adj(v))
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++count;
                q.push_back(u);
            }
    }
    return count == n_;
}

void Graph::write_text(std::ostream& os) const {
    os << "n " << n_ << "\n";
    for (const auto& [u, v] : edges_) os << u << " " << v << "\n";
}

Graph Graph::read_text(std::istream& is) {
    std::string tag;
    std::int64_t n = 0;
    if (!(is >> tag >> n) || tag != "n") throw std::runtime_error("bad graph header");
    Graph g(n);
    std::int64_t u, v;
    while (is >> u >> v) g.add_edge(u, v);
    g.finalize();
    return g;
}

Graph graph_from_matrix(const SparseSymMatrix& m) {
    Graph g(m.size());
    for (std::int64_t i = 0; i < m.size(); ++i)
        for (const auto& e : m.row(i))
            if (e.col > i) g.add_edge(i, e.col);
    g.finalize();
    return g;
}

std::vector<std::int64_t> max_r_separated(const Graph& g, std::int64_t r) {
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    if (r < 1) throw std::invalid_argument("need r >= 1");
    const std::int64_t n = g.vertex_count();
    // BFS order from vertex 0.
    std::vector<std::int64_t> order;
    {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::deque<std::int64_t> q{0};
        seen[0] = true;
        while (!q.empty()) {
            const std::int64_t v = q.front();
            q.pop_front();
            order.push_back(v);
            for (const auto& [u, id] : g.adj(v))
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    q.push_back(u);
                }
        }
    }
    std::vector<std::int64_t> dist_to_set(static_cast<std::size_t>(n), kNever);
    std::vector<std::int64_t> result;
    for (const std::int64_t v : order) {
        if (dist_to_set[static_cast<std::size_t>(v)] <= r) continue;
        result.push_back(v);
        // relax distances within radius r of v
        std::deque<std::int64_t> q{v};
        dist_to_set[static_cast<std::size_t>(v)] = 0;
        while (!q.empty()) {
            const std::int64_t x = q.front();
            q.pop_front();
            const std::int64_t dx = dist_to_set[static_cast<std::size_t>(x)];
            if (dx == r) continue;
            for (const auto& [u, id] : g.adj(x))
                if (dist_to_set[static_cast<std::size_t>(u)] > dx + 1) {
                    dist_to_set[static_cast<std::size_t>(u)] = dx + 1;
                    q.push_back(u);
                }
        }
    }
    return result;
}

bool is_tangle_free(const Graph& g, std::int64_t l) {
    if (l < 1) throw std::invalid_argument("need l >= 1");
    const std::int64_t n = g.vertex_count();
    std::vector<std::int64_t> dist(static_cast<std::size_t>(n), -1);
    std::vector<std::int64_t> ball;
    for (std::int64_t v = 0; v < n; ++v) {
        ball.clear();
        std::deque<std::int64_t> q{v};
        dist[static_cast<std::size_t>(v)] = 0;
        ball.push_back(v);
        while (!q.empty()) {
            const std::int64_t x = q.front();
            q.pop_front();
            if (dist[static_cast<std::size_t>(x)] == l) continue;
            for (const auto& [u, id] : g.adj(x))
                if (dist[static_cast<std::size_t>(u)] < 0) {
                    dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(x)] + 1;
                    ball.push_back(u);
                    q.push_back(u);
                }
        }
        // induced edge count within the ball
        std::int64_t edge_count = 0;
        for (const std::int64_t x : ball)
            for (const auto& [u, id] : g.adj(x))
                if (u > x && dist[static_cast<std::size_t>(u)] >= 0) ++edge_count;
        const bool ok =
            edge_count - static_cast<std::int64_t>(ball.size()) + 1 <= 1; // ball is connected
        for (const std::int64_t x : ball) dist[static_cast<std::size_t>(x)] = -1;
        if (!ok) return false;
    }
    return true;
}

namespace {

// Bridges of the subgraph formed by edges with active[id] == true.
// Returns per-edge: true if the edge is a bridge of that subgraph.
std::vector<bool> bridges_masked(const Graph& g, const std::vector<bool>& active) {
    const std::int64_t n = g.vertex_count();
    const std::int64_t m = g.edge_count();
    std::vector<bool> bridge(static_cast<std::size_t>(m), false);
    std::vector<std::int64_t> tin(static_cast<std::size_t>(n), -1),
        low(static_cast<std::size_t>(n), -1);
    std::int64_t timer = 0;

    struct Frame {
        std::int64_t v;
        std::int64_t parent_edge;
        std::size_t next;
    };
    std::vector<Frame> stack;
    for (std::int64_t root = 0; root < n; ++root) {
        if (tin[static_cast<std::size_t>(root)] != -1) continue;
        tin[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& a = g.adj(f.v);
            if (f.next < a.size()) {
                const auto [u, id] = a[f.next++];
                if (!active[static_cast<std::size_t>(id)] || id == f.parent_edge) continue;
                if (tin[static_cast<std::size_t>(u)] != -1) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], tin[static_cast<std::size_t>(u)]);
                } else {
                    tin[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
                    stack.push_back({u, id, 0});
                }
            } else {
                const std::int64_t v = f.v;
                const std::int64_t pe = f.parent_edge;
                stack.pop_back();
                if (pe != -1) {
                    const auto [x, y] = g.edges()[static_cast<std::size_t>(pe)];
                    const std::int64_t parent = stack.back().v;
                    (void)x;
                    (void)y;
                    low[static_cast<std::size_t>(parent)] =
                        std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
                    if (low[static_cast<std::size_t>(v)] > tin[static_cast<std::size_t>(parent)])
                        bridge[static_cast<std::size_t>(pe)] = true;
                }
            }
        }
    }
    return bridge;
}

struct Dsu {
    std::vector<std::int64_t> parent;
    explicit Dsu(std::int64_t n) : parent(static_cast<std::size_t>(n)) {
        for (std::int64_t i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    std::int64_t find(std::int64_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

} // namespace

std::vector<bool> cycle_edge_mask(const Graph& g) {
    std::vector<bool> active(static_cast<std::size_t>(g.edge_count()), true);
    auto bridge = bridges_masked(g, active);
    std::vector<bool> cyc(static_cast<std::size_t>(g.edge_count()));
    for (std::size_t i = 0; i < cyc.size(); ++i) cyc[i] = !bridge[i];
    return cyc;
}

PathReplay replay_path(const Graph& g, const ClosedPath& p) {
    const std::int64_t two_k = p.length();
    if (two_k < 2 || two_k % 2 != 0) throw std::invalid_argument("closed path needs even length >= 2");
    if (p.steps.front() != p.steps.back()) throw std::invalid_argument("path not closed");
    const std::int64_t m = g.edge_count();
    const std::int64_t n = g.vertex_count();

    PathReplay r;
    r.host = &g;
    r.path = p;
    r.edge_at.assign(static_cast<std::size_t>(two_k) + 1, -1);
    r.edge_multiplicity.assign(static_cast<std::size_t>(m), 0);
    r.first_time.assign(static_cast<std::size_t>(m), kNever);
    r.first_from.assign(static_cast<std::size_t>(m), -1);
    r.prefix_cycle_time.assign(static_cast<std::size_t>(m), kNever);
    r.is_c_time.assign(static_cast<std::size_t>(two_k) + 1, false);
    r.meeting_time.assign(static_cast<std::size_t>(n), kNever);
    r.splitting_time.assign(static_cast<std::size_t>(n), kNever);
    r.completion_time.assign(static_cast<std::size_t>(n), kNever);
    r.cyclomatic_after.assign(static_cast<std::size_t>(two_k) + 1, 0);

    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t a = p.steps[static_cast<std::size_t>(t - 1)];
        const std::int64_t b = p.steps[static_cast<std::size_t>(t)];
        const std::int64_t id = g.edge_id(a, b);
        if (id < 0) throw std::invalid_argument("path step is not an edge of the host graph");
        r.edge_at[static_cast<std::size_t>(t)] = id;
        r.edge_multiplicity[static_cast<std::size_t>(id)] += 1;
        if (r.first_time[static_cast<std::size_t>(id)] == kNever) {
            r.first_time[static_cast<std::size_t>(id)] = t;
            r.first_from[static_cast<std::size_t>(id)] = a;
        }
    }

    // cycle edges of the full path graph G_P
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (std::int64_t e = 0; e < m; ++e)
        used[static_cast<std::size_t>(e)] = (r.edge_multiplicity[static_cast<std::size_t>(e)] > 0);
    {
        auto bridge = bridges_masked(g, used);
        r.full_cycle_edge.assign(static_cast<std::size_t>(m), false);
        for (std::int64_t e = 0; e < m; ++e)
            r.full_cycle_edge[static_cast<std::size_t>(e)] =
                used[static_cast<std::size_t>(e)] && !bridge[static_cast<std::size_t>(e)];
    }

    // C: times whose edge is a cycle edge of G_P traveled once or >= 3 times.
    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t e = r.edge_at[static_cast<std::size_t>(t)];
        const std::int64_t mult = r.edge_multiplicity[static_cast<std::size_t>(e)];
        if (r.full_cycle_edge[static_cast<std::size_t>(e)] && (mult == 1 || mult >= 3)) {
            r.in_c.push_back(t);
            r.is_c_time[static_cast<std::size_t>(t)] = true;
        }
    }

    // Prefix replay: bridges recomputed whenever a new edge enters the prefix
    // graph (non-bridge status can only change then).
    std::vector<bool> prefix_active(static_cast<std::size_t>(m), false);
    Dsu dsu(n);
    std::int64_t cyclomatic = 0;
    auto refresh_special = [&](std::int64_t t) {
        // meeting: >= 3 incident prefix-cycle edges;
        // splitting: >= 2 prefix-cycle edges first-traveled outward from v.
        for (std::int64_t v = 0; v < n; ++v) {
            std::int64_t incident = 0, outward = 0;
            for (const auto& [u, id] : g.adj(v)) {
                if (r.prefix_cycle_time[static_cast<std::size_t>(id)] <= t) {
                    ++incident;
                    if (r.first_from[static_cast<std::size_t>(id)] == v) ++outward;
                }
            }
            if (incident >= 3 && r.meeting_time[static_cast<std::size_t>(v)] == kNever)
                r.meeting_time[static_cast<std::size_t>(v)] = t;
            if (outward >= 2 && r.splitting_time[static_cast<std::size_t>(v)] == kNever)
                r.splitting_time[static_cast<std::size_t>(v)] = t;
        }
    };
    for (std::int64_t t = 1; t <= two_k; ++t) {
        const std::int64_t e = r.edge_at[static_cast<std::size_t>(t)];
        bool is_new = !prefix_active[static_cast<std::size_t>(e)];
        if (is_new) {
            prefix_active[static_cast<std::size_t>(e)] = true;
            const auto [a, b] = g.edges()[static_cast<std::size_t>(e)];
            if (!dsu.unite(a, b)) {
                ++cyclomatic;
                const std::int64_t arrived = p.steps[static_cast<std::size_t>(t)];
                if (r.completion_time[static_cast<std::size_t>(arrived)] == kNever)
                    r.completion_time[static_cast<std::size_t>(arrived)] = t;
            }
            auto bridge = bridges_masked(g, prefix_active);
            for (std::int64_t id = 0; id < m; ++id)
                if (prefix_active[static_cast<std::size_t>(id)] &&
                    !bridge[static_cast<std::size_t>(id)] &&
                    r.prefix_cycle_time[static_cast<std::size_t>(id)] == kNever)
                    r.prefix_cycle_time[static_cast<std::size_t>(id)] = t;
            refresh_special(t);
        }
        r.cyclomatic_after[static_cast<std::size_t>(t)] = cyclomatic;
    }

    // Edge discovery: first C-time traveling the edge, or first prefix time
    // it is a non-bridge of the prefix graph, whichever is earlier.
    r.edge_discovery.assign(static_cast<std::size_t>(m), kNever);
    for (std::int64_t e = 0; e < m; ++e)
        r.edge_discovery[static_cast<std::size_t>(e)] =
            r.prefix_cycle_time[static_cast<std::size_t>(e)];
    for (const std::int64_t t : r.in_c) {
        const std::int64_t e = r.edge_at[static_cast<std::size_t>(t)];
        r.edge_discovery[static_cast<std::size_t>(e)] =
            std::min(r.edge_discovery[static_cast<std::size_t>(e)], t);
    }
    return r;
}

SpecialVertexReport classify_special_vertices(const Graph& g, const ClosedPath& p) {
    const auto r = replay_path(g, p);
    SpecialVertexReport rep;
    for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
        if (r.meeting_time[static_cast<std::size_t>(v)] != kNever)
            rep.meeting.emplace_back(v, r.meeting_time[static_cast<std::size_t>(v)]);
        if (r.splitting_time[static_cast<std::size_t>(v)] != kNever)
            rep.splitting.emplace_back(v, r.splitting_time[static_cast<std::size_t>(v)]);
        if (r.completion_time[static_cast<std::size_t>(v)] != kNever)
            rep.completion.emplace_back(v, r.completion_time[static_cast<std::size_t>(v)]);
    }
    return rep;
}

std::vector<bool> meeting_points_of_graph(const Graph& g, const std::vector<bool>& cycle_mask) {
    std::vector<bool> meet(static_cast<std::size_t>(g.vertex_count()), false);
    for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
        std::int64_t deg = 0;
        for (const auto& [u, id] : g.adj(v))
            if (cycle_mask[static_cast<std::size_t>(id)]) ++deg;
        meet[static_cast<std::size_t>(v)] = (deg >= 3);
    }
    return meet;
}

std::vector<std::vector<std::int64_t>> cycle_intervals(const Graph& g,
                                                       const std::vector<bool>& cycle_mask,
                                                       const std::vector<bool>& meeting_mask) {
    const std::int64_t m = g.edge_count();
    std::vector<bool> visited(static_cast<std::size_t>(m), false);
    std::vector<std::vector<std::int64_t>> intervals;

    auto walk = [&](std::int64_t start_edge, std::int64_t from_vertex) {
        std::vector<std::int64_t> chain;
        std::int64_t e = start_edge;
        std::int64_t v = from_vertex;
        while (true) {
            visited[static_cast<std::size_t>(e)] = true;
            chain.push_back(e);
            const auto [a, b] = g.edges()[static_cast<std::size_t>(e)];
            const std::int64_t next_v = (a == v) ? b : a;
            if (meeting_mask[static_cast<std::size_t>(next_v)]) break;
            // interior vertex: exactly two incident cycle edges; take the other
            std::int64_t next_e = -1;
            for (const auto& [u, id] : g.adj(next_v))
                if (cycle_mask[static_cast<std::size_t>(id)] && id != e) {
                    next_e = id;
                    break;
                }
            if (next_e < 0 || visited[static_cast<std::size_t>(next_e)]) break;
            e = next_e;
            v = next_v;
        }
        intervals.push_back(std::move(chain));
    };

    // chains and loops anchored at meeting points
    for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
        if (!meeting_mask[static_cast<std::size_t>(v)]) continue;
        for (const auto& [u, id] : g.adj(v))
            if (cycle_mask[static_cast<std::size_t>(id)] && !visited[static_cast<std::size_t>(id)])
                walk(id, v);
    }
    // remaining components: disjoint full cycles with no meeting point
    for (std::int64_t e = 0; e < m; ++e)
        if (cycle_mask[static_cast<std::size_t>(e)] && !visited[static_cast<std::size_t>(e)])
            walk(e, g.edges()[static_cast<std::size_t>(e)].first);
    return intervals;
}

namespace {

bool connected_without(const Graph& g, const std::vector<bool>& removed) {
    const std::int64_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<std::int64_t> q{0};
    seen[0] = true;
    std::int64_t count = 1;
    while (!q.empty()) {
        const std::int64_t v = q.front();
        q.pop_front();
        for (const auto& [u, id] : g.adj(v)) {
            if (removed[static_cast<std::size_t>(id)]) continue;
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++count;
                q.push_back(u);
            }
        }
    }
    return count == n;
}

} // namespace

RemovableHalfResult find_removable_half(const Graph& g, const std::vector<std::int64_t>& s_edges) {
    RemovableHalfResult out;
    const std::int64_t need = (static_cast<std::int64_t>(s_edges.size()) + 1) / 2;
    if (need == 0) {
        out.ok = true;
        return out;
    }
    std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
    // greedy augmentation
    for (const std::int64_t e : s_edges) {
        removed[static_cast<std::size_t>(e)] = true;
        if (connected_without(g, removed)) out.removed.push_back(e);
        else removed[static_cast<std::size_t>(e)] = false;
    }
    if (static_cast<std::int64_t>(out.removed.size()) >= need) {
        out.ok = true;
        return out;
    }
    // exhaustive fallback
    const std::size_t s = s_edges.size();
    if (s > 20) return out; // capped; caller treats as failure
    out.removed.clear();
    for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
        if (static_cast<std::int64_t>(__builtin_popcount(mask)) < need) continue;
        std::fill(removed.begin(), removed.end(), false);
        for (std::size_t i = 0; i < s; ++i)
            if (mask & (1u << i)) removed[static_cast<std::size_t>(s_edges[i])] = true;
        if (connected_without(g, removed)) {
            for (std::size_t i = 0; i < s; ++i)
                if (mask & (1u << i)) out.removed.push_back(s_edges[i]);
            out.ok = true;
            return out;
        }
    }
    return out;
}

std::vector<ClosedPath> enumerate_closed_paths(const Graph& g, std::int64_t two_k,
                                               std::int64_t start) {
    if (two_k < 2 || two_k % 2 != 0) throw std::invalid_argument("need even length >= 2");
    std::vector<ClosedPath> out;
    std::vector<std::int64_t> steps;
    auto dfs = [&](auto&& self, std::int64_t v0) -> void {
        const std::int64_t cur = steps.back();
        if (static_cast<std::int64_t>(steps.size()) == two_k + 1) {
            if (cur == v0) out.push_back({steps});
            return;
        }
        for (const auto& [u, id] : g.adj(cur)) {
            steps.push_back(u);
            self(self, v0);
            steps.pop_back();
        }
    };
    const std::int64_t lo = (start >= 0) ? start : 0;
    const std::int64_t hi = (start >= 0) ? start + 1 : g.vertex_count();
    for (std::int64_t v = lo; v < hi; ++v) {
        steps.assign(1, v);
        dfs(dfs, v);
    }
    return out;
}

} // namespace olab
