#pragma once
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "sparse_matrix.hpp"

namespace olab {

// Simple undirected graph, sorted adjacency lists. Edges carry dense ids so
// per-edge state can live in flat arrays.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::int64_t n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

    std::int64_t vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

    void add_edge(std::int64_t u, std::int64_t v);
    void finalize(); // sort adjacency, reject duplicates/loops

    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges() const { return edges_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& adj(std::int64_t v) const {
        return adj_[static_cast<std::size_t>(v)]; // (neighbor, edge id)
    }
    std::int64_t edge_id(std::int64_t u, std::int64_t v) const; // -1 if absent
    bool connected() const;

    // Text format: header `n <n>`, then `i j` per edge, 0-indexed.
    void write_text(std::ostream& os) const;
    static Graph read_text(std::istream& is);

private:
    std::int64_t n_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges_;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> adj_;
    bool finalized_ = false;
};

Graph graph_from_matrix(const SparseSymMatrix& m);

// Greedy maximal r-separated set (pairwise distance > r, every vertex within
// distance r of the set), scanning vertices in BFS order from vertex 0.
// Size is bounded by 2|E|/r for connected G.
std::vector<std::int64_t> max_r_separated(const Graph& g, std::int64_t r);

// Every radius-l ball has cyclomatic number (|E| - |V| + #components) <= 1.
bool is_tangle_free(const Graph& g, std::int64_t l);

// Edge ids of non-bridges (edges lying on some cycle), linear-time DFS.
std::vector<bool> cycle_edge_mask(const Graph& g);

// Closed path on a host graph: P(0..2k) with P(0) = P(2k), consecutive
// vertices adjacent.
struct ClosedPath {
    std::vector<std::int64_t> steps;
    std::int64_t length() const { return static_cast<std::int64_t>(steps.size()) - 1; }
};

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

// Replay of a closed path: prefix graphs G_{P[0,t]}, first-traversal
// directions, per-edge discovery data, and the special cycle vertices
// (meeting / splitting / completion points) with their discovery times.
//
// Conventions fixed by this implementation:
//  * An edge e is "discovered" at the first time t at which either e is
//    the edge traveled at a time in C (traveled once or >= 3 times in the
//    whole path), or e is a non-bridge of the prefix graph G_{P[0,t]}.
//    Discovery may precede e's own first traversal: when closing a cycle
//    makes several edges non-bridges at once, all of them are dated at the
//    cycle-completion time.
//  * A vertex's discovery time is the first prefix time at which it
//    satisfies the defining property (not its first visit).
struct PathReplay {
    const Graph* host = nullptr;
    ClosedPath path;

    std::vector<std::int64_t> edge_at;          // t in [1, 2k] -> edge id
    std::vector<std::int64_t> edge_multiplicity; // per edge id, whole path
    std::vector<std::int64_t> first_time;        // per edge id
    std::vector<std::int64_t> first_from;        // tail of the first traversal
    std::vector<bool> full_cycle_edge;           // cycle edge of G_P (the full path graph)
    std::vector<std::int64_t> prefix_cycle_time; // per edge: first t non-bridge of prefix (kNever if none)
    std::vector<std::int64_t> in_c;              // times t in C, sorted
    std::vector<bool> is_c_time;                 // indexed by t
    std::vector<std::int64_t> edge_discovery;    // per edge: min(C-time with this edge, prefix_cycle_time)

    std::vector<std::int64_t> meeting_time;    // per vertex, kNever if never
    std::vector<std::int64_t> splitting_time;  // per vertex
    std::vector<std::int64_t> completion_time; // per vertex
    std::vector<std::int64_t> cyclomatic_after; // indexed by t in [0, 2k]

    // special = meeting or splitting or completion; discovery = min of the three
    std::int64_t special_time(std::int64_t v) const {
        const auto m = meeting_time[static_cast<std::size_t>(v)];
        const auto s = splitting_time[static_cast<std::size_t>(v)];
        const auto c = completion_time[static_cast<std::size_t>(v)];
        return std::min(m, std::min(s, c));
    }
};

PathReplay replay_path(const Graph& g, const ClosedPath& p);

struct SpecialVertexReport {
    std::vector<std::pair<std::int64_t, std::int64_t>> meeting;    // (vertex, discovery time)
    std::vector<std::pair<std::int64_t, std::int64_t>> splitting;
    std::vector<std::pair<std::int64_t, std::int64_t>> completion;
};

SpecialVertexReport classify_special_vertices(const Graph& g, const ClosedPath& p);

// Partition of the cycle edges of g into cycle intervals: maximal chains of
// cycle edges whose interior vertices are not meeting points. Each interval
// is either a full cycle (at most one shared vertex with other cycle edges)
// or a chain between two meeting points. meeting_mask marks vertices with
// >= 3 incident cycle edges.
std::vector<std::vector<std::int64_t>> cycle_intervals(const Graph& g,
                                                       const std::vector<bool>& cycle_mask,
                                                       const std::vector<bool>& meeting_mask);

std::vector<bool> meeting_points_of_graph(const Graph& g, const std::vector<bool>& cycle_mask);

struct RemovableHalfResult {
    bool ok = false;
    std::vector<std::int64_t> removed; // edge ids, |removed| >= ceil(|S|/2)
};

// Find S' subset of S (cycle edges) with |S'| >= ceil(|S|/2) whose removal
// keeps g connected: greedy augmentation, exhaustive fallback for |S| <= 20.
RemovableHalfResult find_removable_half(const Graph& g, const std::vector<std::int64_t>& s_edges);

// Exhaustive enumeration of closed paths of length 2k from every start
// vertex (or a fixed start if start >= 0).
std::vector<ClosedPath> enumerate_closed_paths(const Graph& g, std::int64_t two_k,
                                               std::int64_t start = -1);

} // namespace olab
