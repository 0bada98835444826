#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "graph.hpp"
#include "majorizer.hpp"
#include "sparse_matrix.hpp"

namespace olab {

// Up/down diagram of a closed path: H(0) = 0 and each step moves by +-1.
// Rules per time t: a never-traveled edge steps up; a re-traveled non-cycle
// edge steps in its first-traversal direction; a re-traveled cycle edge (of
// the full path graph) steps down.
struct Diagram {
    std::vector<std::int64_t> values; // H(0..2k)

    bool up(std::int64_t t) const { // arrow from t-1 to t
        return values[static_cast<std::size_t>(t)] >
               values[static_cast<std::size_t>(t - 1)];
    }
};

Diagram build_diagram(const PathReplay& replay);
Diagram build_diagram(const Graph& g, const ClosedPath& p);

// Encoded form of a closed path: start vertex, diagram, the time sets A
// (steps touching already-discovered special cycle vertices), B (times at
// heavy vertices), C (times on cycle edges of multiplicity != 2), the
// per-step weight function W (negative exactly when the cycle-local
// indexation is used), the derived set V, and the per-time majorizer
// assignment BC for heavy rows.
struct PathDataStructure {
    std::int64_t v = 0;
    Diagram H;
    std::vector<std::int64_t> A; // sorted, subset of [1, 2k]
    std::vector<std::int64_t> B; // sorted, subset of [0, 2k]
    std::vector<std::int64_t> C; // sorted, subset of [1, 2k]
    std::vector<std::int64_t> W; // W[1..2k]; W[0] unused
    std::vector<std::int64_t> V; // sorted, derived from B-down runs
    std::map<std::int64_t, Majorizer> BC;

    // reduced structure (everything except V and BC), used for injectivity
    bool reduced_equal(const PathDataStructure& o) const;
};

// Encode a closed path on the graph of M. Every row of M must have pairwise
// distinct absolute values among its nonzero entries (otherwise the local
// indexations are ambiguous and the call throws). Y judges heaviness; net
// classifies heavy rows.
PathDataStructure encode(const ClosedPath& p, const Graph& g, const SparseSymMatrix& m,
                         const Majorizer& y, const MajorizerNet& net);
PathDataStructure encode(const ClosedPath& p, const SparseSymMatrix& m, const Majorizer& y,
                         const MajorizerNet& net);

struct InjectivityReport {
    bool ok = true;
    std::int64_t first = -1, second = -1; // indices of a colliding pair
};

// Verify that distinct paths get distinct reduced structures.
InjectivityReport check_injectivity(const std::vector<ClosedPath>& paths, const Graph& g,
                                    const SparseSymMatrix& m, const Majorizer& y,
                                    const MajorizerNet& net);

// Product of the traversed entries of M along the path.
double path_weight(const ClosedPath& p, const SparseSymMatrix& m);

// Upper bound for |path_weight| computed from the structure alone:
// sqrt(h) per C-time, h per up-step in (A u B) \ C, the BC-majorizer entry at
// index W(t) per up-step out of a heavy vertex, and the Y entry at index W(t)
// per remaining up-step.
double structure_weight_bound(const PathDataStructure& ds, const Majorizer& y, double h);

struct StructureReport {
    bool ok = true;
    std::string violation; // human-readable witness for the first failure
};

// Exact structural facts checked on an encoded path:
//  * equal-height minima without A/C times in between land on the same vertex;
//  * |B'| <= 3|C-down| + |B-up| + 1 for B' = {t in B : down arrow after t};
//  * |V| <= 5|A u B-up u C| + 1, every t in B-down \ (A u C) has V-times
//    before it, and the latest such V-time lands on the same vertex;
//  * per non-cycle edge, up arrows equal down arrows;
//  * H(2k) = |C-up| - |C-down| and total up count = k + H(2k)/2.
StructureReport verify_structure_props(const ClosedPath& p, const PathDataStructure& ds);

// One structure per line: `v|H-csv|A-csv|B-csv|C-csv|W-csv`.
void write_structure(std::ostream& os, const PathDataStructure& ds);

} // namespace olab
