#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "distribution.hpp"
#include "dyck.hpp"

namespace olab {

// Non-increasing non-negative vector dominating rearranged (squared) rows.
struct Majorizer {
    std::vector<double> levels; // non-increasing; coordinates beyond are 0

    double at(std::size_t i) const { return i < levels.size() ? levels[i] : 0.0; }
    double l1() const;
    bool non_increasing() const;
};

// y dominates x iff y >= (non-increasing rearrangement of |x|) coordinatewise.
bool dominates(const Majorizer& y, const std::vector<double>& x);

// Net of majorizers over R(h, gamma, s) = {h >= x_1 >= ... >= 0, ||x||_1 <=
// gamma, <= s nonzeros}. Members are block-constant vectors: dyadic levels
// on geometrically growing blocks followed by a flat tail of s equal
// entries, with total l1 at most (1+eps)*gamma. The grid and tail are
// instantiated at eps/2 so that the dyadic part and the tail together fit
// the budget. The net is represented structurally; the full
// member list is usually far too large to materialize (the cardinality
// bound is what is recorded), so membership is tested by structure and
// members are enumerated only under an explicit cap.
struct MajorizerNet {
    double h = 0, gamma = 0, s = 0, eps = 0;
    double c1 = 1.0 / 64.0;       // block growth constant of the construction
    double flat_value = 0;        // (eps/2)*gamma/s
    std::int64_t flat_count = 0;  // s
    std::vector<double> level_values;      // descending dyadic grid, h down to flat_value
    std::vector<std::int64_t> block_sizes; // nonzero block sizes, in order
    BigCount member_count_bound;           // count of non-increasing assignments
    BigCount formula_bound;                // lemma's cardinality formula, C = 8

    std::int64_t block_span() const; // total coordinates covered by blocks
};

MajorizerNet build_net(double h, double gamma, double s, double eps);

// Structural membership: block-constant, levels from the grid, non-increasing,
// flat tail, l1 within (1+eps)*gamma.
bool net_contains(const MajorizerNet& net, const Majorizer& y);

// All members, smallest-first per block; throws if more than cap.
std::vector<Majorizer> enumerate_members(const MajorizerNet& net, std::int64_t cap);

// Deterministic classifier: the member dominating x (x must lie in R(h,
// gamma, s) after rearrangement; otherwise a domain error).
Majorizer classify(const std::vector<double>& x, const MajorizerNet& net);

// Standard majorizer Y(psi, h, kappa, tau): h on the first tau*kappa
// coordinates, quantiles of psi = xi^2 of order (kappa-i)/kappa + tau next,
// zero beyond (1+tau)*kappa. Bracket: kappa - h <= ||Y||_1 <= kappa +
// (1 + tau*kappa) h.
Majorizer standard_majorizer(const BoundedDistribution& dist, double h, double kappa,
                             double tau);

// A row is heavy when the standard majorizer fails to dominate its squared
// entries.
bool is_heavy(const std::vector<double>& row_sq, const Majorizer& y);

// Net dump: params header, then one member per line as CSV of levels.
void write_net(std::ostream& os, const MajorizerNet& net, std::int64_t cap);

} // namespace olab
