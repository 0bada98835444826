#pragma once
#include <cstdint>
#include <utility>
#include <vector>

namespace olab {

// Finite symmetric centered atom distribution for exact expectation
// enumeration (e.g. {+1, -1} at probability 1/2 each).
struct AtomDist {
    std::vector<double> values;
    std::vector<double> probs;

    double bound_sq() const; // max value^2, the h of the cancellation identity
    void validate() const;   // probs sum to 1, mean zero
};

AtomDist rademacher_atoms();
AtomDist two_magnitude_atoms(double a, double b); // {+-a, +-b} at 1/4 each

using Couple = std::pair<std::int64_t, std::int64_t>; // unordered, stored i < j

// Exact check of the cancellation identity
//   E[ prod_{{i,j} in E} xi_ij 1_E ] = E[ prod_{{i,j} in E} xi_ij 1_{E_S & E} ]
// where E is the event {every row of the symmetric matrix (xi_ij) has squared
// norm <= r}, and E_S requires, for each couple {i,j} in S, that
// max(||row_i||^2, ||row_j||^2) >= r + xi_ij^2 - h.  S must consist of
// pairwise disjoint couples appearing in the multiset E exactly once.
// Both expectations are computed by exhaustive enumeration over all
// assignments of the atom distribution to the n(n-1)/2 matrix entries.
struct PrecancelResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double prob_e = 0.0; // probability of the row-norm event
};

PrecancelResult precancel_check(std::int64_t n, const std::vector<Couple>& e_multiset,
                                const std::vector<Couple>& s, double r, const AtomDist& dist);

} // namespace olab
