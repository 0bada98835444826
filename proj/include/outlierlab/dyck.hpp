#pragma once
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace olab {

using BigCount = boost::multiprecision::cpp_int;

// Exact lattice-path combinatorics with brute-force enumeration oracles.
// A Dyck path of length 2k is a +/-1 step sequence staying >= 0 and ending
// at 0; a "return" is an interior or final touch of level 0.

BigCount binomial(std::int64_t n, std::int64_t r);
BigCount catalan(std::int64_t k);

// Number of Dyck paths of length 2k with exactly u returns to zero:
// N_u = (u/(2k-u)) * C(2k-u, k).
BigCount dyck_count_returns(std::int64_t k, std::int64_t u);

struct DyckConstraints {
    std::int64_t exact_returns = -1; // -1 = unconstrained
    bool no_interior_returns = false;
};

// Exhaustive list of Dyck paths of length 2k matching the constraints,
// each path a vector of +1/-1 steps. k <= 12.
std::vector<std::vector<int>> enumerate_dyck(std::int64_t k, DyckConstraints c = {});

struct SequenceBoundResult {
    BigCount count;
    BigCount bound;
    bool ok;
};

// Count s-tuples of no-interior-return Dyck paths with total length 2p by
// exhaustive enumeration; the concatenation bijection makes the count equal
// N_s(p), which is also the claimed bound (s/(2p-s)) * C(2p-s, p).
SequenceBoundResult dyck_sequence_bound_check(std::int64_t s, std::int64_t p);

struct RealBoundResult {
    double lhs;
    double rhs;
    bool ok;
};

// lhs = sum_{s=1}^{p} (s/(2p-s)) C(2p-s, p) L^s;
// rhs = max(L,2)^{2p-1} / (max(L,2)-1)^{p-1}. Claim: lhs <= rhs for L > 1.
RealBoundResult binomial_sum_check(std::int64_t p, double L);

// alpha(p) = lhs(p) / max(L,2)^{2p}; the proof's recursion claims
// alpha(p+1) <= (Lt/(Lt-1)) * alpha(p) with Lt = max(L,2). Returns true if
// the recursion holds for all 1 <= p < p_max.
bool binomial_sum_recursion_check(std::int64_t p_max, double L);

// Window count: beta(m, u) = 2^m if u <= 1, else
// sum_{p=u-1}^{floor(m/2)} ((u-1)/(2p-u+1)) C(2p-u+1, p) 2^{m-2p}.
BigCount beta(std::int64_t m, std::int64_t u);

// Toy tree-norm bound: sum_{u=1}^{k} N_u d^{k-u} dt^u
//   <= d^k * max(dt/d,2)^{2k-1} / (max(dt/d,2)-1)^{k-1}.
RealBoundResult toy_norm_bound(double d, double d_tilde, std::int64_t k);

} // namespace olab
