#include "outlierlab/dyck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace olab {
namespace {

// Kahan compensated accumulator for the real-valued bound sums.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void enumerate_rec(std::int64_t k, const DyckConstraints& c, std::vector<int>& steps,
                   std::int64_t height, std::int64_t returns,
                   std::vector<std::vector<int>>& out) {
    const std::int64_t len = static_cast<std::int64_t>(steps.size());
    if (len == 2 * k) {
        if (c.exact_returns >= 0 && returns != c.exact_returns) return;
        out.push_back(steps);
        return;
    }
    // up step: feasible if enough room to come back down
    if (height + 1 <= 2 * k - len - 1) {
        steps.push_back(+1);
        enumerate_rec(k, c, steps, height + 1, returns, out);
        steps.pop_back();
    }
    if (height > 0) {
        const bool touches_zero = (height == 1);
        const bool interior = touches_zero && (len + 1 < 2 * k);
        if (!(c.no_interior_returns && interior)) {
            if (!(c.exact_returns >= 0 && touches_zero && returns + 1 > c.exact_returns)) {
                steps.push_back(-1);
                enumerate_rec(k, c, steps, height - 1, returns + (touches_zero ? 1 : 0), out);
                steps.pop_back();
            }
        }
    }
}

} // namespace

BigCount binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigCount acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc *= (n - r + i);
        acc /= i; // always exact: acc is C(n-r+i, i) at this point
    }
    return acc;
}

BigCount catalan(std::int64_t k) { return binomial(2 * k, k) / (k + 1); }

BigCount dyck_count_returns(std::int64_t k, std::int64_t u) {
    if (u < 1 || u > k) throw std::invalid_argument("need 1 <= u <= k");
    BigCount num = BigCount(u) * binomial(2 * k - u, k);
    const BigCount den = 2 * k - u;
    if (num % den != 0) throw std::logic_error("return-count formula not integral");
    return num / den;
}

std::vector<std::vector<int>> enumerate_dyck(std::int64_t k, DyckConstraints c) {
    if (k < 0 || k > 12) throw std::invalid_argument("enumeration capped at k <= 12");
    std::vector<std::vector<int>> out;
    std::vector<int> steps;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    enumerate_rec(k, c, steps, 0, 0, out);
    return out;
}

SequenceBoundResult dyck_sequence_bound_check(std::int64_t s, std::int64_t p) {
    if (s < 1 || s > p || p > 10) throw std::invalid_argument("need 1 <= s <= p <= 10");
    // Enumerate no-interior-return blocks by half-length, then count
    // compositions of p into s ordered parts weighted by block counts.
    std::vector<BigCount> blocks(static_cast<std::size_t>(p) + 1, 0);
    for (std::int64_t q = 1; q <= p; ++q) {
        DyckConstraints c;
        c.no_interior_returns = true;
        blocks[static_cast<std::size_t>(q)] =
            static_cast<std::int64_t>(enumerate_dyck(q, c).size());
    }
    // dp[j][t] = number of j-tuples of blocks with total half-length t
    std::vector<BigCount> dp(static_cast<std::size_t>(p) + 1, 0);
    dp[0] = 1;
    for (std::int64_t j = 0; j < s; ++j) {
        std::vector<BigCount> next(static_cast<std::size_t>(p) + 1, 0);
        for (std::int64_t t = 0; t <= p; ++t)
            if (dp[static_cast<std::size_t>(t)] != 0)
                for (std::int64_t q = 1; t + q <= p; ++q)
                    next[static_cast<std::size_t>(t + q)] +=
                        dp[static_cast<std::size_t>(t)] * blocks[static_cast<std::size_t>(q)];
        dp = std::move(next);
    }
    SequenceBoundResult r;
    r.count = dp[static_cast<std::size_t>(p)];
    r.bound = dyck_count_returns(p, s);
    r.ok = (r.count <= r.bound);
    return r;
}

RealBoundResult binomial_sum_check(std::int64_t p, double L) {
    if (!(L > 1.0) || p < 1 || p > 60) throw std::invalid_argument("need L > 1, 1 <= p <= 60");
    Kahan lhs;
    double Lpow = 1.0;
    for (std::int64_t s = 1; s <= p; ++s) {
        Lpow *= L;
        lhs.add(static_cast<double>(dyck_count_returns(p, s)) * Lpow);
    }
    const double Lt = std::max(L, 2.0);
    RealBoundResult r;
    r.lhs = lhs.sum;
    r.rhs = std::pow(Lt, 2.0 * static_cast<double>(p) - 1.0) /
            std::pow(Lt - 1.0, static_cast<double>(p) - 1.0);
    r.ok = (r.lhs <= r.rhs * (1.0 + 1e-12));
    return r;
}

bool binomial_sum_recursion_check(std::int64_t p_max, double L) {
    const double Lt = std::max(L, 2.0);
    double prev_alpha = 0.0;
    for (std::int64_t p = 1; p <= p_max; ++p) {
        const double alpha = binomial_sum_check(p, L).lhs / std::pow(Lt, 2.0 * p);
        if (p > 1 && alpha > (Lt / (Lt - 1.0)) * prev_alpha * (1.0 + 1e-12)) return false;
        prev_alpha = alpha;
    }
    return true;
}

BigCount beta(std::int64_t m, std::int64_t u) {
    if (m < 0 || u < 0) throw std::invalid_argument("need m, u >= 0");
    if (u <= 1) return BigCount(1) << m;
    BigCount total = 0;
    for (std::int64_t p = u - 1; p <= m / 2; ++p) {
        // (u-1)/(2p-u+1) * C(2p-u+1, p) = N_{u-1} for Dyck paths of length 2p
        BigCount term = BigCount(u - 1) * binomial(2 * p - u + 1, p);
        const BigCount den = 2 * p - u + 1;
        if (term % den != 0) throw std::logic_error("window formula not integral");
        total += (term / den) << (m - 2 * p);
    }
    return total;
}

RealBoundResult toy_norm_bound(double d, double d_tilde, std::int64_t k) {
    if (!(d_tilde >= d && d >= 1.0) || k < 1 || k > 40)
        throw std::invalid_argument("need d_tilde >= d >= 1, 1 <= k <= 40");
    Kahan sum;
    for (std::int64_t u = 1; u <= k; ++u)
        sum.add(static_cast<double>(dyck_count_returns(k, u)) *
                std::pow(d, static_cast<double>(k - u)) *
                std::pow(d_tilde, static_cast<double>(u)));
    const double ratio = std::max(d_tilde / d, 2.0);
    RealBoundResult r;
    r.lhs = sum.sum;
    r.rhs = std::pow(d, static_cast<double>(k)) *
            std::pow(ratio, 2.0 * static_cast<double>(k) - 1.0) /
            std::pow(ratio - 1.0, static_cast<double>(k) - 1.0);
    r.ok = (r.lhs <= r.rhs * (1.0 + 1e-12));
    return r;
}

} // namespace olab
