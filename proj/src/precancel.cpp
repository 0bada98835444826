#include "outlierlab/precancel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace olab {

double AtomDist::bound_sq() const {
    double b = 0.0;
    for (double v : values) b = std::max(b, v * v);
    return b;
}

void AtomDist::validate() const {
    if (values.size() != probs.size() || values.empty())
        throw std::invalid_argument("atom distribution shape mismatch");
    double total = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (probs[i] <= 0.0) throw std::invalid_argument("atom probability must be positive");
        total += probs[i];
        mean += probs[i] * values[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("atom probabilities must sum to 1");
    if (std::abs(mean) > 1e-12) throw std::invalid_argument("atom distribution must be centered");
}

AtomDist rademacher_atoms() { return AtomDist{{1.0, -1.0}, {0.5, 0.5}}; }

AtomDist two_magnitude_atoms(double a, double b) {
    return AtomDist{{a, -a, b, -b}, {0.25, 0.25, 0.25, 0.25}};
}

PrecancelResult precancel_check(std::int64_t n, const std::vector<Couple>& e_multiset,
                                const std::vector<Couple>& s, double r, const AtomDist& dist) {
    if (n < 2 || n > 6) throw std::invalid_argument("need 2 <= n <= 6 for exhaustive enumeration");
    dist.validate();

    auto norm = [n](Couple c) {
        if (c.first > c.second) std::swap(c.first, c.second);
        if (c.first < 0 || c.second >= n || c.first == c.second)
            throw std::invalid_argument("couple out of range");
        return c;
    };

    std::vector<Couple> e;
    for (Couple c : e_multiset) e.push_back(norm(c));

    // S couples must be pairwise disjoint and appear in E exactly once
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (Couple c : s) {
        c = norm(c);
        if (used[static_cast<std::size_t>(c.first)] || used[static_cast<std::size_t>(c.second)])
            throw std::invalid_argument("S couples must be pairwise disjoint");
        used[static_cast<std::size_t>(c.first)] = used[static_cast<std::size_t>(c.second)] = 1;
        const auto mult = std::count(e.begin(), e.end(), c);
        if (mult != 1)
            throw std::invalid_argument("each S couple must have multiplicity one in E");
    }

    // entry slots: all unordered couples of [n]
    std::vector<Couple> slots;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    const std::size_t m = slots.size();
    auto slot_of = [&](Couple c) {
        return static_cast<std::size_t>(
            std::find(slots.begin(), slots.end(), c) - slots.begin());
    };
    std::vector<std::size_t> e_slots;
    for (Couple c : e) e_slots.push_back(slot_of(c));
    std::vector<std::size_t> s_slots;
    std::vector<Couple> s_norm;
    for (Couple c : s) {
        c = norm(c);
        s_slots.push_back(slot_of(c));
        s_norm.push_back(c);
    }

    const double h = dist.bound_sq();
    const std::size_t base = dist.values.size();

    PrecancelResult res;
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> x(m, 0.0);
    std::vector<double> row_sq(static_cast<std::size_t>(n), 0.0);
    for (;;) {
        double prob = 1.0;
        for (std::size_t q = 0; q < m; ++q) {
            x[q] = dist.values[idx[q]];
            prob *= dist.probs[idx[q]];
        }
        std::fill(row_sq.begin(), row_sq.end(), 0.0);
        for (std::size_t q = 0; q < m; ++q) {
            const double sq = x[q] * x[q];
            row_sq[static_cast<std::size_t>(slots[q].first)] += sq;
            row_sq[static_cast<std::size_t>(slots[q].second)] += sq;
        }
        bool ev_e = true;
        for (double v : row_sq)
            if (v > r) {
                ev_e = false;
                break;
            }
        if (ev_e) {
            res.prob_e += prob;
            double prod = 1.0;
            for (std::size_t q : e_slots) prod *= x[q];
            res.lhs += prob * prod;
            bool ev_s = true;
            for (std::size_t u = 0; u < s_slots.size(); ++u) {
                const double sq = x[s_slots[u]] * x[s_slots[u]];
                const double mx =
                    std::max(row_sq[static_cast<std::size_t>(s_norm[u].first)],
                             row_sq[static_cast<std::size_t>(s_norm[u].second)]);
                if (mx < r + sq - h) {
                    ev_s = false;
                    break;
                }
            }
            if (ev_s) res.rhs += prob * prod;
        }
        // odometer advance
        std::size_t q = 0;
        while (q < m && ++idx[q] == base) idx[q++] = 0;
        if (q == m) break;
    }
    return res;
}

} // namespace olab
