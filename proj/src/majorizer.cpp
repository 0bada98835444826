#include "outlierlab/majorizer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace olab {

double Majorizer::l1() const {
    double acc = 0.0;
    for (double v : levels) acc += v;
    return acc;
}

bool Majorizer::non_increasing() const {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] > levels[i - 1]) return false;
    return levels.empty() || levels.back() >= 0.0;
}

bool dominates(const Majorizer& y, const std::vector<double>& x) {
    std::vector<double> xs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = std::abs(x[i]);
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > y.at(i)) return false;
    return true;
}

std::int64_t MajorizerNet::block_span() const {
    std::int64_t span = 0;
    for (auto b : block_sizes) span += b;
    return span;
}

MajorizerNet build_net(double h, double gamma, double s, double eps) {
    if (!(eps > 0.0 && eps <= 0.5))
        throw std::invalid_argument("need eps in (0, 1/2]");
    if (!(eps * gamma / h >= 8.0))
        throw std::invalid_argument("need eps*gamma/h >= 8");
    if (!(h * s / (eps * gamma) >= 2.0))
        throw std::invalid_argument("need h*s/(eps*gamma) >= 2");

    MajorizerNet net;
    net.h = h;
    net.gamma = gamma;
    net.s = s;
    net.eps = eps;
    // The construction runs at half the accuracy parameter: the dyadic part
    // of a member then has l1 at most (1+eps/2)*gamma and the flat tail adds
    // (eps/2)*gamma, so the total stays within the promised (1+eps)*gamma.
    const double e = eps / 2.0;
    net.flat_value = e * gamma / s;
    net.flat_count = static_cast<std::int64_t>(std::llround(s));

    // dyadic level grid, largest first, down to the flat value
    for (std::int64_t m = 0;; ++m) {
        const double v = h * std::pow(2.0, -static_cast<double>(m) * e / 4.0);
        if (v < net.flat_value * (1.0 - 1e-12)) break;
        net.level_values.push_back(v);
    }

    // geometric block layout; zero-size blocks are no-ops and skipped.  Each
    // block size is capped so that ceil(r_i / (1 + e/4)) <= 1 + r_{i-1}: the
    // entry at the head of a block then bounds the whole block even after the
    // (1 + e/4)-stretching used in the l1 estimate, which is what keeps every
    // member's l1 within budget.
    const std::int64_t p0 = static_cast<std::int64_t>(std::floor(e * gamma / (4.0 * h)));
    std::int64_t covered = 0;
    if (p0 > 0) {
        net.block_sizes.push_back(p0);
        covered += p0;
    }
    for (std::int64_t i = 1; covered < static_cast<std::int64_t>(s); ++i) {
        const double raw = std::pow(2.0, net.c1 * e * e * static_cast<double>(i)) *
                           net.c1 * e * e * gamma / h;
        std::int64_t pi = static_cast<std::int64_t>(std::floor(raw));
        const std::int64_t cap =
            static_cast<std::int64_t>(
                std::floor((1.0 + static_cast<double>(covered)) * (1.0 + e / 4.0))) -
            covered;
        pi = std::min(pi, cap);
        if (pi > 0) {
            net.block_sizes.push_back(pi);
            covered += pi;
        }
        if (i > 10'000'000) throw std::logic_error("block layout does not terminate");
    }

    // member count: a member is a prefix of b blocks (0 <= b <= B) carrying a
    // non-increasing level sequence, followed by the flat tail
    const std::int64_t B = static_cast<std::int64_t>(net.block_sizes.size());
    const std::int64_t L = static_cast<std::int64_t>(net.level_values.size());
    net.member_count_bound = 0;
    for (std::int64_t b = 0; b <= B; ++b) net.member_count_bound += binomial(b + L - 1, b);

    // the lemma's cardinality formula with C = 8
    {
        const double base_d = 8.0 * std::log2(h * s / (eps * gamma)) / eps;
        const double expo_d = 8.0 / (eps * eps) * std::log2(h / eps);
        const BigCount base = static_cast<std::int64_t>(std::ceil(base_d));
        const std::int64_t expo = static_cast<std::int64_t>(std::ceil(expo_d));
        BigCount acc = 1;
        for (std::int64_t i = 0; i < expo; ++i) acc *= base;
        net.formula_bound = acc;
    }
    return net;
}

bool net_contains(const MajorizerNet& net, const Majorizer& y) {
    const double tol = 1e-9;
    std::size_t pos = 0;
    double prev = net.h * (1.0 + tol);
    std::size_t block_idx = 0;
    double block_l1 = 0.0;
    // leading blocks with grid levels
    while (block_idx < net.block_sizes.size()) {
        const double v = y.at(pos);
        // the tail starts where the block value drops to the flat value
        if (std::abs(v - net.flat_value) <= tol * net.flat_value) break;
        bool on_grid = false;
        for (double lv : net.level_values)
            if (std::abs(v - lv) <= tol * lv) { on_grid = true; break; }
        if (!on_grid || v > prev * (1.0 + tol)) return false;
        const std::int64_t p = net.block_sizes[block_idx];
        for (std::int64_t i = 0; i < p; ++i)
            if (std::abs(y.at(pos + static_cast<std::size_t>(i)) - v) > tol * v) return false;
        block_l1 += static_cast<double>(p) * v;
        pos += static_cast<std::size_t>(p);
        prev = v;
        ++block_idx;
    }
    // flat tail
    for (std::int64_t i = 0; i < net.flat_count; ++i)
        if (std::abs(y.at(pos + static_cast<std::size_t>(i)) - net.flat_value) >
            tol * net.flat_value)
            return false;
    pos += static_cast<std::size_t>(net.flat_count);
    for (std::size_t i = pos; i < y.levels.size(); ++i)
        if (y.levels[i] != 0.0) return false;
    const double total = block_l1 + net.flat_value * static_cast<double>(net.flat_count);
    return total <= (1.0 + net.eps) * net.gamma * (1.0 + 1e-9);
}

namespace {

Majorizer assemble_member(const MajorizerNet& net, const std::vector<std::size_t>& level_idx) {
    Majorizer y;
    for (std::size_t b = 0; b < level_idx.size(); ++b) {
        const double v = net.level_values[level_idx[b]];
        for (std::int64_t i = 0; i < net.block_sizes[b]; ++i) y.levels.push_back(v);
    }
    for (std::int64_t i = 0; i < net.flat_count; ++i) y.levels.push_back(net.flat_value);
    return y;
}

} // namespace

std::vector<Majorizer> enumerate_members(const MajorizerNet& net, std::int64_t cap) {
    std::vector<Majorizer> out;
    std::vector<std::size_t> level_idx;
    const double tail_l1 = net.flat_value * static_cast<double>(net.flat_count);
    auto emit = [&]() {
        if (static_cast<std::int64_t>(out.size()) >= cap)
            throw std::runtime_error("net member enumeration exceeds cap");
        out.push_back(assemble_member(net, level_idx));
    };
    auto rec = [&](auto&& self, std::size_t block, std::size_t min_level, double l1) -> void {
        emit(); // the member that stops before this block
        if (block >= net.block_sizes.size()) return;
        for (std::size_t m = min_level; m < net.level_values.size(); ++m) {
            const double add =
                net.level_values[m] * static_cast<double>(net.block_sizes[block]);
            if (l1 + add + tail_l1 > (1.0 + net.eps) * net.gamma * (1.0 + 1e-12)) continue;
            level_idx.push_back(m);
            self(self, block + 1, m, l1 + add);
            level_idx.pop_back();
        }
    };
    rec(rec, 0, 0, 0.0);
    return out;
}

Majorizer classify(const std::vector<double>& x, const MajorizerNet& net) {
    std::vector<double> xs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = std::abs(x[i]);
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    double l1 = 0.0;
    std::int64_t nonzeros = 0;
    for (double v : xs) {
        l1 += v;
        if (v != 0.0) ++nonzeros;
    }
    if (!xs.empty() && xs[0] > net.h * (1.0 + 1e-12))
        throw std::domain_error("entry exceeds h");
    if (l1 > net.gamma * (1.0 + 1e-12)) throw std::domain_error("l1 exceeds gamma");
    if (static_cast<double>(nonzeros) > net.s) throw std::domain_error("too many nonzeros");

    Majorizer y;
    std::size_t pos = 0;
    for (const std::int64_t p : net.block_sizes) {
        const double lead = pos < xs.size() ? xs[pos] : 0.0;
        if (lead <= net.flat_value * (1.0 + 1e-12)) break; // small part: tail takes over
        // smallest grid level >= lead
        double level = net.level_values.front();
        for (double lv : net.level_values) {
            if (lv >= lead * (1.0 - 1e-12)) level = lv;
            else break;
        }
        for (std::int64_t i = 0; i < p; ++i) y.levels.push_back(level);
        pos += static_cast<std::size_t>(p);
    }
    for (std::int64_t i = 0; i < net.flat_count; ++i) y.levels.push_back(net.flat_value);
    return y;
}

Majorizer standard_majorizer(const BoundedDistribution& dist, double h, double kappa,
                             double tau) {
    if (kappa < 2.0) throw std::invalid_argument("need kappa >= 2");
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("need tau in (0, 1]");
    if (h < dist.bound_sq * (1.0 - 1e-12))
        throw std::invalid_argument("h must bound the squared atom");
    Majorizer y;
    const std::int64_t len = static_cast<std::int64_t>(std::floor((1.0 + tau) * kappa));
    for (std::int64_t i = 1; i <= len; ++i) {
        if (static_cast<double>(i) <= tau * kappa) {
            y.levels.push_back(h);
        } else {
            double a = (kappa - static_cast<double>(i)) / kappa + tau;
            a = std::min(std::max(a, 1e-12), 1.0 - 1e-12);
            y.levels.push_back(dist.quantile_sq(a));
        }
    }
    if (!y.non_increasing()) throw std::logic_error("standard majorizer not non-increasing");
    return y;
}

bool is_heavy(const std::vector<double>& row_sq, const Majorizer& y) {
    return !dominates(y, row_sq);
}

void write_net(std::ostream& os, const MajorizerNet& net, std::int64_t cap) {
    os << "h " << net.h << " gamma " << net.gamma << " s " << net.s << " eps " << net.eps
       << " levels " << net.level_values.size() << " blocks " << net.block_sizes.size()
       << " count_bound " << net.member_count_bound << "\n";
    for (const auto& m : enumerate_members(net, cap)) {
        for (std::size_t i = 0; i < m.levels.size(); ++i)
            os << (i ? "," : "") << m.levels[i];
        os << "\n";
    }
}

} // namespace olab
