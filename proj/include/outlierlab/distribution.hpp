#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

#include "prng.hpp"

namespace olab {

// The atom variable xi: bounded, with E xi^2 = 1.
//
// Supported kinds:
//   rademacher        +/-1 with probability 1/2 each
//   constant_one      deterministic 1 (adjacency-matrix atom)
//   uniform_symmetric uniform on [-sqrt(3), sqrt(3)]
//   smoothed          base kind plus uniform(-width, width) noise, rescaled
//                     back to unit second moment (an absolutely continuous
//                     perturbation of the base atom)

enum class DistKind { rademacher, constant_one, uniform_symmetric, smoothed };

struct BoundedDistribution {
    DistKind kind = DistKind::rademacher;
    DistKind base_kind = DistKind::rademacher; // for kind == smoothed
    double width = 0.0;                        // smoothing half-width
    double bound_sq = 1.0;                     // h: sampled values satisfy v^2 <= h
    double mean = 0.0;
    double second_moment = 1.0;

    // sigma = sqrt(1 + width^2/3): second moment of base + uniform noise.
    double smooth_scale() const { return std::sqrt(1.0 + width * width / 3.0); }

    bool symmetric() const {
        DistKind k = (kind == DistKind::smoothed) ? base_kind : kind;
        return k != DistKind::constant_one;
    }

    double sample(Rng& rng) const {
        switch (kind) {
            case DistKind::rademacher: return rng.next_bool() ? 1.0 : -1.0;
            case DistKind::constant_one: return 1.0;
            case DistKind::uniform_symmetric:
                return std::sqrt(3.0) * (2.0 * rng.next_unit() - 1.0);
            case DistKind::smoothed: {
                double base;
                switch (base_kind) {
                    case DistKind::rademacher: base = rng.next_bool() ? 1.0 : -1.0; break;
                    case DistKind::constant_one: base = 1.0; break;
                    case DistKind::uniform_symmetric:
                        base = std::sqrt(3.0) * (2.0 * rng.next_unit() - 1.0); break;
                    default: throw std::logic_error("nested smoothing not supported");
                }
                const double noise = width * (2.0 * rng.next_unit() - 1.0);
                return (base + noise) / smooth_scale();
            }
        }
        throw std::logic_error("unreachable");
    }

    // Quantile function: inf{ x : P(xi <= x) >= a }, a in (0, 1).
    double quantile(double a) const {
        if (!(a > 0.0 && a < 1.0)) throw std::domain_error("quantile order outside (0,1)");
        switch (kind) {
            case DistKind::rademacher: return a <= 0.5 ? -1.0 : 1.0;
            case DistKind::constant_one: return 1.0;
            case DistKind::uniform_symmetric: return std::sqrt(3.0) * (2.0 * a - 1.0);
            case DistKind::smoothed: {
                const double s = smooth_scale();
                const double k = width;
                switch (base_kind) {
                    case DistKind::rademacher:
                        // Two uniform blocks of mass 1/2 around -1 and +1.
                        if (a <= 0.5) return (-1.0 - k + 4.0 * k * a) / s;
                        return (1.0 - k + 4.0 * k * (a - 0.5)) / s;
                    case DistKind::constant_one:
                        return (1.0 - k + 2.0 * k * a) / s;
                    case DistKind::uniform_symmetric: {
                        // Trapezoidal density: ramps of width 2k around +/-sqrt(3).
                        // On the lower ramp F(x) = (x + b + k)^2 / (8 b k).
                        const double b = std::sqrt(3.0);
                        const double ramp_mass = k / (2.0 * b);
                        double x;
                        if (a < ramp_mass) {
                            x = -b - k + std::sqrt(8.0 * b * k * a);
                        } else if (a > 1.0 - ramp_mass) {
                            x = b + k - std::sqrt(8.0 * b * k * (1.0 - a));
                        } else {
                            x = 2.0 * b * (a - 0.5);
                        }
                        return x / s;
                    }
                    default: throw std::logic_error("nested smoothing not supported");
                }
            }
        }
        throw std::logic_error("unreachable");
    }

    // Quantile of psi = xi^2 (the row-profile variable used by majorizers).
    double quantile_sq(double a) const {
        if (!(a > 0.0 && a < 1.0)) throw std::domain_error("quantile order outside (0,1)");
        if (kind == DistKind::rademacher || kind == DistKind::constant_one) return 1.0;
        if (symmetric()) {
            const double q = quantile(0.5 * (1.0 + a));
            return q * q;
        }
        const double q = quantile(a); // positive support
        return q * q;
    }
};

inline double dist_actual_bound_sq(DistKind kind, DistKind base_kind, double width) {
    switch (kind) {
        case DistKind::rademacher: return 1.0;
        case DistKind::constant_one: return 1.0;
        case DistKind::uniform_symmetric: return 3.0;
        case DistKind::smoothed: {
            const double sigma_sq = 1.0 + width * width / 3.0;
            const double base_sup =
                (base_kind == DistKind::uniform_symmetric) ? std::sqrt(3.0) : 1.0;
            const double sup = base_sup + width;
            return sup * sup / sigma_sq;
        }
    }
    throw std::logic_error("unreachable");
}

inline BoundedDistribution make_distribution(DistKind kind, double h,
                                             DistKind base_kind = DistKind::rademacher,
                                             double width = 1e-3) {
    if (h < 1.0)
        throw std::invalid_argument("bound_sq must be >= 1 (unit second moment forces h >= 1)");
    BoundedDistribution d;
    d.kind = kind;
    d.base_kind = base_kind;
    d.width = (kind == DistKind::smoothed) ? width : 0.0;
    const double actual = dist_actual_bound_sq(kind, base_kind, d.width);
    if (h < actual * (1.0 - 1e-12))
        throw std::invalid_argument("bound_sq smaller than the distribution's true bound");
    d.bound_sq = h;
    d.second_moment = 1.0;
    switch (kind) {
        case DistKind::rademacher:
        case DistKind::uniform_symmetric: d.mean = 0.0; break;
        case DistKind::constant_one: d.mean = 1.0; break;
        case DistKind::smoothed:
            d.mean = (base_kind == DistKind::constant_one) ? 1.0 / d.smooth_scale() : 0.0;
            break;
    }
    return d;
}

inline std::string dist_kind_name(DistKind k) {
    switch (k) {
        case DistKind::rademacher: return "rademacher";
        case DistKind::constant_one: return "constant_one";
        case DistKind::uniform_symmetric: return "uniform_symmetric";
        case DistKind::smoothed: return "smoothed";
    }
    return "?";
}

} // namespace olab
