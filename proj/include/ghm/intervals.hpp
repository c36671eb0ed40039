#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghm {

/// A nonnegative quantity known to lie in [lower, upper], upper possibly +inf.
///
/// Provenance records how the enclosure was obtained:
///   Exact            - complete finite sum, lower == upper
///   TruncatedWithTail- finite partial sum plus an analytic tail bound
///   ScanOnly         - lower bound only, no certified upper bound
///
/// Outward rounding uses a fixed relative slack per accumulated sum instead of
/// directed rounding modes; accumulation itself is compensated, so the slack
/// dominates the floating-point error.
struct BoundInterval {
    enum class Provenance { Exact, TruncatedWithTail, ScanOnly };

    double lower = 0.0;
    double upper = 0.0;
    Provenance provenance = Provenance::Exact;

    static constexpr double kSlack = 1e-12;
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    static BoundInterval exact(double v) {
        if (!(v >= 0.0)) throw std::logic_error("BoundInterval: negative exact value");
        return BoundInterval{v, v, Provenance::Exact};
    }

    static BoundInterval truncated(double lo, double hi) {
        lo = std::max(0.0, lo * (1.0 - kSlack));
        if (std::isfinite(hi)) hi *= (1.0 + kSlack);
        if (!(lo <= hi)) throw std::logic_error("BoundInterval: lower > upper");
        return BoundInterval{lo, hi, Provenance::TruncatedWithTail};
    }

    static BoundInterval scan_only(double lo) {
        lo = std::max(0.0, lo * (1.0 - kSlack));
        return BoundInterval{lo, kInf, Provenance::ScanOnly};
    }

    bool contains(double v) const { return lower <= v && v <= upper; }
    double width() const { return upper - lower; }
    double midpoint() const { return 0.5 * (lower + upper); }
    bool finite_upper() const { return std::isfinite(upper); }

    static Provenance combine(Provenance a, Provenance b) {
        if (a == Provenance::ScanOnly || b == Provenance::ScanOnly)
            return Provenance::ScanOnly;
        if (a == Provenance::Exact && b == Provenance::Exact) return Provenance::Exact;
        return Provenance::TruncatedWithTail;
    }

    BoundInterval product(const BoundInterval& o) const {
        const Provenance p = combine(provenance, o.provenance);
        double lo = lower * o.lower;
        double hi;
        if (upper == 0.0 || o.upper == 0.0)
            hi = 0.0;
        else
            hi = upper * o.upper;
        if (p != Provenance::Exact) {
            lo = std::max(0.0, lo * (1.0 - kSlack));
            if (std::isfinite(hi)) hi *= (1.0 + kSlack);
        }
        return BoundInterval{lo, hi, p};
    }

    BoundInterval add(const BoundInterval& o) const {
        const Provenance p = combine(provenance, o.provenance);
        double lo = lower + o.lower;
        double hi = upper + o.upper;
        if (p != Provenance::Exact) {
            lo = std::max(0.0, lo * (1.0 - kSlack));
            if (std::isfinite(hi)) hi *= (1.0 + kSlack);
        }
        return BoundInterval{lo, hi, p};
    }
};

/// Compensated (Kahan) accumulator; keeps long positive sums accurate to a few
/// ulps so the fixed interval slack genuinely covers the rounding error.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace ghm
