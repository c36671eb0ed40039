// Test-only oracles, independent of the library implementation paths they
// check: exact-rational fraction-free determinants, characteristic-polynomial
// root extraction by determinant sign changes, and log-log regression.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ghm/sequences.hpp"

namespace oracles {

using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

/// Entries d_i d_j / (x_i + x_j) formed exactly from the (dyadic) double
/// node/weight values, so elimination measures the exact matrix rather than
/// its entry-rounded double image.
inline std::vector<Rational> hilbert_block_exact(const ghm::NodeWeightSequence& seq,
                                                 std::size_t k) {
    std::vector<Rational> m(k * k);
    std::vector<Rational> xs(k), ds(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = Rational(seq.x(i + 1));
        ds[i] = Rational(seq.d(i + 1));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i * k + j] = ds[i] * ds[j] / (xs[i] + xs[j]);
    return m;
}

/// Bareiss fraction-free elimination; exact over rationals.
inline Rational bareiss_det(std::vector<Rational> m, std::size_t n) {
    Rational prev = 1;
    for (std::size_t r = 0; r + 1 < n; ++r) {
        if (m[r * n + r] == 0) return 0;
        for (std::size_t i = r + 1; i < n; ++i)
            for (std::size_t j = r + 1; j < n; ++j)
                m[i * n + j] =
                    (m[i * n + j] * m[r * n + r] - m[i * n + r] * m[r * n + j]) / prev;
        prev = m[r * n + r];
    }
    return m[(n - 1) * n + (n - 1)];
}

inline double log_rational(const Rational& r) {
    const BigFloat num(boost::multiprecision::numerator(r));
    const BigFloat den(boost::multiprecision::denominator(r));
    return static_cast<double>(log(num) - log(den));
}

/// ln det of the exact k x k block, via fraction-free elimination.
inline double bareiss_log_det(const ghm::NodeWeightSequence& seq, std::size_t k) {
    return log_rational(bareiss_det(hilbert_block_exact(seq, k), k));
}

/// det(A - lambda I) by LU with partial pivoting.
inline double shifted_det(const std::vector<double>& a, std::size_t n, double lambda) {
    std::vector<double> m = a;
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= lambda;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
        if (m[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
            det = -det;
        }
        det *= m[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r * n + c] / m[c * n + c];
            for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
        }
    }
    return det;
}

/// Eigenvalues of a small SPD matrix as the roots of det(A - lambda I):
/// log-spaced scan for sign changes, then bisection. Independent of any
/// rotation-based eigensolver.
inline std::vector<double> charpoly_eigen(const std::vector<double>& a, std::size_t n) {
    double gersh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
        gersh = std::max(gersh, row);
    }
    const double hi = 1.25 * gersh, lo = gersh * 1e-22;
    const std::size_t grid = 6000;
    std::vector<double> roots;
    double prev_l = hi, prev_v = shifted_det(a, n, hi);
    const double ratio = std::pow(lo / hi, 1.0 / static_cast<double>(grid));
    for (std::size_t g = 1; g <= grid; ++g) {
        const double l = hi * std::pow(ratio, static_cast<double>(g));
        const double v = shifted_det(a, n, l);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double b = prev_l, c = l, fb = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (b + c);
                const double fm = shifted_det(a, n, mid);
                if ((fm < 0.0) == (fb < 0.0)) {
                    b = mid;
                    fb = fm;
                } else {
                    c = mid;
                }
                if (std::abs(c - b) <= 1e-16 * std::abs(b)) break;
            }
            roots.push_back(0.5 * (b + c));
        }
        prev_l = l;
        prev_v = v;
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

} // namespace oracles
