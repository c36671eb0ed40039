#include "ghm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ghm {

TruncatedHilbertMatrix::TruncatedHilbertMatrix(const NodeWeightSequence& seq,
                                               std::size_t K, std::size_t dense_limit)
    : k_(K) {
    if (K == 0) throw InvalidParameter("truncation size must be >= 1");
    if (seq.finite() && seq.finite_size() < K)
        throw PrefixTooShort("truncation larger than custom sequence");
    xs_.resize(K);
    ds_.resize(K);
    for (std::size_t i = 0; i < K; ++i) {
        xs_[i] = seq.x(i + 1);
        ds_[i] = seq.d(i + 1);
    }
    if (K <= dense_limit) {
        entries_.resize(K * K);
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t j = i; j < K; ++j) {
                const double e = ds_[i] * ds_[j] / (xs_[i] + xs_[j]);
                entries_[i * K + j] = e;
                entries_[j * K + i] = e;
            }
        }
    }
}

double TruncatedHilbertMatrix::entry(std::size_t i, std::size_t j) const {
    if (i >= k_ || j >= k_) throw InvalidParameter("entry index out of range");
    if (dense()) return entries_[i * k_ + j];
    return ds_[i] * ds_[j] / (xs_[i] + xs_[j]);
}

const std::vector<double>& TruncatedHilbertMatrix::data() const {
    if (!dense()) throw Error("matrix exceeds the dense storage limit");
    return entries_;
}

std::vector<double> TruncatedHilbertMatrix::apply(std::span<const double> f) const {
    if (f.size() != k_) throw InvalidParameter("vector length must equal truncation size");
    std::vector<double> out(k_);
    if (dense()) {
        for (std::size_t i = 0; i < k_; ++i) {
            double acc = 0.0;
            const double* row = entries_.data() + i * k_;
            for (std::size_t j = 0; j < k_; ++j) acc += row[j] * f[j];
            out[i] = acc;
        }
    } else {
        for (std::size_t i = 0; i < k_; ++i) {
            double acc = 0.0;
            const double di = ds_[i], xi = xs_[i];
            for (std::size_t j = 0; j < k_; ++j)
                acc += di * ds_[j] / (xi + xs_[j]) * f[j];
            out[i] = acc;
        }
    }
    return out;
}

double TruncatedHilbertMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < k_; ++i) t += ds_[i] * ds_[i] / (2.0 * xs_[i]);
    return t;
}

double hilbert_entry(const NodeWeightSequence& seq, std::size_t i, std::size_t j) {
    if (i == 0 || j == 0) throw InvalidParameter("hilbert_entry indices are 1-based");
    return seq.d(i) * seq.d(j) / (seq.x(i) + seq.x(j));
}

TruncatedHilbertMatrix build_truncation(const NodeWeightSequence& seq, std::size_t K) {
    return TruncatedHilbertMatrix(seq, K);
}

std::vector<double> apply_H(const NodeWeightSequence& seq, std::span<const double> f) {
    return TruncatedHilbertMatrix(seq, f.size()).apply(f);
}

namespace {

std::vector<std::size_t> ascending_by_node(const NodeWeightSequence& seq, std::size_t K) {
    std::vector<std::size_t> order(K);
    std::iota(order.begin(), order.end(), std::size_t{0});
    switch (seq.monotonicity()) {
        case Monotonicity::Increasing:
            break;
        case Monotonicity::Decreasing:
            std::reverse(order.begin(), order.end());
            break;
        case Monotonicity::Unsorted:
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return seq.x(a + 1) < seq.x(b + 1);
            });
            break;
    }
    return order;
}

} // namespace

std::vector<double> apply_cesaro(const NodeWeightSequence& seq, std::span<const double> f) {
    const std::size_t K = f.size();
    if (K == 0) return {};
    if (seq.finite() && seq.finite_size() < K)
        throw PrefixTooShort("vector longer than custom sequence");
    const auto order = ascending_by_node(seq, K);
    std::vector<double> out(K);
    double acc = 0.0; // cumulative d_k f_k in ascending node order
    for (const std::size_t k : order) {
        acc += seq.d(k + 1) * f[k];
        out[k] = seq.d(k + 1) / seq.x(k + 1) * acc;
    }
    return out;
}

std::vector<double> apply_cesaro_adjoint(const NodeWeightSequence& seq,
                                         std::span<const double> f) {
    const std::size_t K = f.size();
    if (K == 0) return {};
    if (seq.finite() && seq.finite_size() < K)
        throw PrefixTooShort("vector longer than custom sequence");
    const auto order = ascending_by_node(seq, K);
    std::vector<double> out(K);
    double acc = 0.0; // cumulative d_k f_k / x_k in descending node order
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t k = *it;
        acc += seq.d(k + 1) * f[k] / seq.x(k + 1);
        out[k] = seq.d(k + 1) * acc;
    }
    return out;
}

double operator_norm_estimate(const TruncatedHilbertMatrix& m, double tol,
                              std::size_t max_iter) {
    const std::size_t K = m.size();
    std::vector<double> v(K, 1.0 / std::sqrt(static_cast<double>(K)));
    double lambda_prev = -1.0, lambda = 0.0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const std::vector<double> w = m.apply(v);
        lambda = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            lambda += v[i] * w[i];
            norm2 += w[i] * w[i];
        }
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < K; ++i) v[i] = w[i] / norm;
        if (it >= 2 && std::abs(lambda - lambda_prev) <= tol * std::abs(lambda))
            return lambda;
        lambda_prev = lambda;
    }
    throw NoConvergence("power iteration did not converge", lambda, std::move(v));
}

namespace {

// 64-node Gauss-Legendre rule on [-1, 1] via Newton iteration on P_64.
const std::vector<std::pair<double, double>>& gauss_legendre_64() {
    static const std::vector<std::pair<double, double>> rule = [] {
        constexpr int n = 64;
        std::vector<std::pair<double, double>> r(n);
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p0 / pp;
                if (std::abs(z - z1) < 1e-15) break;
            }
            const double wgt = 2.0 / ((1.0 - z * z) * pp * pp);
            r[i] = {-z, wgt};
            r[n - 1 - i] = {z, wgt};
        }
        return r;
    }();
    return rule;
}

} // namespace

LaplaceGrid laplace_grid(std::size_t panels) {
    if (panels == 0) throw InvalidGrid("laplace grid needs at least one panel");
    const auto& rule = gauss_legendre_64();
    LaplaceGrid g;
    g.panels = panels;
    g.u.reserve(panels * rule.size());
    g.w.reserve(panels * rule.size());
    g.t.reserve(panels * rule.size());
    const double h = 1.0 / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = p * h;
        for (const auto& [z, wgt] : rule) {
            const double u = a + 0.5 * h * (z + 1.0);
            g.u.push_back(u);
            g.w.push_back(0.5 * h * wgt);
            g.t.push_back(-std::log(u));
        }
    }
    return g;
}

std::vector<double> sample_laplace_on_grid(const NodeWeightSequence& seq,
                                           const LaplaceGrid& grid,
                                           std::span<const double> samples,
                                           std::size_t K) {
    if (grid.u.empty()) throw InvalidGrid("empty laplace grid");
    if (samples.size() != grid.u.size())
        throw InvalidGrid("sample count does not match grid");
    if (K == 0) throw InvalidParameter("K must be >= 1");
    if (seq.finite() && seq.finite_size() < K)
        throw PrefixTooShort("K larger than custom sequence");
    std::vector<double> out(K);
    for (std::size_t n = 0; n < K; ++n) {
        const double xn = seq.x(n + 1);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.u.size(); ++i)
            acc += grid.w[i] * std::pow(grid.u[i], xn - 1.0) * samples[i];
        out[n] = seq.d(n + 1) * acc;
    }
    return out;
}

LaplaceResult sample_laplace(const NodeWeightSequence& seq,
                             const std::function<double(double)>& f, std::size_t K,
                             double rel_tol, std::size_t max_panels) {
    LaplaceResult res;
    std::vector<double> prev;
    for (std::size_t panels = 1;; panels *= 2) {
        const LaplaceGrid grid = laplace_grid(panels);
        std::vector<double> samples(grid.t.size());
        for (std::size_t i = 0; i < grid.t.size(); ++i) samples[i] = f(grid.t[i]);
        std::vector<double> vals = sample_laplace_on_grid(seq, grid, samples, K);
        if (!prev.empty()) {
            double max_abs = 0.0, max_rel = 0.0;
            for (std::size_t n = 0; n < K; ++n) {
                const double diff = std::abs(vals[n] - prev[n]);
                max_abs = std::max(max_abs, diff);
                const double scale = std::max(std::abs(vals[n]), 1e-300);
                max_rel = std::max(max_rel, diff / scale);
            }
            res.error_estimate = max_abs;
            if (max_rel < rel_tol || panels >= max_panels) {
                res.values = std::move(vals);
                res.panels = panels;
                return res;
            }
        }
        prev = std::move(vals);
        if (panels >= max_panels) {
            res.values = std::move(prev);
            res.panels = panels;
            return res;
        }
    }
}

void write_vector_csv(std::ostream& out, std::span<const double> v, std::size_t K,
                      const std::string& family) {
    out << "# K=" << K << " family=" << family << "\n";
    std::ostringstream os;
    os.precision(17);
    for (const double x : v) {
        os.str("");
        os << x;
        out << os.str() << "\n";
    }
}

std::vector<double> read_vector_csv(std::istream& in) {
    std::vector<double> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        std::size_t consumed = 0;
        double val;
        try {
            val = std::stod(tok, &consumed);
        } catch (const std::exception&) {
            throw ParseError("vector line " + std::to_string(lineno) + ": not a number");
        }
        if (consumed != tok.size())
            throw ParseError("vector line " + std::to_string(lineno) + ": trailing tokens");
        v.push_back(val);
    }
    return v;
}

} // namespace ghm
