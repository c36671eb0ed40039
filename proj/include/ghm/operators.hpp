#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ghm/sequences.hpp"

namespace ghm {

/// Leading K x K principal block of H[i][j] = d_i d_j / (x_i + x_j).
///
/// Dense up to kDenseLimit; larger blocks keep only the node/weight vectors
/// and evaluate entries on the fly during matvec (same expression, same
/// left-to-right accumulation, so results are bit-identical to the dense
/// path). Immutable after construction.
class TruncatedHilbertMatrix {
  public:
    static constexpr std::size_t kDenseLimit = 4096;

    TruncatedHilbertMatrix(const NodeWeightSequence& seq, std::size_t K,
                           std::size_t dense_limit = kDenseLimit);

    std::size_t size() const { return k_; }
    bool dense() const { return !entries_.empty(); }
    /// 0-based entry accessor.
    double entry(std::size_t i, std::size_t j) const;
    /// Row-major dense storage; only valid when dense().
    const std::vector<double>& data() const;
    double node(std::size_t i) const { return xs_[i]; }
    double weight(std::size_t i) const { return ds_[i]; }

    /// (H f)_i with fixed left-to-right accumulation per row.
    std::vector<double> apply(std::span<const double> f) const;
    double trace() const;

  private:
    std::size_t k_ = 0;
    std::vector<double> xs_, ds_;
    std::vector<double> entries_; // row-major when dense
};

/// d_i d_j / (x_i + x_j); i, j are 1-based as in the generating formulas.
double hilbert_entry(const NodeWeightSequence& seq, std::size_t i, std::size_t j);

TruncatedHilbertMatrix build_truncation(const NodeWeightSequence& seq, std::size_t K);

std::vector<double> apply_H(const NodeWeightSequence& seq, std::span<const double> f);

/// (C f)_n = (d_n / x_n) sum_{x_k <= x_n} d_k f_k over the truncation window.
std::vector<double> apply_cesaro(const NodeWeightSequence& seq, std::span<const double> f);
/// (C* f)_n = d_n sum_{x_k >= x_n} d_k f_k / x_k over the truncation window.
std::vector<double> apply_cesaro_adjoint(const NodeWeightSequence& seq,
                                         std::span<const double> f);

/// Largest eigenvalue of a symmetric PSD truncation by power iteration with a
/// deterministic all-ones start vector. Throws NoConvergence (carrying the
/// last iterate) when max_iter is exhausted.
double operator_norm_estimate(const TruncatedHilbertMatrix& m, double tol = 1e-10,
                              std::size_t max_iter = 20000);

/// Composite 64-node Gauss-Legendre grid on (0,1) after the substitution
/// u = exp(-t); t-nodes are where the integrand's time function is sampled.
struct LaplaceGrid {
    std::size_t panels = 0;
    std::vector<double> u, w, t;
};

LaplaceGrid laplace_grid(std::size_t panels);

/// (d_n integral_0^inf exp(-x_n t) f(t) dt)_{n<=K} for f sampled on the grid.
std::vector<double> sample_laplace_on_grid(const NodeWeightSequence& seq,
                                           const LaplaceGrid& grid,
                                           std::span<const double> samples, std::size_t K);

struct LaplaceResult {
    std::vector<double> values;
    double error_estimate = 0.0; // max componentwise change at the last doubling
    std::size_t panels = 0;
};

/// Panel-doubling driver: doubles the composite grid until the sampled
/// transform changes by less than rel_tol relative, then reports the result
/// with the final change as error estimate.
LaplaceResult sample_laplace(const NodeWeightSequence& seq,
                             const std::function<double(double)>& f, std::size_t K,
                             double rel_tol = 1e-10, std::size_t max_panels = 16384);

/// Vector CSV: '#' header carrying K and family, one value per line.
void write_vector_csv(std::ostream& out, std::span<const double> v, std::size_t K,
                      const std::string& family);
std::vector<double> read_vector_csv(std::istream& in);

} // namespace ghm
