#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "ghm/intervals.hpp"
#include "ghm/operators.hpp"
#include "ghm/sequences.hpp"

namespace ghm {

/// All eigenvalues of a dense symmetric matrix, sorted descending.
///
/// Cyclic Jacobi rotations in deterministic row-major upper-triangle order,
/// iterated until the off-diagonal Frobenius mass falls below 1e-14 ||A||_F.
/// Throws NotSymmetric when the input is not exactly symmetric.
std::vector<double> eigenvalues_sym(std::vector<double> a, std::size_t n);
std::vector<double> eigenvalues_sym(const TruncatedHilbertMatrix& m);

/// Eigenvalues below this fraction of lambda_max are reported but flagged
/// numerically untrusted; sandwich assertions skip flagged entries.
constexpr double kEigenTrustRatio = 1e-13;

/// ln gamma_k for the leading k x k block:
///   sum 2 ln d_i + sum_{i>j} 2 ln(x_i - x_j) - sum_{i,j} ln(x_i + x_j),
/// evaluated term-by-term in log space. Some d_i == 0 -> -inf sentinel.
double log_gamma(const NodeWeightSequence& seq, std::size_t k);

/// Log-space lower bound for sigma_k: ln gamma_k - (k-1) ln(tr(H^k)/(k-1)),
/// degenerating to ln gamma_1 at k = 1.
double lower_bound_sigma(const NodeWeightSequence& seq, std::size_t k);

/// sigma_k(H) <= B~(k).
BoundInterval upper_bound_sigma(const NodeWeightSequence& seq, std::size_t k,
                                std::size_t K_scan);

struct LadderEntry {
    std::size_t K;
    double lambda;
    bool trusted;
};

struct SpectralSandwich {
    std::size_t k = 0;
    double log_lower = 0.0;
    BoundInterval upper;
    std::vector<LadderEntry> ladder;
    std::vector<std::pair<std::size_t, double>> trace_residuals;
};

/// Memoized eigenvalue ladders keyed by truncation size. The lock only guards
/// the memo table; results are identical with or without it.
class SpectrumCache {
  public:
    explicit SpectrumCache(const NodeWeightSequence& seq) : seq_(seq) {}
    const NodeWeightSequence& sequence() const { return seq_; }
    std::shared_ptr<const std::vector<double>> eigenvalues(std::size_t K);
    /// Prefetch several sizes concurrently (independent matrices).
    void warm(std::span<const std::size_t> sizes);

  private:
    NodeWeightSequence seq_;
    std::mutex mu_;
    std::map<std::size_t, std::shared_ptr<const std::vector<double>>> memo_;
};

/// Doubling schedule from max(2, k) up to cap, cap itself always included.
std::vector<std::size_t> default_schedule(std::size_t k, std::size_t cap = 512);

/// Assembles the two-sided bounds and the eigenvalue ladder, asserting the
/// sandwich invariants (trusted entries only); violations throw
/// SandwichViolation. Also attaches per-truncation trace residuals.
SpectralSandwich sandwich_report(const NodeWeightSequence& seq, std::size_t k,
                                 std::span<const std::size_t> schedule,
                                 std::size_t K_scan, SpectrumCache* cache = nullptr);

} // namespace ghm
