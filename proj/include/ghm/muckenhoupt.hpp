#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ghm/intervals.hpp"
#include "ghm/sequences.hpp"

namespace ghm {

/// Immutable scan cache over the first K_scan nodes of a sequence.
///
/// N(x) = sum_{x_j <= x} d_j^2 and M(x) = sum_{x_j >= x} d_j^2/x_j^2 are
/// evaluated from compensated prefix/suffix sums over the scanned window,
/// closed with the family's analytic tail bounds where the index set extends
/// past the window. All results are rigorous enclosures.
class MuckenhouptScan {
  public:
    MuckenhouptScan(const NodeWeightSequence& seq, std::size_t K_scan);

    const NodeWeightSequence& sequence() const { return seq_; }
    std::size_t window() const { return window_; }
    double x_node(std::size_t k) const;
    double d_node(std::size_t k) const;

    BoundInterval N_at(double x) const;
    BoundInterval M_at(double x) const;
    /// N(x_k), M(x_k) at scanned nodes; tighter provenance than the free-x
    /// forms because the node itself bounds the unscanned part of the sum.
    BoundInterval N_at_node(std::size_t k) const;
    BoundInterval M_at_node(std::size_t k) const;
    BoundInterval product_at_node(std::size_t k) const;

    /// sup_{k >= L} N(x_k) M(x_k), scan maximum plus analytic tail closure.
    /// Index positions refer to the monotone (sorted) arrangement, which
    /// coincides with the natural order for increasing sequences.
    BoundInterval sup_product_from(std::size_t L) const;
    /// B~(L) = sup_{K >= L} N(x_K) M(x_{K+1}) + sup_{k >= L} N(x_k) M(x_k),
    /// evaluated over the monotone arrangement; decreasing sequences route
    /// through the reciprocal transformation (same values).
    BoundInterval btilde(std::size_t L) const;

  private:
    BoundInterval n_partial(double x, bool* complete) const;
    BoundInterval m_partial(double x, bool* complete) const;

    NodeWeightSequence seq_;
    std::size_t window_ = 0;
    std::vector<double> xs_, ds_;          // natural order, 0-based storage
    std::vector<std::size_t> sorted_;      // indices sorted by ascending x
    std::vector<std::size_t> pos_;         // natural index -> sorted position
    std::vector<double> sorted_x_;
    std::vector<double> prefix_w2_;        // cumulative d^2 in sorted order
    std::vector<double> suffix_t_;         // cumulative d^2/x^2 from the top
    double tail_m_ = 0.0;
    double tail_w2_ = 0.0;
};

// Free-function forms building a one-shot scan.
BoundInterval N_of(const NodeWeightSequence& seq, double x, std::size_t K_scan);
BoundInterval M_of(const NodeWeightSequence& seq, double x, std::size_t K_scan);
BoundInterval muckenhoupt_product(const NodeWeightSequence& seq, std::size_t k,
                                  std::size_t K_scan);
BoundInterval btilde(const NodeWeightSequence& seq, std::size_t L, std::size_t K_scan);

/// Exact finite truncations N^K, M^K over an explicit pair list.
double NK_of(std::span<const NodeWeight> pairs, double x);
double MK_of(std::span<const NodeWeight> pairs, double x);

/// 1/2 (chi_{y<x}/x + chi_{y>=x}/y) <= 1/(x+y) <= chi_{y<x}/x + chi_{y>=x}/y.
bool useful_inequality_check(double x, double y);

/// sum_{x_n <= x} w_n / sqrt(sum_{x_j <= x_n} w_j) <= 2 sqrt(sum_{x_j <= x} w_j),
/// weights strictly positive. Rearrangement invariant.
bool hardy_lemma_check(std::span<const NodeWeight> pairs, double x);

constexpr std::size_t kDefaultScanWindow = 10000;

} // namespace ghm
