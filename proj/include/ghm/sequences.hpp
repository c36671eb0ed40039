#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghm/errors.hpp"

namespace ghm {

enum class Family { Standard, PowerAlpha, WeightedStandard, OddLinear, SquaredOdd, CustomFinite };
enum class Monotonicity { Increasing, Decreasing, Unsorted };
enum class MonotoneEvidence { Increasing, Decreasing, None };
enum class TailMethod { IntegralTest, ClosedForm, ExactFinite };

struct NodeWeight {
    double x;
    double d;
};

/// Analytic two-sided envelope for the Muckenhoupt products of a family:
/// c_lo * k^exponent <= N(x_k) M(x_k) <= c_hi * k^exponent for all k >= 1.
struct DecayCertificate {
    double exponent;
    double c_lo;
    double c_hi;
};

/// A node/weight pair sequence (x_i, d_i), i = 1, 2, ...
///
/// Built-in families generate pairs on the fly and carry analytic metadata
/// (tail bounds, product decay envelopes). Custom sequences are genuinely
/// finite. Objects are immutable after construction and safe for concurrent
/// reads.
class NodeWeightSequence {
  public:
    /// x_i = i - 1/2, d_i = 1.
    static NodeWeightSequence standard();
    /// x_i = i^alpha - shift, d_i = 1; alpha > 0, shift in (0,1).
    static NodeWeightSequence power_alpha(double alpha, double shift = 0.5);
    /// x_i = i - 1/2, d_i = 1/i.
    static NodeWeightSequence weighted_standard();
    /// x_i = 2i - 1, d_i = 1 (sampling nodes of the fractional heat problem).
    static NodeWeightSequence odd_linear();
    /// x_i = (2i - 1)^2, d_i = 1 (sampling nodes of the sideways heat problem).
    static NodeWeightSequence squared_odd();
    /// Finite user-supplied pairs; x positive and pairwise distinct, d >= 0.
    static NodeWeightSequence custom(std::vector<NodeWeight> pairs);

    /// Reads either the "x d" per-line text format ('#' comments) or a JSON
    /// object {"family": "...", "params": {...}} selecting a built-in.
    static NodeWeightSequence from_file(const std::string& path);
    static NodeWeightSequence from_text(const std::string& text);

    Family family() const { return family_; }
    bool reciprocal() const { return reciprocal_; }
    Monotonicity monotonicity() const { return monotonicity_; }
    bool finite() const { return family_ == Family::CustomFinite; }
    /// Number of pairs for finite sequences, 0 otherwise.
    std::size_t finite_size() const { return pairs_.size(); }
    double alpha() const { return alpha_; }
    double shift() const { return shift_; }

    /// 1-based accessors matching the generating formulas.
    double x(std::size_t i) const;
    double d(std::size_t i) const;
    NodeWeight at(std::size_t i) const { return {x(i), d(i)}; }

    /// Product decay envelope; absent for CustomFinite and for families whose
    /// M-series diverges.
    std::optional<DecayCertificate> decay() const;
    /// Certified divergence of sum d_j^2 / x_j^2 (integral comparison).
    bool m_series_divergent() const;
    /// Certified liminf d_i / sqrt(x_i) = 0 from the closed-form ratio.
    bool weight_ratio_vanishes() const;
    /// True when the family formula guarantees d_i > 0 for every i.
    bool weights_all_positive() const;

    TailMethod tail_method() const;
    /// Upper bound on sum_{j > J} d_j^2 / x_j^2 (may be +inf).
    double tail_m_beyond(std::size_t J) const;
    /// Upper bound on sum_{j > J} d_j^2 (may be +inf).
    double tail_weight_sq_beyond(std::size_t J) const;
    /// Upper bound on sum over x_j >= xmin, j > J of d_j^2 / x_j^2.
    double upper_tail_M(double xmin, std::size_t J) const;

    std::string name() const;
    const std::vector<NodeWeight>& custom_pairs() const { return pairs_; }

  private:
    NodeWeightSequence() = default;
    friend NodeWeightSequence reciprocal_transform(const NodeWeightSequence&);

    double base_x(std::size_t i) const;
    double base_d(std::size_t i) const;

    Family family_ = Family::Standard;
    bool reciprocal_ = false;
    Monotonicity monotonicity_ = Monotonicity::Increasing;
    double alpha_ = 1.0;
    double shift_ = 0.5;
    std::vector<NodeWeight> pairs_;
};

/// First K pairs; deterministic. CustomFinite shorter than K -> PrefixTooShort.
std::vector<NodeWeight> eval_prefix(const NodeWeightSequence& seq, std::size_t K);

/// x_i' = 1/x_i, d_i' = d_i/x_i. Leaves every matrix entry d_i d_j/(x_i+x_j)
/// unchanged; applying it twice restores the original sequence.
NodeWeightSequence reciprocal_transform(const NodeWeightSequence& seq);

/// Prefix-level monotonicity evidence; duplicate x -> DuplicateNode.
MonotoneEvidence detect_monotone_prefix(std::span<const NodeWeight> pairs);

} // namespace ghm
