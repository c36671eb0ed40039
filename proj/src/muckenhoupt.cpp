#include "ghm/muckenhoupt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ghm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MuckenhouptScan::MuckenhouptScan(const NodeWeightSequence& seq, std::size_t K_scan)
    : seq_(seq) {
    if (K_scan == 0) throw InvalidParameter("scan window must be >= 1");
    // finite sequences are always scanned in full: their sums are complete by
    // construction, and the window only caps infinite scans
    window_ = seq.finite() ? seq.finite_size() : K_scan;
    xs_.resize(window_);
    ds_.resize(window_);
    for (std::size_t i = 0; i < window_; ++i) {
        xs_[i] = seq.x(i + 1);
        ds_[i] = seq.d(i + 1);
    }
    sorted_.resize(window_);
    std::iota(sorted_.begin(), sorted_.end(), std::size_t{0});
    switch (seq.monotonicity()) {
        case Monotonicity::Increasing:
            break;
        case Monotonicity::Decreasing:
            std::reverse(sorted_.begin(), sorted_.end());
            break;
        case Monotonicity::Unsorted:
            std::sort(sorted_.begin(), sorted_.end(),
                      [&](std::size_t a, std::size_t b) { return xs_[a] < xs_[b]; });
            break;
    }
    pos_.resize(window_);
    sorted_x_.resize(window_);
    for (std::size_t p = 0; p < window_; ++p) {
        pos_[sorted_[p]] = p;
        sorted_x_[p] = xs_[sorted_[p]];
    }
    prefix_w2_.resize(window_);
    suffix_t_.resize(window_);
    KahanSum acc;
    for (std::size_t p = 0; p < window_; ++p) {
        const double dv = ds_[sorted_[p]];
        acc.add(dv * dv);
        prefix_w2_[p] = acc.value();
    }
    acc = KahanSum{};
    for (std::size_t p = window_; p-- > 0;) {
        const double dv = ds_[sorted_[p]], xv = xs_[sorted_[p]];
        acc.add(dv * dv / (xv * xv));
        suffix_t_[p] = acc.value();
    }
    tail_m_ = seq.finite() ? 0.0 : seq.tail_m_beyond(window_);
    tail_w2_ = seq.finite() ? 0.0 : seq.tail_weight_sq_beyond(window_);
}

double MuckenhouptScan::x_node(std::size_t k) const {
    if (k == 0 || k > window_) throw InvalidParameter("node index outside scan window");
    return xs_[k - 1];
}

double MuckenhouptScan::d_node(std::size_t k) const {
    if (k == 0 || k > window_) throw InvalidParameter("node index outside scan window");
    return ds_[k - 1];
}

BoundInterval MuckenhouptScan::N_at(double x) const {
    const auto it = std::upper_bound(sorted_x_.begin(), sorted_x_.end(), x);
    const std::size_t cnt = static_cast<std::size_t>(it - sorted_x_.begin());
    const double partial = cnt == 0 ? 0.0 : prefix_w2_[cnt - 1];
    if (seq_.finite()) return BoundInterval::exact(partial);
    if (seq_.monotonicity() == Monotonicity::Increasing) {
        // unscanned nodes all exceed x_{window}; complete iff x below the last
        if (x < xs_[window_ - 1]) return BoundInterval::exact(partial);
        return BoundInterval::scan_only(partial);
    }
    // decreasing: every unscanned node lies below x_{window}, so the weight
    // tail bound covers whatever part of it falls at or below x
    if (std::isfinite(tail_w2_)) return BoundInterval::truncated(partial, partial + tail_w2_);
    return BoundInterval::scan_only(partial);
}

BoundInterval MuckenhouptScan::M_at(double x) const {
    const auto it = std::lower_bound(sorted_x_.begin(), sorted_x_.end(), x);
    const std::size_t i0 = static_cast<std::size_t>(it - sorted_x_.begin());
    const double partial = i0 == window_ ? 0.0 : suffix_t_[i0];
    if (seq_.finite()) return BoundInterval::exact(partial);
    if (seq_.monotonicity() == Monotonicity::Increasing) {
        const double tail = seq_.upper_tail_M(x, window_);
        if (std::isfinite(tail)) return BoundInterval::truncated(partial, partial + tail);
        return BoundInterval::scan_only(partial);
    }
    // decreasing: unscanned nodes are below x_{window}
    if (x > xs_[window_ - 1]) return BoundInterval::exact(partial);
    if (std::isfinite(tail_m_)) return BoundInterval::truncated(partial, partial + tail_m_);
    return BoundInterval::scan_only(partial);
}

BoundInterval MuckenhouptScan::N_at_node(std::size_t k) const {
    if (k == 0 || k > window_) throw InvalidParameter("node index outside scan window");
    const std::size_t p = pos_[k - 1];
    const double partial = prefix_w2_[p];
    if (seq_.finite()) return BoundInterval::exact(partial);
    if (seq_.monotonicity() == Monotonicity::Increasing)
        return BoundInterval::exact(partial); // unscanned nodes are all larger
    if (std::isfinite(tail_w2_)) return BoundInterval::truncated(partial, partial + tail_w2_);
    return BoundInterval::scan_only(partial);
}

BoundInterval MuckenhouptScan::M_at_node(std::size_t k) const {
    if (k == 0 || k > window_) throw InvalidParameter("node index outside scan window");
    const std::size_t p = pos_[k - 1];
    const double partial = suffix_t_[p];
    if (seq_.finite()) return BoundInterval::exact(partial);
    if (seq_.monotonicity() == Monotonicity::Decreasing)
        return BoundInterval::exact(partial); // unscanned nodes are all smaller
    if (std::isfinite(tail_m_)) return BoundInterval::truncated(partial, partial + tail_m_);
    return BoundInterval::scan_only(partial);
}

BoundInterval MuckenhouptScan::product_at_node(std::size_t k) const {
    return N_at_node(k).product(M_at_node(k));
}

BoundInterval MuckenhouptScan::sup_product_from(std::size_t L) const {
    if (L == 0) throw InvalidParameter("L must be >= 1");
    if (L > window_) {
        if (seq_.finite()) return BoundInterval::exact(0.0);
        throw InvalidParameter("scan window smaller than L");
    }
    double lo = 0.0, hi = 0.0;
    auto prov = BoundInterval::Provenance::Exact;
    // positions in the monotone (sorted) arrangement; identical to natural
    // indices for increasing sequences
    for (std::size_t p = L - 1; p < window_; ++p) {
        const BoundInterval pr = product_at_node(sorted_[p] + 1);
        lo = std::max(lo, pr.lower);
        hi = std::max(hi, pr.upper);
        prov = BoundInterval::combine(prov, pr.provenance);
    }
    if (!seq_.finite()) {
        const auto cert = seq_.decay();
        if (cert && cert->exponent <= 0.0) {
            hi = std::max(hi, cert->c_hi * std::pow(static_cast<double>(window_ + 1),
                                                    cert->exponent));
            prov = BoundInterval::combine(prov, BoundInterval::Provenance::TruncatedWithTail);
        } else if (cert) {
            hi = kInf; // products grow like c_lo k^p with p > 0
            prov = BoundInterval::combine(prov, BoundInterval::Provenance::TruncatedWithTail);
        } else {
            hi = kInf;
            prov = BoundInterval::Provenance::ScanOnly;
        }
    }
    return BoundInterval{lo, hi, prov};
}

BoundInterval MuckenhouptScan::btilde(std::size_t L) const {
    if (L == 0) throw InvalidParameter("L must be >= 1");
    if (!seq_.finite() && seq_.monotonicity() == Monotonicity::Decreasing) {
        // products are invariant under the reciprocal transformation; evaluate
        // on the increasing partner
        return MuckenhouptScan(reciprocal_transform(seq_), window_).btilde(L);
    }
    const BoundInterval term2 = sup_product_from(L);
    double lo = 0.0, hi = 0.0;
    auto prov = BoundInterval::Provenance::Exact;
    // N at the p-th smallest node times M at the next one up
    for (std::size_t p = L - 1; p + 1 < window_; ++p) {
        const BoundInterval pr =
            N_at_node(sorted_[p] + 1).product(M_at_node(sorted_[p + 1] + 1));
        lo = std::max(lo, pr.lower);
        hi = std::max(hi, pr.upper);
        prov = BoundInterval::combine(prov, pr.provenance);
    }
    if (!seq_.finite()) {
        const auto cert = seq_.decay();
        // N(x_K) M(x_{K+1}) <= N(x_{K+1}) M(x_{K+1}) for increasing nodes
        if (cert && cert->exponent <= 0.0) {
            hi = std::max(hi, cert->c_hi * std::pow(static_cast<double>(window_ + 1),
                                                    cert->exponent));
            prov = BoundInterval::combine(prov, BoundInterval::Provenance::TruncatedWithTail);
        } else if (cert) {
            hi = kInf;
            prov = BoundInterval::combine(prov, BoundInterval::Provenance::TruncatedWithTail);
        } else {
            hi = kInf;
            prov = BoundInterval::Provenance::ScanOnly;
        }
    }
    const BoundInterval term1{lo, hi, prov};
    return term1.add(term2);
}

BoundInterval N_of(const NodeWeightSequence& seq, double x, std::size_t K_scan) {
    return MuckenhouptScan(seq, K_scan).N_at(x);
}

BoundInterval M_of(const NodeWeightSequence& seq, double x, std::size_t K_scan) {
    return MuckenhouptScan(seq, K_scan).M_at(x);
}

BoundInterval muckenhoupt_product(const NodeWeightSequence& seq, std::size_t k,
                                  std::size_t K_scan) {
    return MuckenhouptScan(seq, K_scan).product_at_node(k);
}

BoundInterval btilde(const NodeWeightSequence& seq, std::size_t L, std::size_t K_scan) {
    return MuckenhouptScan(seq, K_scan).btilde(L);
}

double NK_of(std::span<const NodeWeight> pairs, double x) {
    double s = 0.0;
    for (const auto& p : pairs)
        if (p.x <= x) s += p.d * p.d;
    return s;
}

double MK_of(std::span<const NodeWeight> pairs, double x) {
    double s = 0.0;
    for (const auto& p : pairs)
        if (p.x >= x) s += p.d * p.d / (p.x * p.x);
    return s;
}

bool useful_inequality_check(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw InvalidParameter("useful inequality needs x, y > 0");
    const double sel = (y < x) ? 1.0 / x : 1.0 / y; // 1 / max{x, y}
    const double mid = 1.0 / (x + y);
    const double guard = 1.0 + 1e-13;
    return 0.5 * sel <= mid * guard && mid <= sel * guard;
}

bool hardy_lemma_check(std::span<const NodeWeight> pairs, double x) {
    if (pairs.empty()) throw InvalidParameter("hardy lemma: empty input");
    std::vector<NodeWeight> sorted(pairs.begin(), pairs.end());
    for (const auto& p : sorted)
        if (!(p.d > 0.0) || !std::isfinite(p.d))
            throw InvalidWeight("hardy lemma: weights must be strictly positive");
    std::sort(sorted.begin(), sorted.end(),
              [](const NodeWeight& a, const NodeWeight& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].x == sorted[i - 1].x) throw DuplicateNode("hardy lemma: duplicate node");
    double lhs = 0.0, running = 0.0, total_at_x = 0.0;
    for (const auto& p : sorted) {
        if (p.x > x) break;
        running += p.d;
        lhs += p.d / std::sqrt(running);
        total_at_x = running;
    }
    const double rhs = 2.0 * std::sqrt(total_at_x);
    return lhs <= rhs * (1.0 + 1e-12);
}

} // namespace ghm
