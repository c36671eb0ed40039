#include "ghm/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace ghm {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "Yes";
        case Verdict::No: return "No";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

void ClassificationReport::validate() const {
    if (compact == Verdict::Yes && bounded != Verdict::Yes)
        throw std::logic_error("report invariant: compact requires bounded");
    if (bounded == Verdict::Yes && well_defined != Verdict::Yes)
        throw std::logic_error("report invariant: bounded requires well-defined");
    if (range_closed == Verdict::No && injective != Verdict::Yes)
        throw std::logic_error("report invariant: non-closed range requires injectivity");
}

std::size_t ClassificationReport::unknown_count() const {
    std::size_t n = 0;
    for (const Verdict v : {well_defined, bounded, compact, injective, range_closed})
        if (v == Verdict::Unknown) ++n;
    return n;
}

namespace {

/// Decreasing sequences are routed through the reciprocal transformation,
/// which leaves every Muckenhoupt product and every verdict unchanged.
struct Context {
    explicit Context(const NodeWeightSequence& input, std::size_t K_scan)
        : routed(!input.finite() && input.monotonicity() == Monotonicity::Decreasing),
          seq(routed ? reciprocal_transform(input) : input),
          scan(seq, K_scan) {}

    bool routed;
    NodeWeightSequence seq;
    MuckenhouptScan scan;
};

CheckResult well_defined_impl(const Context& c) {
    if (c.seq.finite())
        return {Verdict::Yes,
                {{"well_defined", "finite-dimensional",
                  {static_cast<double>(c.seq.finite_size())}}}};
    const BoundInterval m1 = c.scan.M_at_node(1);
    if (c.seq.m_series_divergent())
        return {Verdict::No, {{"well_defined", "m-series-divergent", {1.0, m1.lower}}}};
    if (m1.finite_upper())
        return {Verdict::Yes, {{"well_defined", "tail-oracle-finite", {m1.lower, m1.upper}}}};
    return {Verdict::Unknown, {{"well_defined", "no-tail-certificate", {m1.lower}}}};
}

CheckResult bounded_impl(const Context& c, Verdict well_defined) {
    if (c.seq.finite())
        return {Verdict::Yes, {{"bounded", "finite-dimensional", {}}}};
    if (well_defined == Verdict::No)
        return {Verdict::No, {{"bounded", "not-well-defined", {1.0}}}};
    const auto cert = c.seq.decay();
    if (!cert)
        return {Verdict::Unknown, {{"bounded", "no-decay-certificate", {}}}};
    if (cert->exponent <= 0.0) {
        const BoundInterval sup = c.scan.sup_product_from(1);
        return {Verdict::Yes, {{"bounded", "sup-product-bounded", {sup.lower, sup.upper}}}};
    }
    // products >= c_lo k^p with p > 0 grow without bound
    const BoundInterval tailp = c.scan.product_at_node(c.scan.window());
    return {Verdict::No,
            {{"bounded", "product-growth-certified",
              {cert->exponent, cert->c_lo, tailp.lower}}}};
}

CheckResult compact_impl(const Context& c, Verdict bounded) {
    if (c.seq.finite())
        return {Verdict::Yes, {{"compact", "finite-dimensional", {}}}};
    if (bounded == Verdict::No)
        return {Verdict::No, {{"compact", "unbounded", {}}}};
    if (bounded == Verdict::Unknown)
        return {Verdict::Unknown, {{"compact", "boundedness-unresolved", {}}}};
    const auto cert = c.seq.decay();
    if (!cert)
        return {Verdict::Unknown, {{"compact", "no-decay-certificate", {}}}};
    if (cert->exponent < 0.0)
        return {Verdict::Yes,
                {{"compact", "product-decay-vanishes", {cert->exponent, cert->c_hi}}}};
    if (cert->exponent == 0.0 && cert->c_lo > 0.0)
        return {Verdict::No, {{"compact", "products-bounded-below", {cert->c_lo}}}};
    return {Verdict::Unknown, {{"compact", "no-decay-certificate", {}}}};
}

CheckResult injective_impl(const Context& c, Verdict bounded) {
    if (!c.seq.weights_all_positive()) {
        double idx = 0.0;
        for (std::size_t k = 1; k <= c.scan.window(); ++k)
            if (c.scan.d_node(k) == 0.0) {
                idx = static_cast<double>(k);
                break;
            }
        return {Verdict::Unknown, {{"injective", "zero-weight-scanned", {idx}}}};
    }
    if (c.seq.finite())
        return {Verdict::Yes,
                {{"injective", "positive-weights-finite-rearrangeable", {}}}};
    if (bounded == Verdict::Yes)
        return {Verdict::Yes, {{"injective", "positive-weights-bounded-monotone", {}}}};
    return {Verdict::Unknown, {{"injective", "boundedness-unresolved", {}}}};
}

CheckResult ill_posed_impl(const Context& c, Verdict bounded, Verdict injective) {
    if (c.seq.finite())
        return {Verdict::Yes, {{"range_closed", "finite-rank-range-closed", {}}}};
    if (injective == Verdict::Yes && bounded == Verdict::Yes &&
        c.seq.weight_ratio_vanishes()) {
        const std::size_t W = c.scan.window();
        const double sample = c.scan.d_node(W) / std::sqrt(c.scan.x_node(W));
        return {Verdict::No,
                {{"range_closed", "liminf-weight-node-ratio-zero", {sample}}}};
    }
    return {Verdict::Unknown, {{"range_closed", "no-ill-posedness-certificate", {}}}};
}

void append(std::vector<Certificate>& into, const CheckResult& r) {
    into.insert(into.end(), r.certificates.begin(), r.certificates.end());
}

} // namespace

CheckResult check_well_defined(const NodeWeightSequence& seq, std::size_t K_scan) {
    return well_defined_impl(Context(seq, K_scan));
}

CheckResult check_bounded(const NodeWeightSequence& seq, std::size_t K_scan) {
    const Context c(seq, K_scan);
    return bounded_impl(c, well_defined_impl(c).verdict);
}

CheckResult check_compact(const NodeWeightSequence& seq, std::size_t K_scan) {
    const Context c(seq, K_scan);
    return compact_impl(c, bounded_impl(c, well_defined_impl(c).verdict).verdict);
}

CheckResult check_injective(const NodeWeightSequence& seq, std::size_t K_scan) {
    const Context c(seq, K_scan);
    return injective_impl(c, bounded_impl(c, well_defined_impl(c).verdict).verdict);
}

CheckResult check_ill_posed(const NodeWeightSequence& seq, std::size_t K_scan) {
    const Context c(seq, K_scan);
    const Verdict wd = well_defined_impl(c).verdict;
    const Verdict b = bounded_impl(c, wd).verdict;
    return ill_posed_impl(c, b, injective_impl(c, b).verdict);
}

ClassificationReport classify(const NodeWeightSequence& seq, std::size_t K_scan) {
    const Context c(seq, K_scan);
    ClassificationReport rep;
    rep.scan_window = c.scan.window();
    if (c.routed)
        rep.certificates.push_back({"all", "reciprocal-transform-route", {}});

    const CheckResult wd = well_defined_impl(c);
    const CheckResult b = bounded_impl(c, wd.verdict);
    const CheckResult cp = compact_impl(c, b.verdict);
    const CheckResult inj = injective_impl(c, b.verdict);
    const CheckResult rc = ill_posed_impl(c, b.verdict, inj.verdict);

    rep.well_defined = wd.verdict;
    rep.bounded = b.verdict;
    rep.compact = cp.verdict;
    rep.injective = inj.verdict;
    rep.range_closed = rc.verdict;
    append(rep.certificates, wd);
    append(rep.certificates, b);
    append(rep.certificates, cp);
    append(rep.certificates, inj);
    append(rep.certificates, rc);

    rep.transfer_operators = {"A", "A*", "A*A", "L", "L*", "L*L",
                              "C", "C*", "CC*", "C*C"};
    if (rep.range_closed == Verdict::No) {
        if (rep.compact == Verdict::Yes)
            rep.nashed_type = "type-II";
        else if (rep.compact == Verdict::No)
            rep.nashed_type = "type-I";
    }
    rep.validate();
    return rep;
}

} // namespace ghm
