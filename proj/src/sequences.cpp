#include "ghm/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ghm/intervals.hpp"

namespace ghm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_custom(const std::vector<NodeWeight>& pairs) {
    if (pairs.empty()) throw InvalidParameter("custom sequence: no pairs");
    std::vector<double> xs;
    xs.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (!std::isfinite(p.x) || p.x <= 0.0)
            throw InvalidParameter("custom sequence: x must be positive and finite");
        if (!std::isfinite(p.d) || p.d < 0.0)
            throw InvalidWeight("custom sequence: d must be nonnegative and finite");
        xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        throw DuplicateNode("custom sequence: duplicate node");
}

// Clamped double -> index conversion; a clamped-down index only widens the
// tail bound, never invalidates it.
std::size_t index_from_real(double v) {
    if (!(v > 1.0)) return 1;
    if (v > 4e15) return static_cast<std::size_t>(4e15);
    return static_cast<std::size_t>(v);
}

Monotonicity detect_order(const std::vector<NodeWeight>& pairs) {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].x <= pairs[i - 1].x) inc = false;
        if (pairs[i].x >= pairs[i - 1].x) dec = false;
    }
    if (inc) return Monotonicity::Increasing;
    if (dec) return Monotonicity::Decreasing;
    return Monotonicity::Unsorted;
}

} // namespace

NodeWeightSequence NodeWeightSequence::standard() {
    NodeWeightSequence s;
    s.family_ = Family::Standard;
    return s;
}

NodeWeightSequence NodeWeightSequence::power_alpha(double alpha, double shift) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("power family: alpha must be positive");
    if (!(shift > 0.0 && shift < 1.0))
        throw InvalidParameter("power family: shift must lie in (0,1)");
    NodeWeightSequence s;
    s.family_ = Family::PowerAlpha;
    s.alpha_ = alpha;
    s.shift_ = shift;
    return s;
}

NodeWeightSequence NodeWeightSequence::weighted_standard() {
    NodeWeightSequence s;
    s.family_ = Family::WeightedStandard;
    return s;
}

NodeWeightSequence NodeWeightSequence::odd_linear() {
    NodeWeightSequence s;
    s.family_ = Family::OddLinear;
    return s;
}

NodeWeightSequence NodeWeightSequence::squared_odd() {
    NodeWeightSequence s;
    s.family_ = Family::SquaredOdd;
    return s;
}

NodeWeightSequence NodeWeightSequence::custom(std::vector<NodeWeight> pairs) {
    validate_custom(pairs);
    NodeWeightSequence s;
    s.family_ = Family::CustomFinite;
    s.monotonicity_ = detect_order(pairs);
    s.pairs_ = std::move(pairs);
    return s;
}

double NodeWeightSequence::base_x(std::size_t i) const {
    switch (family_) {
        case Family::Standard:
        case Family::WeightedStandard:
            return static_cast<double>(i) - 0.5;
        case Family::PowerAlpha:
            return std::pow(static_cast<double>(i), alpha_) - shift_;
        case Family::OddLinear:
            return 2.0 * static_cast<double>(i) - 1.0;
        case Family::SquaredOdd: {
            const double m = 2.0 * static_cast<double>(i) - 1.0;
            return m * m;
        }
        case Family::CustomFinite:
            if (i == 0 || i > pairs_.size())
                throw PrefixTooShort("index beyond custom sequence length");
            return pairs_[i - 1].x;
    }
    throw Error("unreachable");
}

double NodeWeightSequence::base_d(std::size_t i) const {
    switch (family_) {
        case Family::Standard:
        case Family::PowerAlpha:
        case Family::OddLinear:
        case Family::SquaredOdd:
            return 1.0;
        case Family::WeightedStandard:
            return 1.0 / static_cast<double>(i);
        case Family::CustomFinite:
            if (i == 0 || i > pairs_.size())
                throw PrefixTooShort("index beyond custom sequence length");
            return pairs_[i - 1].d;
    }
    throw Error("unreachable");
}

double NodeWeightSequence::x(std::size_t i) const {
    return reciprocal_ ? 1.0 / base_x(i) : base_x(i);
}

double NodeWeightSequence::d(std::size_t i) const {
    return reciprocal_ ? base_d(i) / base_x(i) : base_d(i);
}

std::optional<DecayCertificate> NodeWeightSequence::decay() const {
    switch (family_) {
        case Family::Standard:
            return DecayCertificate{0.0, 1.0, 4.94};
        case Family::PowerAlpha: {
            if (alpha_ <= 0.5) return std::nullopt;
            const double q = 2.0 * alpha_ - 1.0;
            const double om = 1.0 - shift_;
            return DecayCertificate{2.0 - 2.0 * alpha_, 1.0 / q, 2.0 * alpha_ / (q * om * om)};
        }
        case Family::WeightedStandard:
            return DecayCertificate{-3.0, 1.0 / 3.0, 36.0};
        case Family::OddLinear:
            return DecayCertificate{0.0, 0.25, 1.5};
        case Family::SquaredOdd:
            return DecayCertificate{-2.0, 1.0 / 48.0, 7.0 / 6.0};
        case Family::CustomFinite:
            return std::nullopt;
    }
    return std::nullopt;
}

bool NodeWeightSequence::m_series_divergent() const {
    // sum (i^alpha - s)^{-2} >= sum i^{-2 alpha}, divergent for 2 alpha <= 1
    return family_ == Family::PowerAlpha && alpha_ <= 0.5;
}

bool NodeWeightSequence::weight_ratio_vanishes() const {
    // d_i / sqrt(x_i) is invariant under the reciprocal transformation:
    // (d/x) / sqrt(1/x) = d / sqrt(x).
    switch (family_) {
        case Family::Standard:
        case Family::PowerAlpha:
        case Family::OddLinear:
        case Family::SquaredOdd:
        case Family::WeightedStandard:
            return true;
        case Family::CustomFinite:
            return false;
    }
    return false;
}

bool NodeWeightSequence::weights_all_positive() const {
    if (family_ == Family::CustomFinite) {
        return std::all_of(pairs_.begin(), pairs_.end(),
                           [](const NodeWeight& p) { return p.d > 0.0; });
    }
    return true;
}

TailMethod NodeWeightSequence::tail_method() const {
    if (family_ == Family::CustomFinite) return TailMethod::ExactFinite;
    if (family_ == Family::WeightedStandard && reciprocal_) return TailMethod::ClosedForm;
    return TailMethod::IntegralTest;
}

double NodeWeightSequence::tail_m_beyond(std::size_t J) const {
    if (reciprocal_ && family_ != Family::CustomFinite) {
        // sum_{j>J} (d/x)^2 x^2 = sum_{j>J} d^2 of the base sequence
        NodeWeightSequence base = *this;
        base.reciprocal_ = false;
        return base.tail_weight_sq_beyond(J);
    }
    if (J == 0) J = 1; // integral bounds below assume J >= 1
    const double Jd = static_cast<double>(J);
    switch (family_) {
        case Family::Standard:
        case Family::WeightedStandard: {
            // weighted terms are dominated by (s - 1/2)^{-4}, standard by (s - 1/2)^{-2}
            if (family_ == Family::WeightedStandard) {
                const double a = Jd - 0.5;
                return 1.0 / (3.0 * a * a * a);
            }
            return 1.0 / (Jd - 0.5);
        }
        case Family::PowerAlpha: {
            if (alpha_ <= 0.5) return kInf;
            const double q = 2.0 * alpha_ - 1.0;
            const double om = 1.0 - shift_;
            return std::pow(Jd, -q) / (q * om * om);
        }
        case Family::OddLinear:
            return 1.0 / (2.0 * (2.0 * Jd - 1.0));
        case Family::SquaredOdd: {
            const double a = 2.0 * Jd - 1.0;
            return 1.0 / (6.0 * a * a * a);
        }
        case Family::CustomFinite: {
            KahanSum s;
            for (std::size_t j = J + 1; j <= pairs_.size(); ++j) {
                const double xv = x(j), dv = d(j);
                s.add(dv * dv / (xv * xv));
            }
            return s.value();
        }
    }
    return kInf;
}

double NodeWeightSequence::tail_weight_sq_beyond(std::size_t J) const {
    if (reciprocal_ && family_ != Family::CustomFinite) {
        NodeWeightSequence base = *this;
        base.reciprocal_ = false;
        return base.tail_m_beyond(J);
    }
    if (J == 0) J = 1;
    switch (family_) {
        case Family::WeightedStandard:
            return 1.0 / static_cast<double>(J); // integral of s^-2 from J
        case Family::CustomFinite: {
            KahanSum s;
            for (std::size_t j = J + 1; j <= pairs_.size(); ++j) s.add(d(j) * d(j));
            return s.value();
        }
        default:
            return kInf; // unit weights
    }
}

double NodeWeightSequence::upper_tail_M(double xmin, std::size_t J) const {
    if (family_ == Family::CustomFinite) {
        KahanSum s;
        for (std::size_t j = J + 1; j <= pairs_.size(); ++j) {
            const double xv = x(j), dv = d(j);
            if (xv >= xmin) s.add(dv * dv / (xv * xv));
        }
        return s.value();
    }
    if (reciprocal_) return tail_m_beyond(J); // decreasing nodes: no closed-form index map
    // first index with x_j >= xmin, from the closed-form inverse of x(i)
    std::size_t jstar = 1;
    switch (family_) {
        case Family::Standard:
        case Family::WeightedStandard:
            jstar = index_from_real(std::ceil(xmin + 0.5));
            break;
        case Family::PowerAlpha:
            jstar = index_from_real(
                std::ceil(std::pow(std::max(xmin + shift_, 0.0), 1.0 / alpha_)));
            break;
        case Family::OddLinear:
            jstar = index_from_real(std::ceil((xmin + 1.0) / 2.0));
            break;
        case Family::SquaredOdd:
            jstar = index_from_real(std::ceil((std::sqrt(std::max(xmin, 0.0)) + 1.0) / 2.0));
            break;
        case Family::CustomFinite:
            break;
    }
    std::size_t m = std::max(J, jstar > 0 ? jstar - 1 : std::size_t{0});
    // every index in (J, m] must lie strictly below xmin; back off if rounding
    // in the inverse put m one too high
    while (m > J && x(m) >= xmin) --m;
    return tail_m_beyond(std::max<std::size_t>(m, 1));
}

std::string NodeWeightSequence::name() const {
    std::string base;
    switch (family_) {
        case Family::Standard: base = "standard"; break;
        case Family::PowerAlpha: {
            std::ostringstream os;
            os << "power(alpha=" << alpha_ << ",shift=" << shift_ << ")";
            base = os.str();
            break;
        }
        case Family::WeightedStandard: base = "weighted-standard"; break;
        case Family::OddLinear: base = "odd-linear"; break;
        case Family::SquaredOdd: base = "squared-odd"; break;
        case Family::CustomFinite: {
            std::ostringstream os;
            os << "custom(n=" << pairs_.size() << ")";
            base = os.str();
            break;
        }
    }
    return reciprocal_ ? "reciprocal(" + base + ")" : base;
}

std::vector<NodeWeight> eval_prefix(const NodeWeightSequence& seq, std::size_t K) {
    if (K == 0) throw InvalidParameter("eval_prefix: K must be >= 1");
    if (seq.finite() && seq.finite_size() < K)
        throw PrefixTooShort("eval_prefix: custom sequence has fewer than K pairs");
    std::vector<NodeWeight> out;
    out.reserve(K);
    for (std::size_t i = 1; i <= K; ++i) out.push_back(seq.at(i));
    return out;
}

NodeWeightSequence reciprocal_transform(const NodeWeightSequence& seq) {
    NodeWeightSequence out = seq;
    if (seq.family() == Family::CustomFinite) {
        for (auto& p : out.pairs_) {
            const double nx = 1.0 / p.x;
            const double nd = p.d / p.x;
            p.x = nx;
            p.d = nd;
        }
        out.monotonicity_ = detect_order(out.pairs_);
        return out;
    }
    out.reciprocal_ = !seq.reciprocal();
    out.monotonicity_ =
        out.reciprocal_ ? Monotonicity::Decreasing : Monotonicity::Increasing;
    return out;
}

MonotoneEvidence detect_monotone_prefix(std::span<const NodeWeight> pairs) {
    if (pairs.empty()) throw InvalidParameter("detect_monotone_prefix: empty input");
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].x == pairs[i - 1].x) throw DuplicateNode("adjacent duplicate node");
        if (pairs[i].x < pairs[i - 1].x) inc = false;
        if (pairs[i].x > pairs[i - 1].x) dec = false;
    }
    {
        std::vector<double> xs;
        xs.reserve(pairs.size());
        for (const auto& p : pairs) xs.push_back(p.x);
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
            throw DuplicateNode("duplicate node");
    }
    if (inc) return MonotoneEvidence::Increasing;
    if (dec) return MonotoneEvidence::Decreasing;
    return MonotoneEvidence::None;
}

namespace {

NodeWeightSequence from_json_object(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ParseError("sequence JSON: expected object with a \"family\" key");
    const std::string fam = j.at("family").get<std::string>();
    const nlohmann::json params =
        j.contains("params") ? j.at("params") : nlohmann::json::object();
    if (fam == "standard") return NodeWeightSequence::standard();
    if (fam == "weighted-standard") return NodeWeightSequence::weighted_standard();
    if (fam == "odd-linear") return NodeWeightSequence::odd_linear();
    if (fam == "squared-odd") return NodeWeightSequence::squared_odd();
    if (fam == "power") {
        const double alpha = params.value("alpha", 1.0);
        const double shift = params.value("shift", 0.5);
        return NodeWeightSequence::power_alpha(alpha, shift);
    }
    throw ParseError("sequence JSON: unknown family \"" + fam + "\"");
}

} // namespace

NodeWeightSequence NodeWeightSequence::from_text(const std::string& text) {
    // Sniff JSON: first non-space character '{'
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("sequence JSON: ") + e.what());
        }
        return from_json_object(j);
    }
    std::vector<NodeWeight> pairs;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double xv, dv;
        if (!(ls >> xv)) continue; // blank or comment-only line
        if (!(ls >> dv))
            throw ParseError("line " + std::to_string(lineno) + ": expected \"x d\"");
        std::string rest;
        if (ls >> rest)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
        if (!(xv > 0.0) || !std::isfinite(xv))
            throw ParseError("line " + std::to_string(lineno) + ": x must be positive");
        if (dv < 0.0 || !std::isfinite(dv))
            throw ParseError("line " + std::to_string(lineno) + ": d must be nonnegative");
        pairs.push_back({xv, dv});
    }
    if (pairs.empty()) throw ParseError("sequence file: no pairs found");
    return custom(std::move(pairs));
}

NodeWeightSequence NodeWeightSequence::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sequence file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

} // namespace ghm
