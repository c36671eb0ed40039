#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "ghm/classify.hpp"
#include "ghm/spectral.hpp"

namespace ghm {

inline const char* to_string(BoundInterval::Provenance p) {
    switch (p) {
        case BoundInterval::Provenance::Exact: return "exact";
        case BoundInterval::Provenance::TruncatedWithTail: return "truncated-with-tail";
        case BoundInterval::Provenance::ScanOnly: return "scan-only";
    }
    return "scan-only";
}

inline nlohmann::json to_json(const BoundInterval& b) {
    nlohmann::json j;
    j["lower"] = b.lower;
    if (b.finite_upper())
        j["upper"] = b.upper;
    else
        j["upper"] = nullptr; // unbounded
    j["provenance"] = to_string(b.provenance);
    return j;
}

inline nlohmann::json to_json(const Certificate& c) {
    return nlohmann::json{{"for", c.target}, {"condition", c.condition}, {"witness", c.witness}};
}

inline nlohmann::json to_json(const ClassificationReport& r) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    return nlohmann::json{
        {"well_defined", to_string(r.well_defined)},
        {"bounded", to_string(r.bounded)},
        {"compact", to_string(r.compact)},
        {"injective", to_string(r.injective)},
        {"range_closed", to_string(r.range_closed)},
        {"certificates", certs},
        {"scan_window", r.scan_window},
        {"transfer_operators", r.transfer_operators},
        {"nashed_type", r.nashed_type},
    };
}

inline nlohmann::json to_json(const SpectralSandwich& s) {
    nlohmann::json ladder = nlohmann::json::array();
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& e : s.ladder) {
        ladder.push_back({e.K, e.lambda});
        if (!e.trusted) flags.push_back({{"K", e.K}, {"untrusted", true}});
    }
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& [K, r] : s.trace_residuals) traces.push_back({K, r});
    return nlohmann::json{
        {"k", s.k},          {"log_lower", s.log_lower}, {"upper", to_json(s.upper)},
        {"ladder", ladder},  {"flags", flags},           {"trace_residuals", traces},
    };
}

inline void write_ladder_csv(std::ostream& out, const SpectralSandwich& s,
                             const std::string& family) {
    out << "# k=" << s.k << " family=" << family << " log_lower=" << s.log_lower
        << " upper=" << s.upper.upper << "\n";
    out << "K,lambda_k,trusted\n";
    out.precision(17);
    for (const auto& e : s.ladder)
        out << e.K << "," << e.lambda << "," << (e.trusted ? 1 : 0) << "\n";
}

} // namespace ghm
