#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghm/muckenhoupt.hpp"
#include "ghm/sequences.hpp"

namespace ghm {

enum class Verdict { Yes, No, Unknown };

const char* to_string(Verdict v);

/// Machine-checkable evidence for a verdict: which verdict it supports, the
/// name of the condition used, and the witness values that were checked.
struct Certificate {
    std::string target;
    std::string condition;
    std::vector<double> witness;
};

struct ClassificationReport {
    Verdict well_defined = Verdict::Unknown;
    Verdict bounded = Verdict::Unknown;
    Verdict compact = Verdict::Unknown;
    Verdict injective = Verdict::Unknown;
    Verdict range_closed = Verdict::Unknown;
    std::vector<Certificate> certificates;
    std::size_t scan_window = 0;
    /// Boundedness/compactness verdicts transfer verbatim to these relatives.
    std::vector<std::string> transfer_operators;
    /// "type-I" (non-closed range, noncompact), "type-II" (compact), or "".
    std::string nashed_type;

    /// Throws std::logic_error if the verdict implications are violated.
    void validate() const;
    std::size_t unknown_count() const;
};

struct CheckResult {
    Verdict verdict;
    std::vector<Certificate> certificates;
};

CheckResult check_well_defined(const NodeWeightSequence& seq, std::size_t K_scan);
CheckResult check_bounded(const NodeWeightSequence& seq, std::size_t K_scan);
CheckResult check_compact(const NodeWeightSequence& seq, std::size_t K_scan);
CheckResult check_injective(const NodeWeightSequence& seq, std::size_t K_scan);
/// Verdict is for range_closed; "No" means the problem is ill-posed.
CheckResult check_ill_posed(const NodeWeightSequence& seq, std::size_t K_scan);

ClassificationReport classify(const NodeWeightSequence& seq,
                              std::size_t K_scan = kDefaultScanWindow);

} // namespace ghm
