#pragma once

#include <optional>

#include "chilab/isolated.hpp"

namespace chilab {

// The G2(q) non-reality / chirality criterion. case1 routes through SL3(q),
// case2 through SU3(q); when chiral the witness class is a certified
// isolated representative from the corresponding group.
struct ChiralityVerdict {
    u64 q = 0;
    bool case1 = false;
    bool case2 = false;
    bool chiral = false;
    ConditionTrace trace_sl3;
    ConditionTrace trace_su3;
    std::string witness_source = "none";  // "SL3" | "SU3" | "none"
    std::optional<FieldElem> witness_alpha;
    std::optional<SquareMatrix> witness_class;
    std::optional<IsolationCertificate> witness_certificate;
};

ChiralityVerdict chirality_verdict(u64 q, const RunLimits& limits = {});

}  // namespace chilab
