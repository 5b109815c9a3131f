#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chilab/conjugacy.hpp"
#include "chilab/field.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

enum class IsoGroup { SL3, SU3 };
enum class TheoremVerdict { exists, not_exists };
enum class CensusMode { criterion, oracle };

std::string iso_group_name(IsoGroup g);

// Both phrasings of the existence condition, computed independently.
struct ConditionTrace {
    bool arithmetic = false;      // SL3: q = 1 mod 3 and q != 1 mod 9; SU3: q = 2 mod 3 and q^2 != 1 mod 9
    bool prim3_present = false;   // in F_q^* (SL3) / F_{q^2}^1 (SU3)
    bool prim9_present = false;   // in F_q^* (SL3) / F_{q^2}^* (SU3)
    bool root_phrasing = false;   // prim3_present && !prim9_present
};

// The isolation certificate: two negative conjugacy decisions.
// SL3 pairs M against tM and M^{-1}; SU3 against bar(M)^{-1} and M^{-1}.
struct IsolationCertificate {
    bool isolated = false;
    ConjugacyDecision vs_partner;  // transpose (SL3) or bar-inverse (SU3)
    ConjugacyDecision vs_inverse;
};

struct ClassRecord {
    std::string label;  // "A", "A1", "A2"
    FieldElem alpha;
    SquareMatrix rep;
    bool distinct = true;                      // representative of a new class in its triple
    std::optional<std::string> same_class_as;  // label when not distinct
    bool is_isolated = false;
    std::optional<IsolationCertificate> certificate;  // present when distinct
};

struct ClassRelation {
    std::string from;
    std::string map;  // "transpose" | "inverse"
    std::string to;
    bool holds = false;
    std::optional<SquareMatrix> witness;
};

// Ground-truth class partition by conjugation orbits under a verified
// generating set, with per-class isolation read off the partition itself.
struct CensusClass {
    SquareMatrix rep;  // canonically least member
    u64 size = 0;
    bool isolated = false;
};

struct OracleCensus {
    u64 group_order = 0;
    std::vector<CensusClass> classes;
    u32 isolated_count = 0;
    bool matches_criterion = false;
};

struct IsolatedReport {
    u64 q = 0;
    IsoGroup group = IsoGroup::SL3;
    CensusMode mode = CensusMode::criterion;
    TheoremVerdict verdict = TheoremVerdict::not_exists;
    ConditionTrace trace;
    std::vector<FieldElem> alpha_choices;
    std::vector<ClassRecord> classes;
    std::vector<ClassRelation> relations;
    u32 class_count_isolated = 0;
    std::optional<OracleCensus> census;
};

// The split triple (A, A1, A2): A the alpha-Jordan block, A1 and A2 its
// conjugates by diag(alpha, 1, 1) and diag(alpha^2, 1, 1).
std::array<SquareMatrix, 3> canonical_reps_sl3(const FieldSpecPtr& spec, const FieldElem& alpha);

// The unitary split triple; A1, A2 conjugate A by diag(1, alpha, 1) and
// diag(1, alpha^2, 1). The (1,3) entry -alpha/(1+alpha^2) is computed by
// field arithmetic.
std::array<SquareMatrix, 3> canonical_reps_su3(const NormOneGroup& group, const FieldElem& alpha);

IsolationCertificate is_isolated(const SquareMatrix& M, IsoGroup group, const QuadraticTower* tower = nullptr,
                                 const RunLimits& limits = {});

std::pair<TheoremVerdict, ConditionTrace> theorem_verdict(u64 q, IsoGroup group);

IsolatedReport enumerate_isolated(u64 q, IsoGroup group, CensusMode mode = CensusMode::criterion,
                                  const RunLimits& limits = {});

}  // namespace chilab
