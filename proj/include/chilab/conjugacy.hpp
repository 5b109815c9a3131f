#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chilab/field.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

inline constexpr u64 kDefaultSeed = 0x43484952414c4142ull;  // "CHIRALAB"
inline constexpr u64 kDefaultEnumCap = 10'000'000;
inline constexpr u64 kDefaultScanCap = 1'000'000;

struct RunLimits {
    u64 enum_cap = kDefaultEnumCap;
    u64 scan_cap = kDefaultScanCap;
    u64 seed = kDefaultSeed;
    u32 workers = 0;  // 0 = sequential
};

enum class AmbientKind { GL, U };

// N_A = det(Z_ambient(A)), a subgroup of the cyclic group F_q^* (GL) or
// F_{q^2}^1 (U). Membership is d^subgroup_order == 1; the witness table maps
// each attainable determinant to a centralizer element realizing it.
struct DetNormSubgroup {
    AmbientKind ambient = AmbientKind::GL;
    u64 ambient_order = 0;
    u64 subgroup_order = 0;
    u32 index = 0;
    FieldElem generator;
    bool exhaustive = true;
    std::map<u64, SquareMatrix> witness;  // det canonical index -> centralizer element

    bool contains(const FieldElem& d) const { return d.pow(subgroup_order).is_one(); }
    const SquareMatrix& witness_for(const FieldElem& d) const;
};

enum class Verdict { conjugate, not_conjugate };
enum class DecisionMethod { invariant_factors, norm_criterion, brute_force };

std::string verdict_name(Verdict v);
std::string method_name(DecisionMethod m);

struct ConjugacyDecision {
    Verdict verdict = Verdict::not_conjugate;
    DecisionMethod method = DecisionMethod::invariant_factors;
    std::optional<SquareMatrix> witness;        // g with g A g^{-1} = B, in the stated group
    std::optional<DetNormSubgroup> norm_data;   // present for norm-criterion decisions
    std::optional<FieldElem> connecting_det;    // det of the ambient-level conjugator
    GroupKind group = GroupKind::GL;
};

// Basis of {X : X A = A X} as a linear space, in canonical (RREF) order.
std::vector<SquareMatrix> centralizer_basis(const SquareMatrix& A);

// Basis of {X : X A = B X}.
std::vector<SquareMatrix> intertwiner_basis(const SquareMatrix& A, const SquareMatrix& B);

// GL conjugator built from the rational-canonical-form base changes, or
// absent when the invariant factors differ.
std::optional<SquareMatrix> gl_conjugator(const SquareMatrix& A, const SquareMatrix& B);

// tower is required (and used) only for kind U.
DetNormSubgroup det_norm_group(const SquareMatrix& A, AmbientKind kind, const QuadraticTower* tower,
                               const RunLimits& limits = {});

ConjugacyDecision decide_gl3(const SquareMatrix& A, const SquareMatrix& B);
ConjugacyDecision decide_sl3(const SquareMatrix& A, const SquareMatrix& B, const RunLimits& limits = {});
ConjugacyDecision decide_u3(const SquareMatrix& A, const SquareMatrix& B, const QuadraticTower& tower,
                            const RunLimits& limits = {});
ConjugacyDecision decide_su3(const SquareMatrix& A, const SquareMatrix& B, const QuadraticTower& tower,
                             const RunLimits& limits = {});

struct EnumerableGroup {
    GroupKind kind = GroupKind::SL;
    u32 n = 3;
    FieldSpecPtr spec;                    // matrix entry field (ext field for U/SU)
    std::optional<QuadraticTower> tower;  // required for U/SU
    u64 order() const;
};

// Full scan; returns the canonically least conjugator, independent of the
// worker partitioning.
std::optional<SquareMatrix> brute_force_conjugator(const SquareMatrix& A, const SquareMatrix& B,
                                                   const EnumerableGroup& group, const RunLimits& limits = {});

// A conjugate to A^{-1} within the stated 3x3 group.
bool is_real(const SquareMatrix& A, GroupKind kind, const QuadraticTower* tower = nullptr,
             const RunLimits& limits = {});

// Index of N_A: the number of SL (resp. SU) classes the GL (resp. U) class
// of A splits into.
u32 splitting_count(const SquareMatrix& A, AmbientKind pair, const QuadraticTower* tower = nullptr,
                    const RunLimits& limits = {});

}  // namespace chilab
