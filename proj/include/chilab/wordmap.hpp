#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chilab/conjugacy.hpp"
#include "chilab/groups.hpp"
#include "chilab/word.hpp"

namespace chilab {

// Evaluates the word at a tuple of group elements (indices into the table).
u32 evaluate_word(const Word& w, const GroupTable& g, const std::vector<u32>& tuple);

enum class ImageMode { exhaustive, sampled };

struct SampledSpec {
    u64 seed = kDefaultSeed;
    u64 count = 10'000;
};

struct ImageReport {
    Word word;
    std::string group_kind;
    u64 group_size = 0;
    ImageMode mode = ImageMode::exhaustive;
    u64 tuples_evaluated = 0;
    std::vector<u32> elements;     // sorted image element indices
    std::optional<bool> symmetric; // set only in exhaustive mode
};

// Exhaustive mode requires |G|^arity <= limits.enum_cap. Sampled mode reports
// a lower-bound image and never decides symmetry.
ImageReport word_image(const Word& w, const GroupTable& g, ImageMode mode, const RunLimits& limits = {},
                       const SampledSpec& sampled = {});

// First word (by total length, then lexicographic on the reduced form) whose
// exhaustive image is not closed under inversion; absence within the budget
// proves nothing and is reported as absence.
std::optional<Word> chirality_search(const GroupTable& g, u64 max_total_length, u32 arity,
                                     const RunLimits& limits = {});

// Certificate that the composite automorphism (inner by x^{-1}, after the
// transpose-inverse twist gamma for matrix kinds) maps g to g^{-1}.
struct InversionCertificate {
    SquareMatrix element;
    GroupKind kind = GroupKind::SL;
    std::string automorphism;  // "inner" | "transpose_inverse_then_inner"
    SquareMatrix conjugator;   // x with tg = x g x^{-1} (or g^T symmetric shortcut x = 1)
    bool verified = false;
};

InversionCertificate inversion_certificate(const SquareMatrix& g, GroupKind kind,
                                           const QuadraticTower* tower = nullptr, const RunLimits& limits = {});

// Symplectic reality certificate: x in the extended group Sp4^{+-}(q) with
// x g x^{-1} = g^{-1}; conjugation by x is an automorphism of Sp4(q).
struct SpRealityCertificate {
    SquareMatrix element;
    SquareMatrix conjugator;
    bool conjugator_in_sp4 = false;  // false: in the -J coset
    bool verified = false;
};

SpRealityCertificate sp4_reality_certificate(const SquareMatrix& g, const RunLimits& limits = {});

// True iff phi(image) = image for every supplied automorphism (each a
// permutation of element indices, validated as a homomorphism).
bool automorphism_invariance_check(const Word& w, const GroupTable& g,
                                   const std::vector<std::vector<u32>>& automorphisms,
                                   const RunLimits& limits = {});

}  // namespace chilab
