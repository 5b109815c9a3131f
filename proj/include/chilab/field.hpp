#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chilab/errors.hpp"

namespace chilab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Per-field size cap; guards accidental blow-ups, configurable per spec.
inline constexpr u64 kDefaultFieldCap = u64(1) << 16;

class FieldSpec;
class FieldElem;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

// F_{p^n} with the canonical modulus: the first monic irreducible of degree n
// over F_p in index order, where a polynomial c0 + c1 t + ... maps to the
// index sum(c_i p^i). Two specs with equal (p, n) are the same field.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    static FieldSpecPtr make(u64 p, u32 n, u64 size_cap = kDefaultFieldCap);

    u32 characteristic() const { return p_; }
    u32 degree() const { return n_; }
    u64 order() const { return order_; }
    // Monic modulus, constant term first, length n+1.
    const std::vector<u32>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    FieldElem zero() const;
    FieldElem one() const;
    // Coefficients constant-term first; reduced mod p; length at most n.
    FieldElem from_coeffs(const std::vector<u32>& c) const;
    // Inverse of FieldElem::index().
    FieldElem from_index(u64 idx) const;
    FieldElem from_int(i64 v) const;
    FieldElem parse(const std::string& text) const;

    bool same(const FieldSpec& o) const { return p_ == o.p_ && n_ == o.n_; }

private:
    FieldSpec(u32 p, u32 n, u64 order, std::vector<u32> modulus);
    u32 p_;
    u32 n_;
    u64 order_;
    std::vector<u32> modulus_;
    friend class FieldElem;
};

// Immutable element of a FieldSpec; all operations are pure.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldSpecPtr spec, std::vector<u32> coeffs);

    const FieldSpecPtr& spec() const { return spec_; }
    const std::vector<u32>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    // Canonical order key: sum c_i p^i.
    u64 index() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(i64 e) const;
    FieldElem pow(u64 e) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check_same(const FieldElem& o) const;
    FieldSpecPtr spec_;
    std::vector<u32> c_;  // length n, constant term first, entries in [0, p)
};

// Multiplicative order of a nonzero element.
u64 multiplicative_order(const FieldElem& x);

// x -> x^q on a field of even degree 2m over F_p, with q = p^m. Applying it
// twice is the identity and F_q is fixed pointwise.
FieldElem frobenius_bar(const FieldElem& x);

// F_{q^2} over F_q. For non-prime q the pair is represented as
// F_{p^{2n}} / F_{p^n} with the subfield embedding computed once.
class QuadraticTower {
public:
    static QuadraticTower make(u64 q, u64 size_cap = kDefaultFieldCap);

    u64 q() const { return q_; }
    const FieldSpecPtr& base() const { return base_; }
    const FieldSpecPtr& ext() const { return ext_; }

    FieldElem embed(const FieldElem& x) const;
    // Inverse of embed; requires x to be fixed by bar.
    FieldElem project(const FieldElem& x) const;
    FieldElem bar(const FieldElem& x) const;
    // x * bar(x), landing in the base field.
    FieldElem norm(const FieldElem& x) const;
    bool in_ext(const FieldElem& x) const;

private:
    u64 q_ = 0;
    FieldSpecPtr base_;
    FieldSpecPtr ext_;
    std::vector<FieldElem> beta_pow_;  // beta^0..beta^{n-1}, beta a root of the base modulus
};

// The q+1 elements of F_{q^2} with x * bar(x) = 1, sorted canonically,
// together with a verified generator of order q+1.
class NormOneGroup {
public:
    static NormOneGroup make(u64 q, u64 size_cap = kDefaultFieldCap);

    u64 q() const { return tower_.q(); }
    u64 size() const { return elements_.size(); }
    const QuadraticTower& tower() const { return tower_; }
    const std::vector<FieldElem>& elements() const { return elements_; }
    const FieldElem& generator() const { return generator_; }
    bool contains(const FieldElem& x) const;

private:
    QuadraticTower tower_;
    std::vector<FieldElem> elements_;
    FieldElem generator_;
};

// Canonically-least element of exact multiplicative order m, if any.
// Present in F_q^* iff m | q-1; in the norm-one group iff m | q+1.
std::optional<FieldElem> primitive_root_of_unity(const FieldSpecPtr& spec, u64 m);
std::optional<FieldElem> primitive_root_of_unity(const NormOneGroup& group, u64 m);

// True iff x^3 = g has a solution in the ambient multiplicative group.
bool cube_root_solvable(const FieldElem& g);
bool cube_root_solvable(const FieldElem& g, const NormOneGroup& ambient);

// Decomposes q as p^k with p prime, or returns nullopt.
std::optional<std::pair<u64, u32>> prime_power_decompose(u64 q);

// Distinct prime factors, ascending.
std::vector<u64> prime_factors(u64 n);

}  // namespace chilab
