#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chilab/field.hpp"
#include "chilab/poly.hpp"

namespace chilab {

inline constexpr u32 kMaxMatrixDim = 4;

// Small dense matrix over a FieldSpec. Immutable value type.
class SquareMatrix {
public:
    SquareMatrix() = default;
    SquareMatrix(FieldSpecPtr spec, u32 n, std::vector<FieldElem> entries);

    static SquareMatrix zero(const FieldSpecPtr& spec, u32 n);
    static SquareMatrix identity(const FieldSpecPtr& spec, u32 n);
    static SquareMatrix diagonal(const std::vector<FieldElem>& d);
    static SquareMatrix anti_diagonal(const std::vector<FieldElem>& d);
    // Text form: rows separated by ';', entries by ',', field-element syntax.
    static SquareMatrix parse(const FieldSpecPtr& spec, const std::string& text);
    static SquareMatrix companion(const FPoly& monic);

    u32 n() const { return n_; }
    const FieldSpecPtr& spec() const { return spec_; }
    const FieldElem& at(u32 i, u32 j) const { return e_[i * n_ + j]; }
    SquareMatrix with(u32 i, u32 j, const FieldElem& v) const;

    SquareMatrix operator*(const SquareMatrix& o) const;
    SquareMatrix operator+(const SquareMatrix& o) const;
    SquareMatrix operator-(const SquareMatrix& o) const;
    SquareMatrix scale(const FieldElem& s) const;
    SquareMatrix transpose() const;
    FieldElem determinant() const;
    SquareMatrix inverse() const;
    SquareMatrix pow(i64 e) const;
    // Applies x -> x^q entrywise; entries must live in tower.ext().
    SquareMatrix entrywise_bar(const QuadraticTower& tower) const;

    bool operator==(const SquareMatrix& o) const;
    bool operator!=(const SquareMatrix& o) const { return !(*this == o); }
    bool is_identity() const;

    std::string str() const;
    // Row-major entry indices; lexicographic comparison of these gives the
    // canonical matrix order.
    std::vector<u64> key() const;

private:
    FieldSpecPtr spec_;
    u32 n_ = 0;
    std::vector<FieldElem> e_;
};

bool key_less(const std::vector<u64>& a, const std::vector<u64>& b);

// char_poly = product of invariant factors, min_poly = the last one;
// the chain f1 | f2 | ... is a complete GL-conjugacy invariant.
struct PolyInvariants {
    FPoly char_poly;
    FPoly min_poly;
    std::vector<FPoly> invariant_factors;  // nonconstant, ascending divisibility
};

// Invariant factors of XI - A via Smith reduction over F_q[X].
PolyInvariants poly_invariants(const SquareMatrix& A);

// P with P^{-1} A P = blockdiag of companion matrices of the invariant
// factors (ascending). Conjugators between similar matrices come from this.
struct RationalForm {
    std::vector<FPoly> factors;
    SquareMatrix transform;  // P
    SquareMatrix rcf;        // P^{-1} A P
};
RationalForm rational_canonical_form(const SquareMatrix& A);

// Evaluates a polynomial at a matrix.
SquareMatrix eval_poly(const FPoly& f, const SquareMatrix& A);

enum class GroupKind { GL, SL, U, SU };

std::string group_kind_name(GroupKind k);

// The hermitian Gram matrix antidiag(1,...,1).
SquareMatrix standard_hermitian_form(const FieldSpecPtr& ext, u32 n);

// SL: det = 1. U: tA * B * bar(A) = B for the given form (default antidiag).
// SU: both. U/SU require the entries to live in tower.ext().
bool group_membership(const SquareMatrix& A, GroupKind kind, const QuadraticTower* tower = nullptr,
                      const SquareMatrix* form = nullptr);

}  // namespace chilab
