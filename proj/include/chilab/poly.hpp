#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chilab/field.hpp"

namespace chilab {

// Dense univariate polynomial over a FieldSpec, constant term first, always
// trimmed (zero polynomial has no coefficients).
class FPoly {
public:
    FPoly() = default;
    FPoly(FieldSpecPtr spec, std::vector<FieldElem> coeffs);

    static FPoly zero(const FieldSpecPtr& spec);
    static FPoly one(const FieldSpecPtr& spec);
    static FPoly x(const FieldSpecPtr& spec);
    static FPoly constant(const FieldElem& c);
    // (x - r)
    static FPoly linear_root(const FieldElem& r);

    const FieldSpecPtr& spec() const { return spec_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_monic() const;
    FieldElem coeff(size_t i) const;
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem lead() const;

    FPoly operator+(const FPoly& o) const;
    FPoly operator-(const FPoly& o) const;
    FPoly operator*(const FPoly& o) const;
    FPoly operator*(const FieldElem& s) const;
    // Quotient and remainder; divisor must be nonzero.
    std::pair<FPoly, FPoly> divmod(const FPoly& d) const;
    FPoly operator%(const FPoly& d) const { return divmod(d).second; }
    FPoly make_monic() const;

    bool operator==(const FPoly& o) const;
    bool operator!=(const FPoly& o) const { return !(*this == o); }

    FieldElem eval(const FieldElem& at) const;
    std::string str() const;  // "c0+c1*X+c2*X^2+..."

private:
    void trim();
    FieldSpecPtr spec_;
    std::vector<FieldElem> c_;
};

FPoly gcd(FPoly a, FPoly b);

}  // namespace chilab
