#pragma once

#include <array>
#include <string>
#include <vector>

#include "chilab/field.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

// Zorn vector-matrix model of the split octonions: scalar diagonal (a, b),
// 3-vector off-diagonal parts u, v, norm N = ab - <u, v>.
struct ZornElement {
    FieldElem a;
    FieldElem b;
    std::array<FieldElem, 3> u;
    std::array<FieldElem, 3> v;

    bool operator==(const ZornElement& o) const;
    // Text form "a|b|u1,u2,u3|v1,v2,v3".
    std::string str() const;
    static ZornElement parse(const FieldSpecPtr& spec, const std::string& text);
};

ZornElement zorn_zero(const FieldSpecPtr& spec);
ZornElement zorn_identity(const FieldSpecPtr& spec);
ZornElement zorn_add(const ZornElement& x, const ZornElement& y);
ZornElement zorn_multiply(const ZornElement& x, const ZornElement& y);
FieldElem zorn_norm(const ZornElement& x);
// The 8 standard basis elements: (1,0,0,0), (0,1,0,0), then the u and v slots.
std::vector<ZornElement> zorn_basis(const FieldSpecPtr& spec);

// The algebra automorphism (a, b, u, v) -> (a, b, Au, tA^{-1} v) induced by
// A in SL3; fixes the diagonal subalgebra pointwise.
class Sl3ZornAction {
public:
    explicit Sl3ZornAction(const SquareMatrix& A);
    ZornElement operator()(const ZornElement& x) const;
    const SquareMatrix& matrix() const { return a_; }

private:
    SquareMatrix a_;
    SquareMatrix t_inv_;  // tA^{-1}
};

Sl3ZornAction sl3_automorphism(const SquareMatrix& A);

}  // namespace chilab
