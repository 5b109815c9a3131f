#include "chilab/octonion.hpp"

#include <cctype>
#include <sstream>

namespace chilab {

namespace {

using V3 = std::array<FieldElem, 3>;

FieldElem dot(const V3& x, const V3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

V3 cross(const V3& x, const V3& y) {
    return V3{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

V3 add(const V3& x, const V3& y) { return V3{x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }

V3 scale(const FieldElem& c, const V3& x) { return V3{c * x[0], c * x[1], c * x[2]}; }

V3 sub(const V3& x, const V3& y) { return V3{x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }

V3 zero3(const FieldSpecPtr& spec) { return V3{spec->zero(), spec->zero(), spec->zero()}; }

}  // namespace

bool ZornElement::operator==(const ZornElement& o) const {
    return a == o.a && b == o.b && u == o.u && v == o.v;
}

std::string ZornElement::str() const {
    std::ostringstream os;
    os << a.str() << "|" << b.str() << "|" << u[0].str() << "," << u[1].str() << "," << u[2].str() << "|"
       << v[0].str() << "," << v[1].str() << "," << v[2].str();
    return os.str();
}

ZornElement ZornElement::parse(const FieldSpecPtr& spec, const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == '|') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw SyntaxError("expected a|b|u1,u2,u3|v1,v2,v3", text.size());
    auto parse_vec = [&](const std::string& s) {
        V3 out = zero3(spec);
        size_t start = 0;
        for (int k = 0; k < 3; ++k) {
            size_t comma = k < 2 ? s.find(',', start) : s.size();
            if (comma == std::string::npos) throw SyntaxError("expected three comma-separated entries", start);
            out[size_t(k)] = spec->parse(s.substr(start, comma - start));
            start = comma + 1;
        }
        return out;
    };
    return ZornElement{spec->parse(parts[0]), spec->parse(parts[1]), parse_vec(parts[2]), parse_vec(parts[3])};
}

ZornElement zorn_zero(const FieldSpecPtr& spec) {
    return ZornElement{spec->zero(), spec->zero(), zero3(spec), zero3(spec)};
}

ZornElement zorn_identity(const FieldSpecPtr& spec) {
    return ZornElement{spec->one(), spec->one(), zero3(spec), zero3(spec)};
}

ZornElement zorn_add(const ZornElement& x, const ZornElement& y) {
    return ZornElement{x.a + y.a, x.b + y.b, add(x.u, y.u), add(x.v, y.v)};
}

ZornElement zorn_multiply(const ZornElement& x, const ZornElement& y) {
    // (a1, u1; v1, b1)(a2, u2; v2, b2) =
    //   (a1 a2 + <u1, v2>,  a1 u2 + b2 u1 - v1 x v2;
    //    a2 v1 + b1 v2 + u1 x u2,  b1 b2 + <v1, u2>)
    return ZornElement{x.a * y.a + dot(x.u, y.v), x.b * y.b + dot(x.v, y.u),
                       sub(add(scale(x.a, y.u), scale(y.b, x.u)), cross(x.v, y.v)),
                       add(add(scale(y.a, x.v), scale(x.b, y.v)), cross(x.u, y.u))};
}

FieldElem zorn_norm(const ZornElement& x) { return x.a * x.b - dot(x.u, x.v); }

std::vector<ZornElement> zorn_basis(const FieldSpecPtr& spec) {
    std::vector<ZornElement> basis;
    auto one = spec->one();
    {
        ZornElement z = zorn_zero(spec);
        z.a = one;
        basis.push_back(z);
    }
    {
        ZornElement z = zorn_zero(spec);
        z.b = one;
        basis.push_back(z);
    }
    for (size_t k = 0; k < 3; ++k) {
        ZornElement z = zorn_zero(spec);
        z.u[k] = one;
        basis.push_back(z);
    }
    for (size_t k = 0; k < 3; ++k) {
        ZornElement z = zorn_zero(spec);
        z.v[k] = one;
        basis.push_back(z);
    }
    return basis;
}

Sl3ZornAction::Sl3ZornAction(const SquareMatrix& A) : a_(A), t_inv_(A.inverse().transpose()) {
    if (A.n() != 3) throw DimensionMismatch("the Zorn action needs a 3x3 matrix");
    if (!group_membership(A, GroupKind::SL)) throw NotInAmbientGroup("the Zorn action needs det 1");
}

ZornElement Sl3ZornAction::operator()(const ZornElement& x) const {
    auto apply = [](const SquareMatrix& m, const V3& w) {
        V3 out{m.spec()->zero(), m.spec()->zero(), m.spec()->zero()};
        for (u32 i = 0; i < 3; ++i)
            for (u32 j = 0; j < 3; ++j) out[i] = out[i] + m.at(i, j) * w[j];
        return out;
    };
    return ZornElement{x.a, x.b, apply(a_, x.u), apply(t_inv_, x.v)};
}

Sl3ZornAction sl3_automorphism(const SquareMatrix& A) { return Sl3ZornAction(A); }

}  // namespace chilab
