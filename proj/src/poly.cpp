#include "chilab/poly.hpp"

#include <sstream>

namespace chilab {

FPoly::FPoly(FieldSpecPtr spec, std::vector<FieldElem> coeffs) : spec_(std::move(spec)), c_(std::move(coeffs)) {
    trim();
}

void FPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FPoly FPoly::zero(const FieldSpecPtr& spec) { return FPoly(spec, {}); }

FPoly FPoly::one(const FieldSpecPtr& spec) { return FPoly(spec, {spec->one()}); }

FPoly FPoly::x(const FieldSpecPtr& spec) { return FPoly(spec, {spec->zero(), spec->one()}); }

FPoly FPoly::constant(const FieldElem& c) { return FPoly(c.spec(), {c}); }

FPoly FPoly::linear_root(const FieldElem& r) { return FPoly(r.spec(), {-r, r.spec()->one()}); }

bool FPoly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

bool FPoly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

FieldElem FPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : spec_->zero(); }

FieldElem FPoly::lead() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

FPoly FPoly::operator+(const FPoly& o) const {
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), spec_->zero());
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return FPoly(spec_, std::move(r));
}

FPoly FPoly::operator-(const FPoly& o) const {
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), spec_->zero());
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return FPoly(spec_, std::move(r));
}

FPoly FPoly::operator*(const FPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(spec_);
    std::vector<FieldElem> r(c_.size() + o.c_.size() - 1, spec_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return FPoly(spec_, std::move(r));
}

FPoly FPoly::operator*(const FieldElem& s) const {
    std::vector<FieldElem> r = c_;
    for (auto& v : r) v = v * s;
    return FPoly(spec_, std::move(r));
}

std::pair<FPoly, FPoly> FPoly::divmod(const FPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    if (degree() < d.degree()) return {zero(spec_), *this};
    FieldElem lead_inv = d.lead().inverse();
    std::vector<FieldElem> rem = c_;
    std::vector<FieldElem> quo(size_t(degree() - d.degree() + 1), spec_->zero());
    for (int k = degree() - d.degree(); k >= 0; --k) {
        FieldElem c = rem[size_t(k + d.degree())] * lead_inv;
        quo[size_t(k)] = c;
        if (c.is_zero()) continue;
        for (int i = 0; i <= d.degree(); ++i)
            rem[size_t(k + i)] = rem[size_t(k + i)] - c * d.c_[size_t(i)];
    }
    return {FPoly(spec_, std::move(quo)), FPoly(spec_, std::move(rem))};
}

FPoly FPoly::make_monic() const {
    if (is_zero()) return *this;
    return (*this) * lead().inverse();
}

bool FPoly::operator==(const FPoly& o) const { return c_ == o.c_; }

FieldElem FPoly::eval(const FieldElem& at) const {
    FieldElem acc = at.spec()->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
}

std::string FPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool wrap = spec_->degree() > 1;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) os << "+";
        if (wrap)
            os << "(" << c_[i].str() << ")";
        else
            os << c_[i].str();
        if (i == 1)
            os << "*X";
        else if (i > 1)
            os << "*X^" << i;
    }
    return os.str();
}

FPoly gcd(FPoly a, FPoly b) {
    while (!b.is_zero()) {
        FPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

}  // namespace chilab
