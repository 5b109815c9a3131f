#include "chilab/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chilab {

namespace {

bool is_prime(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

u64 pow_u64_checked(u64 p, u32 n, u64 cap) {
    u64 r = 1;
    for (u32 i = 0; i < n; ++i) {
        if (r > cap / p) return 0;  // overflowed the cap
        r *= p;
    }
    return r;
}

// Dense polynomials over F_p, constant term first, not necessarily trimmed.
using PolyP = std::vector<u32>;

int deg(const PolyP& f) {
    for (int i = int(f.size()) - 1; i >= 0; --i)
        if (f[size_t(i)] != 0) return i;
    return -1;
}

PolyP mul_mod_p(const PolyP& a, const PolyP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = u32((r[i + j] + u64(a[i]) * b[j]) % p);
    }
    return r;
}

u32 inv_mod_p(u32 a, u64 p) {
    // Extended Euclid on integers.
    i64 t = 0, nt = 1, r = i64(p), nr = i64(a % p);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (t < 0) t += i64(p);
    return u32(t);
}

// In-place remainder of a by monic f.
void rem_by_monic(PolyP& a, const PolyP& f, u64 p) {
    int df = deg(f);
    int da = deg(a);
    while (da >= df && df >= 0) {
        u64 c = a[size_t(da)];
        for (int i = 0; i <= df; ++i) {
            u64 v = a[size_t(da - df + i)] + p * p - c * f[size_t(i)] % p;
            a[size_t(da - df + i)] = u32(v % p);
        }
        da = deg(a);
    }
    a.resize(size_t(df >= 0 ? df : 0));
    if (df > 0) a.resize(size_t(df), 0);
}

PolyP powmod_x(u64 e, const PolyP& f, u64 p) {
    // x^e mod f
    PolyP base{0, 1};
    rem_by_monic(base, f, p);
    PolyP acc{1};
    acc.resize(base.size(), 0);
    while (e > 0) {
        if (e & 1) {
            acc = mul_mod_p(acc, base, p);
            rem_by_monic(acc, f, p);
        }
        base = mul_mod_p(base, base, p);
        rem_by_monic(base, f, p);
        e >>= 1;
    }
    return acc;
}

PolyP gcd_poly(PolyP a, PolyP b, u64 p) {
    while (deg(b) >= 0) {
        // a mod b with b made monic first
        int db = deg(b);
        u32 lead_inv = inv_mod_p(b[size_t(db)], p);
        PolyP bm(b.begin(), b.begin() + db + 1);
        for (auto& c : bm) c = u32(u64(c) * lead_inv % p);
        PolyP r = a;
        rem_by_monic(r, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const PolyP& f, u32 n, u64 p) {
    // f monic of degree n. Standard criterion: x^{p^n} = x mod f, and for
    // every prime r | n, gcd(x^{p^{n/r}} - x, f) = 1.
    u64 pn = 1;
    for (u32 i = 0; i < n; ++i) pn *= p;
    PolyP xp = powmod_x(pn, f, p);
    // xp must equal x
    PolyP x{0, 1};
    x.resize(std::max<size_t>(xp.size(), 2), 0);
    xp.resize(x.size(), 0);
    if (xp != x) return false;
    for (u64 r : prime_factors(n)) {
        u64 e = 1;
        for (u32 i = 0; i < n / r; ++i) e *= p;
        PolyP g = powmod_x(e, f, p);
        g.resize(std::max<size_t>(g.size(), 2), 0);
        // g - x
        g[1] = u32((u64(g[1]) + p - 1) % p);
        PolyP d = gcd_poly(f, g, p);
        if (deg(d) != 0) return false;
    }
    return true;
}

std::vector<u32> canonical_modulus(u32 p, u32 n) {
    if (n == 1) return {0, 1};  // t, by convention
    u64 count = 1;
    for (u32 i = 0; i < n; ++i) count *= p;
    for (u64 k = 0; k < count; ++k) {
        PolyP f(n + 1, 0);
        u64 v = k;
        for (u32 i = 0; i < n; ++i) {
            f[i] = u32(v % p);
            v /= p;
        }
        f[n] = 1;
        if (is_irreducible(f, n, p)) return f;
    }
    throw Error("no irreducible polynomial found (impossible)");
}

std::mutex g_registry_mutex;
std::map<std::pair<u64, u32>, std::weak_ptr<const FieldSpec>>& registry() {
    static std::map<std::pair<u64, u32>, std::weak_ptr<const FieldSpec>> r;
    return r;
}

}  // namespace

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<std::pair<u64, u32>> prime_power_decompose(u64 q) {
    if (q < 2) return std::nullopt;
    auto fs = prime_factors(q);
    if (fs.size() != 1) return std::nullopt;
    u64 p = fs[0];
    u32 k = 0;
    while (q > 1) {
        q /= p;
        ++k;
    }
    return std::make_pair(p, k);
}

FieldSpec::FieldSpec(u32 p, u32 n, u64 order, std::vector<u32> modulus)
    : p_(p), n_(n), order_(order), modulus_(std::move(modulus)) {}

FieldSpecPtr FieldSpec::make(u64 p, u32 n, u64 size_cap) {
    if (!is_prime(p)) throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw Error("extension degree must be at least 1");
    u64 order = pow_u64_checked(p, n, size_cap);
    if (order == 0)
        throw SizeCapExceeded("field order " + std::to_string(p) + "^" + std::to_string(n) +
                              " exceeds cap " + std::to_string(size_cap));
    {
        std::lock_guard<std::mutex> lk(g_registry_mutex);
        auto it = registry().find({p, n});
        if (it != registry().end()) {
            if (auto sp = it->second.lock()) return sp;
        }
    }
    auto mod = canonical_modulus(u32(p), n);
    auto sp = FieldSpecPtr(new FieldSpec(u32(p), n, order, std::move(mod)));
    {
        std::lock_guard<std::mutex> lk(g_registry_mutex);
        registry()[{p, n}] = sp;
    }
    return sp;
}

std::string FieldSpec::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (u32 i = 0; i <= n_; ++i) {
        u32 c = modulus_[i];
        if (c == 0 && !(i == n_)) continue;
        if (!first) os << "+";
        if (i == 0)
            os << c;
        else if (i == 1)
            os << c << "*t";
        else
            os << c << "*t^" << i;
        first = false;
    }
    return os.str();
}

FieldElem FieldSpec::zero() const {
    return FieldElem(shared_from_this(), std::vector<u32>(n_, 0));
}

FieldElem FieldSpec::one() const {
    std::vector<u32> c(n_, 0);
    c[0] = 1 % p_;
    return FieldElem(shared_from_this(), c);
}

FieldElem FieldSpec::from_coeffs(const std::vector<u32>& c) const {
    if (c.size() > n_) throw Error("coefficient sequence longer than extension degree");
    std::vector<u32> v(n_, 0);
    for (size_t i = 0; i < c.size(); ++i) v[i] = c[i] % p_;
    return FieldElem(shared_from_this(), v);
}

FieldElem FieldSpec::from_index(u64 idx) const {
    if (idx >= order_) throw Error("element index out of range");
    std::vector<u32> v(n_, 0);
    for (u32 i = 0; i < n_; ++i) {
        v[i] = u32(idx % p_);
        idx /= p_;
    }
    return FieldElem(shared_from_this(), v);
}

FieldElem FieldSpec::from_int(i64 v) const {
    i64 m = v % i64(p_);
    if (m < 0) m += i64(p_);
    std::vector<u32> c(n_, 0);
    c[0] = u32(m);
    return FieldElem(shared_from_this(), c);
}

FieldElem FieldSpec::parse(const std::string& text) const {
    // prime field: decimal integer; extension: "c0+c1*t+c2*t^2+..."
    size_t pos = 0;
    auto fail = [&](const std::string& m) -> FieldElem { throw SyntaxError(m, pos); };
    auto read_uint = [&]() -> u64 {
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected digit");
        u64 v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + u64(text[pos] - '0');
            if (v >= (u64(1) << 40)) fail("coefficient too large");
            ++pos;
        }
        return v;
    };
    std::vector<u32> c(n_, 0);
    if (text.empty()) fail("empty field element");
    u32 next_power = 0;
    while (true) {
        u64 coeff = read_uint();
        if (coeff >= p_) fail("coefficient not reduced mod " + std::to_string(p_));
        u32 power = 0;
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            if (pos >= text.size() || text[pos] != 't') fail("expected 't'");
            ++pos;
            power = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                u64 e = read_uint();
                if (e < 2) fail("explicit exponent must be at least 2");
                power = u32(e);
            }
        }
        if (power >= n_) fail("term degree exceeds field degree");
        if (power < next_power) fail("terms out of order");
        c[power] = u32(coeff);
        next_power = power + 1;
        if (pos == text.size()) break;
        if (text[pos] != '+') fail("expected '+'");
        ++pos;
    }
    return FieldElem(shared_from_this(), c);
}

FieldElem::FieldElem(FieldSpecPtr spec, std::vector<u32> coeffs) : spec_(std::move(spec)), c_(std::move(coeffs)) {
    if (c_.size() != spec_->degree()) throw Error("coefficient length mismatch");
}

bool FieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u32 v) { return v == 0; });
}

bool FieldElem::is_one() const {
    if (c_[0] != 1 % spec_->characteristic()) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

u64 FieldElem::index() const {
    u64 idx = 0;
    u64 p = spec_->characteristic();
    for (size_t i = c_.size(); i-- > 0;) idx = idx * p + c_[i];
    return idx;
}

void FieldElem::check_same(const FieldElem& o) const {
    if (!spec_ || !o.spec_ || !spec_->same(*o.spec_))
        throw DimensionMismatch("field elements from different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(o);
    u64 p = spec_->characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = u32((u64(c_[i]) + o.c_[i]) % p);
    return FieldElem(spec_, r);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same(o);
    u64 p = spec_->characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = u32((u64(c_[i]) + p - o.c_[i]) % p);
    return FieldElem(spec_, r);
}

FieldElem FieldElem::operator-() const {
    u64 p = spec_->characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = u32((p - c_[i]) % p);
    return FieldElem(spec_, r);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(o);
    u64 p = spec_->characteristic();
    PolyP prod = mul_mod_p(c_, o.c_, p);
    rem_by_monic(prod, spec_->modulus_, p);
    prod.resize(spec_->degree(), 0);
    return FieldElem(spec_, std::vector<u32>(prod.begin(), prod.end()));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw ZeroElement("inverse of zero");
    u64 p = spec_->characteristic();
    // Extended Euclid in F_p[t]: find u with u * this = 1 mod modulus.
    PolyP r0 = spec_->modulus_;
    PolyP r1 = c_;
    PolyP s0{0}, s1{1};
    while (deg(r1) > 0) {
        int d1 = deg(r1);
        u32 li = inv_mod_p(r1[size_t(d1)], p);
        PolyP r1m(r1.begin(), r1.begin() + d1 + 1);
        for (auto& c : r1m) c = u32(u64(c) * li % p);
        // quotient of r0 by r1m
        PolyP q(size_t(std::max(deg(r0) - d1 + 1, 1)), 0);
        PolyP rem = r0;
        int dr = deg(rem);
        while (dr >= d1) {
            u64 coef = rem[size_t(dr)];
            q[size_t(dr - d1)] = u32(coef);
            for (int i = 0; i <= d1; ++i) {
                u64 v = rem[size_t(dr - d1 + i)] + p * p - coef * r1m[size_t(i)] % p;
                rem[size_t(dr - d1 + i)] = u32(v % p);
            }
            dr = deg(rem);
        }
        // scale: r0 = q * (li * r1) + rem, so r0 - (q*li)*r1 = rem
        PolyP qli = q;
        for (auto& c : qli) c = u32(u64(c) * li % p);
        PolyP new_s = s0;
        PolyP t = mul_mod_p(qli, s1, p);
        new_s.resize(std::max(new_s.size(), t.size()), 0);
        for (size_t i = 0; i < t.size(); ++i) new_s[i] = u32((new_s[i] + p - t[i] % p) % p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(new_s);
    }
    if (deg(r1) != 0) throw Error("modulus not irreducible (gcd not constant)");
    u32 li = inv_mod_p(r1[0], p);
    PolyP inv = s1;
    for (auto& c : inv) c = u32(u64(c) * li % p);
    rem_by_monic(inv, spec_->modulus_, p);
    inv.resize(spec_->degree(), 0);
    return FieldElem(spec_, std::vector<u32>(inv.begin(), inv.end()));
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return (*this) * o.inverse(); }

FieldElem FieldElem::pow(u64 e) const {
    FieldElem acc = spec_->one();
    FieldElem base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FieldElem FieldElem::pow(i64 e) const {
    if (e >= 0) return pow(u64(e));
    return inverse().pow(u64(-e));
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (!spec_ || !o.spec_) return spec_ == o.spec_;
    return spec_->same(*o.spec_) && c_ == o.c_;
}

std::string FieldElem::str() const {
    if (spec_->degree() == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    for (u32 i = 0; i < spec_->degree(); ++i) {
        if (i > 0) os << "+";
        if (i == 0)
            os << c_[i];
        else if (i == 1)
            os << c_[i] << "*t";
        else
            os << c_[i] << "*t^" << i;
    }
    return os.str();
}

u64 multiplicative_order(const FieldElem& x) {
    if (x.is_zero()) throw ZeroElement("order of zero");
    u64 ord = x.spec()->order() - 1;
    for (u64 r : prime_factors(ord)) {
        while (ord % r == 0 && x.pow(ord / r).is_one()) ord /= r;
    }
    return ord;
}

FieldElem frobenius_bar(const FieldElem& x) {
    u32 n = x.spec()->degree();
    if (n % 2 != 0)
        throw WrongTower("element's field has odd degree; not a quadratic extension");
    u64 q = 1;
    for (u32 i = 0; i < n / 2; ++i) q *= x.spec()->characteristic();
    return x.pow(q);
}

QuadraticTower QuadraticTower::make(u64 q, u64 size_cap) {
    auto pk = prime_power_decompose(q);
    if (!pk) throw NonPrimeCharacteristic(std::to_string(q) + " is not a prime power");
    auto [p, n] = *pk;
    QuadraticTower t;
    t.q_ = q;
    t.base_ = FieldSpec::make(p, n, size_cap);
    t.ext_ = FieldSpec::make(p, 2 * n, size_cap);
    // Canonically least root of the base modulus in the extension; for n = 1
    // the base modulus is t with root 0, which is never used (constants embed
    // as constants).
    FieldElem beta = t.ext_->zero();
    if (n > 1) {
        const auto& mod = t.base_->modulus();
        bool found = false;
        for (u64 i = 0; i < t.ext_->order(); ++i) {
            FieldElem cand = t.ext_->from_index(i);
            FieldElem acc = t.ext_->zero();
            for (size_t k = mod.size(); k-- > 0;) acc = acc * cand + t.ext_->from_int(i64(mod[k]));
            if (acc.is_zero()) {
                beta = cand;
                found = true;
                break;
            }
        }
        if (!found) throw Error("no root of base modulus in extension (impossible)");
    }
    t.beta_pow_.clear();
    FieldElem acc = t.ext_->one();
    for (u32 i = 0; i < n; ++i) {
        t.beta_pow_.push_back(acc);
        acc = acc * beta;
    }
    return t;
}

FieldElem QuadraticTower::embed(const FieldElem& x) const {
    if (!x.spec()->same(*base_)) throw WrongTower("embed expects a base-field element");
    FieldElem acc = ext_->zero();
    for (size_t i = 0; i < beta_pow_.size(); ++i)
        acc = acc + beta_pow_[i] * ext_->from_int(i64(x.coeffs()[i]));
    return acc;
}

FieldElem QuadraticTower::project(const FieldElem& x) const {
    if (!in_ext(x)) throw WrongTower("project expects an extension element");
    u32 n = base_->degree();
    u32 m = ext_->degree();
    u64 p = base_->characteristic();
    // Solve sum_i a_i beta^i = x over F_p by Gaussian elimination on an m x n system.
    std::vector<std::vector<u32>> A(m, std::vector<u32>(n + 1, 0));
    for (u32 j = 0; j < n; ++j)
        for (u32 i = 0; i < m; ++i) A[i][j] = beta_pow_[j].coeffs()[i];
    for (u32 i = 0; i < m; ++i) A[i][n] = x.coeffs()[i];
    u32 row = 0;
    std::vector<i64> pivot_col(n, -1);
    for (u32 col = 0; col < n && row < m; ++col) {
        u32 pr = row;
        while (pr < m && A[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(A[pr], A[row]);
        u32 li = inv_mod_p(A[row][col], p);
        for (u32 j = col; j <= n; ++j) A[row][j] = u32(u64(A[row][j]) * li % p);
        for (u32 i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            u64 f = A[i][col];
            for (u32 j = col; j <= n; ++j)
                A[i][j] = u32((A[i][j] + p * p - f * A[row][j] % p) % p);
        }
        pivot_col[col] = row;
        ++row;
    }
    std::vector<u32> out(n, 0);
    for (u32 col = 0; col < n; ++col)
        if (pivot_col[col] >= 0) out[col] = A[size_t(pivot_col[col])][n];
    // Consistency: rows beyond the pivots must be zero.
    for (u32 i = row; i < m; ++i)
        if (A[i][n] != 0) throw WrongTower("element does not lie in the base field image");
    FieldElem res = base_->from_coeffs(out);
    if (embed(res) != x) throw WrongTower("element does not lie in the base field image");
    return res;
}

FieldElem QuadraticTower::bar(const FieldElem& x) const {
    if (!in_ext(x)) throw WrongTower("bar expects an extension element");
    return x.pow(q_);
}

FieldElem QuadraticTower::norm(const FieldElem& x) const { return project(x * bar(x)); }

bool QuadraticTower::in_ext(const FieldElem& x) const { return x.spec()->same(*ext_); }

NormOneGroup NormOneGroup::make(u64 q, u64 size_cap) {
    NormOneGroup g;
    g.tower_ = QuadraticTower::make(q, size_cap);
    const auto& ext = g.tower_.ext();
    for (u64 i = 1; i < ext->order(); ++i) {
        FieldElem x = ext->from_index(i);
        if (x.pow(q + 1).is_one()) g.elements_.push_back(x);
    }
    if (g.elements_.size() != q + 1)
        throw Error("norm-one group has unexpected size");
    bool found = false;
    for (const auto& x : g.elements_) {
        if (multiplicative_order(x) == q + 1) {
            g.generator_ = x;
            found = true;
            break;
        }
    }
    if (!found) throw Error("no generator of order q+1 (impossible: group is cyclic)");
    return g;
}

bool NormOneGroup::contains(const FieldElem& x) const {
    return tower_.in_ext(x) && !x.is_zero() && x.pow(q() + 1).is_one();
}

namespace {

bool has_exact_order(const FieldElem& x, u64 m) {
    if (!x.pow(m).is_one()) return false;
    for (u64 r : prime_factors(m))
        if (x.pow(m / r).is_one()) return false;
    return true;
}

}  // namespace

std::optional<FieldElem> primitive_root_of_unity(const FieldSpecPtr& spec, u64 m) {
    if (m == 0) throw Error("order must be positive");
    if ((spec->order() - 1) % m != 0) return std::nullopt;
    for (u64 i = 1; i < spec->order(); ++i) {
        FieldElem x = spec->from_index(i);
        if (has_exact_order(x, m)) return x;
    }
    return std::nullopt;
}

std::optional<FieldElem> primitive_root_of_unity(const NormOneGroup& group, u64 m) {
    if (m == 0) throw Error("order must be positive");
    if ((group.q() + 1) % m != 0) return std::nullopt;
    for (const auto& x : group.elements())
        if (has_exact_order(x, m)) return x;
    return std::nullopt;
}

bool cube_root_solvable(const FieldElem& g) {
    if (g.is_zero()) throw ZeroElement("cube root of zero");
    u64 n = g.spec()->order() - 1;
    u64 d = std::gcd<u64, u64>(3, n);
    return g.pow(n / d).is_one();
}

bool cube_root_solvable(const FieldElem& g, const NormOneGroup& ambient) {
    if (g.is_zero()) throw ZeroElement("cube root of zero");
    if (!ambient.contains(g)) throw NotInAmbientGroup("element is not in the norm-one group");
    u64 n = ambient.q() + 1;
    u64 d = std::gcd<u64, u64>(3, n);
    return g.pow(n / d).is_one();
}

}  // namespace chilab
