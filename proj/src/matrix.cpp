#include "chilab/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace chilab {

SquareMatrix::SquareMatrix(FieldSpecPtr spec, u32 n, std::vector<FieldElem> entries)
    : spec_(std::move(spec)), n_(n), e_(std::move(entries)) {
    if (n_ < 1 || n_ > kMaxMatrixDim)
        throw DimensionMismatch("matrix dimension " + std::to_string(n_) + " out of supported range");
    if (e_.size() != size_t(n_) * n_) throw DimensionMismatch("entry count does not match dimension");
    for (const auto& x : e_)
        if (!x.spec()->same(*spec_)) throw DimensionMismatch("entry from a different field");
}

SquareMatrix SquareMatrix::zero(const FieldSpecPtr& spec, u32 n) {
    return SquareMatrix(spec, n, std::vector<FieldElem>(size_t(n) * n, spec->zero()));
}

SquareMatrix SquareMatrix::identity(const FieldSpecPtr& spec, u32 n) {
    auto m = std::vector<FieldElem>(size_t(n) * n, spec->zero());
    for (u32 i = 0; i < n; ++i) m[size_t(i) * n + i] = spec->one();
    return SquareMatrix(spec, n, std::move(m));
}

SquareMatrix SquareMatrix::diagonal(const std::vector<FieldElem>& d) {
    u32 n = u32(d.size());
    auto spec = d.at(0).spec();
    auto m = std::vector<FieldElem>(size_t(n) * n, spec->zero());
    for (u32 i = 0; i < n; ++i) m[size_t(i) * n + i] = d[i];
    return SquareMatrix(spec, n, std::move(m));
}

SquareMatrix SquareMatrix::anti_diagonal(const std::vector<FieldElem>& d) {
    u32 n = u32(d.size());
    auto spec = d.at(0).spec();
    auto m = std::vector<FieldElem>(size_t(n) * n, spec->zero());
    for (u32 i = 0; i < n; ++i) m[size_t(i) * n + (n - 1 - i)] = d[i];
    return SquareMatrix(spec, n, std::move(m));
}

SquareMatrix SquareMatrix::parse(const FieldSpecPtr& spec, const std::string& text) {
    std::vector<std::vector<FieldElem>> rows;
    size_t pos = 0;
    std::vector<FieldElem> row;
    std::string cur;
    auto flush_entry = [&](size_t at) {
        if (cur.empty()) throw SyntaxError("empty matrix entry", at);
        row.push_back(spec->parse(cur));
        cur.clear();
    };
    for (pos = 0; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch == ',') {
            flush_entry(pos);
        } else if (ch == ';') {
            flush_entry(pos);
            rows.push_back(std::move(row));
            row.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    flush_entry(pos);
    rows.push_back(std::move(row));
    u32 n = u32(rows.size());
    std::vector<FieldElem> entries;
    for (const auto& r : rows) {
        if (r.size() != n) throw SyntaxError("matrix is not square", text.size());
        for (const auto& x : r) entries.push_back(x);
    }
    return SquareMatrix(spec, n, std::move(entries));
}

SquareMatrix SquareMatrix::companion(const FPoly& monic) {
    if (!monic.is_monic() || monic.degree() < 1) throw Error("companion matrix needs a monic polynomial");
    u32 n = u32(monic.degree());
    auto spec = monic.spec();
    SquareMatrix m = zero(spec, n);
    std::vector<FieldElem> e = m.e_;
    for (u32 i = 0; i + 1 < n; ++i) e[size_t(i + 1) * n + i] = spec->one();
    for (u32 i = 0; i < n; ++i) e[size_t(i) * n + (n - 1)] = -monic.coeff(i);
    return SquareMatrix(spec, n, std::move(e));
}

SquareMatrix SquareMatrix::with(u32 i, u32 j, const FieldElem& v) const {
    auto e = e_;
    e[size_t(i) * n_ + j] = v;
    return SquareMatrix(spec_, n_, std::move(e));
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& o) const {
    if (n_ != o.n_ || !spec_->same(*o.spec_)) throw DimensionMismatch("matrix product shape mismatch");
    auto r = std::vector<FieldElem>(size_t(n_) * n_, spec_->zero());
    for (u32 i = 0; i < n_; ++i)
        for (u32 k = 0; k < n_; ++k) {
            const FieldElem& a = at(i, k);
            if (a.is_zero()) continue;
            for (u32 j = 0; j < n_; ++j) r[size_t(i) * n_ + j] = r[size_t(i) * n_ + j] + a * o.at(k, j);
        }
    return SquareMatrix(spec_, n_, std::move(r));
}

SquareMatrix SquareMatrix::operator+(const SquareMatrix& o) const {
    if (n_ != o.n_ || !spec_->same(*o.spec_)) throw DimensionMismatch("matrix sum shape mismatch");
    auto r = e_;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.e_[i];
    return SquareMatrix(spec_, n_, std::move(r));
}

SquareMatrix SquareMatrix::operator-(const SquareMatrix& o) const {
    if (n_ != o.n_ || !spec_->same(*o.spec_)) throw DimensionMismatch("matrix difference shape mismatch");
    auto r = e_;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - o.e_[i];
    return SquareMatrix(spec_, n_, std::move(r));
}

SquareMatrix SquareMatrix::scale(const FieldElem& s) const {
    auto r = e_;
    for (auto& x : r) x = x * s;
    return SquareMatrix(spec_, n_, std::move(r));
}

SquareMatrix SquareMatrix::transpose() const {
    auto r = e_;
    for (u32 i = 0; i < n_; ++i)
        for (u32 j = 0; j < n_; ++j) r[size_t(j) * n_ + i] = at(i, j);
    return SquareMatrix(spec_, n_, std::move(r));
}

FieldElem SquareMatrix::determinant() const {
    // Gaussian elimination with exact division.
    auto w = e_;
    FieldElem det = spec_->one();
    for (u32 col = 0; col < n_; ++col) {
        u32 piv = col;
        while (piv < n_ && w[size_t(piv) * n_ + col].is_zero()) ++piv;
        if (piv == n_) return spec_->zero();
        if (piv != col) {
            for (u32 j = 0; j < n_; ++j) std::swap(w[size_t(piv) * n_ + j], w[size_t(col) * n_ + j]);
            det = -det;
        }
        det = det * w[size_t(col) * n_ + col];
        FieldElem inv = w[size_t(col) * n_ + col].inverse();
        for (u32 j = col; j < n_; ++j) w[size_t(col) * n_ + j] = w[size_t(col) * n_ + j] * inv;
        for (u32 i = col + 1; i < n_; ++i) {
            FieldElem f = w[size_t(i) * n_ + col];
            if (f.is_zero()) continue;
            for (u32 j = col; j < n_; ++j)
                w[size_t(i) * n_ + j] = w[size_t(i) * n_ + j] - f * w[size_t(col) * n_ + j];
        }
    }
    return det;
}

SquareMatrix SquareMatrix::inverse() const {
    // Gauss-Jordan on [A | I].
    auto w = e_;
    auto r = identity(spec_, n_).e_;
    for (u32 col = 0; col < n_; ++col) {
        u32 piv = col;
        while (piv < n_ && w[size_t(piv) * n_ + col].is_zero()) ++piv;
        if (piv == n_) throw SingularMatrix("matrix is singular");
        if (piv != col)
            for (u32 j = 0; j < n_; ++j) {
                std::swap(w[size_t(piv) * n_ + j], w[size_t(col) * n_ + j]);
                std::swap(r[size_t(piv) * n_ + j], r[size_t(col) * n_ + j]);
            }
        FieldElem inv = w[size_t(col) * n_ + col].inverse();
        for (u32 j = 0; j < n_; ++j) {
            w[size_t(col) * n_ + j] = w[size_t(col) * n_ + j] * inv;
            r[size_t(col) * n_ + j] = r[size_t(col) * n_ + j] * inv;
        }
        for (u32 i = 0; i < n_; ++i) {
            if (i == col) continue;
            FieldElem f = w[size_t(i) * n_ + col];
            if (f.is_zero()) continue;
            for (u32 j = 0; j < n_; ++j) {
                w[size_t(i) * n_ + j] = w[size_t(i) * n_ + j] - f * w[size_t(col) * n_ + j];
                r[size_t(i) * n_ + j] = r[size_t(i) * n_ + j] - f * r[size_t(col) * n_ + j];
            }
        }
    }
    return SquareMatrix(spec_, n_, std::move(r));
}

SquareMatrix SquareMatrix::pow(i64 e) const {
    SquareMatrix base = e >= 0 ? *this : inverse();
    u64 k = e >= 0 ? u64(e) : u64(-e);
    SquareMatrix acc = identity(spec_, n_);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

SquareMatrix SquareMatrix::entrywise_bar(const QuadraticTower& tower) const {
    auto r = e_;
    for (auto& x : r) x = tower.bar(x);
    return SquareMatrix(spec_, n_, std::move(r));
}

bool SquareMatrix::operator==(const SquareMatrix& o) const {
    return n_ == o.n_ && spec_->same(*o.spec_) && e_ == o.e_;
}

bool SquareMatrix::is_identity() const { return *this == identity(spec_, n_); }

std::string SquareMatrix::str() const {
    std::ostringstream os;
    for (u32 i = 0; i < n_; ++i) {
        if (i > 0) os << ";";
        for (u32 j = 0; j < n_; ++j) {
            if (j > 0) os << ",";
            os << at(i, j).str();
        }
    }
    return os.str();
}

std::vector<u64> SquareMatrix::key() const {
    std::vector<u64> k;
    k.reserve(e_.size());
    for (const auto& x : e_) k.push_back(x.index());
    return k;
}

bool key_less(const std::vector<u64>& a, const std::vector<u64>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

// Smith reduction of XI - A over F_q[X], tracking U^{-1} where
// U * (XI - A) * V = diag. Row operations update U^{-1} by column operations.
struct SmithState {
    std::vector<std::vector<FPoly>> m;
    std::vector<std::vector<FPoly>> uinv;
    u32 n;

    void swap_rows(u32 a, u32 b) {
        std::swap(m[a], m[b]);
        for (u32 i = 0; i < n; ++i) std::swap(uinv[i][a], uinv[i][b]);
    }
    void swap_cols(u32 a, u32 b) {
        for (u32 i = 0; i < n; ++i) std::swap(m[i][a], m[i][b]);
    }
    // row_i -= q * row_k  =>  uinv col_k += q * col_i
    void row_sub(u32 i, u32 k, const FPoly& q) {
        for (u32 j = 0; j < n; ++j) m[i][j] = m[i][j] - q * m[k][j];
        for (u32 r = 0; r < n; ++r) uinv[r][k] = uinv[r][k] + q * uinv[r][i];
    }
    void col_sub(u32 j, u32 k, const FPoly& q) {
        for (u32 i = 0; i < n; ++i) m[i][j] = m[i][j] - q * m[i][k];
    }
    // row_k += row_i  =>  uinv col_i -= col_k
    void row_add(u32 k, u32 i) {
        for (u32 j = 0; j < n; ++j) m[k][j] = m[k][j] + m[i][j];
        for (u32 r = 0; r < n; ++r) uinv[r][i] = uinv[r][i] - uinv[r][k];
    }
    // row_k *= c  =>  uinv col_k *= c^{-1}
    void row_scale(u32 k, const FieldElem& c) {
        for (u32 j = 0; j < n; ++j) m[k][j] = m[k][j] * c;
        FieldElem ci = c.inverse();
        for (u32 r = 0; r < n; ++r) uinv[r][k] = uinv[r][k] * ci;
    }
};

SmithState smith_reduce(const SquareMatrix& A) {
    u32 n = A.n();
    auto spec = A.spec();
    SmithState s;
    s.n = n;
    s.m.assign(n, std::vector<FPoly>(n, FPoly::zero(spec)));
    s.uinv.assign(n, std::vector<FPoly>(n, FPoly::zero(spec)));
    for (u32 i = 0; i < n; ++i) {
        s.uinv[i][i] = FPoly::one(spec);
        for (u32 j = 0; j < n; ++j) {
            s.m[i][j] = i == j ? FPoly::x(spec) - FPoly::constant(A.at(i, j))
                               : FPoly::zero(spec) - FPoly::constant(A.at(i, j));
        }
    }
    for (u32 k = 0; k < n; ++k) {
        while (true) {
            // minimal-degree nonzero entry in the trailing block
            int best = -1;
            u32 bi = k, bj = k;
            for (u32 i = k; i < n; ++i)
                for (u32 j = k; j < n; ++j) {
                    if (s.m[i][j].is_zero()) continue;
                    if (best < 0 || s.m[i][j].degree() < best) {
                        best = s.m[i][j].degree();
                        bi = i;
                        bj = j;
                    }
                }
            if (best < 0) break;  // block is zero
            if (bi != k) s.swap_rows(k, bi);
            if (bj != k) s.swap_cols(k, bj);
            bool clean = true;
            for (u32 i = k + 1; i < n; ++i) {
                if (s.m[i][k].is_zero()) continue;
                auto [q, r] = s.m[i][k].divmod(s.m[k][k]);
                s.row_sub(i, k, q);
                if (!r.is_zero()) clean = false;
            }
            for (u32 j = k + 1; j < n; ++j) {
                if (s.m[k][j].is_zero()) continue;
                auto [q, r] = s.m[k][j].divmod(s.m[k][k]);
                s.col_sub(j, k, q);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            // pivot divides the rest of the block?
            bool divides = true;
            for (u32 i = k + 1; i < n && divides; ++i)
                for (u32 j = k + 1; j < n && divides; ++j)
                    if (!(s.m[i][j] % s.m[k][k]).is_zero()) {
                        s.row_add(k, i);
                        divides = false;
                    }
            if (divides) break;
        }
        if (!s.m[k][k].is_zero() && !s.m[k][k].is_monic()) s.row_scale(k, s.m[k][k].lead().inverse());
    }
    return s;
}

}  // namespace

SquareMatrix eval_poly(const FPoly& f, const SquareMatrix& A) {
    SquareMatrix acc = SquareMatrix::zero(A.spec(), A.n());
    for (size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * A + SquareMatrix::identity(A.spec(), A.n()).scale(f.coeff(i));
    return acc;
}

PolyInvariants poly_invariants(const SquareMatrix& A) {
    SmithState s = smith_reduce(A);
    PolyInvariants out;
    out.char_poly = FPoly::one(A.spec());
    for (u32 k = 0; k < A.n(); ++k) {
        const FPoly& d = s.m[k][k];
        if (d.is_zero()) throw Error("characteristic matrix is singular over F_q[X] (impossible)");
        out.char_poly = out.char_poly * d;
        if (d.degree() >= 1) out.invariant_factors.push_back(d);
    }
    out.min_poly = out.invariant_factors.back();
    return out;
}

RationalForm rational_canonical_form(const SquareMatrix& A) {
    u32 n = A.n();
    auto spec = A.spec();
    SmithState s = smith_reduce(A);
    // Powers of A up to the largest polynomial degree appearing in U^{-1}.
    int maxdeg = 0;
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) maxdeg = std::max(maxdeg, s.uinv[i][j].degree());
    std::vector<SquareMatrix> apow{SquareMatrix::identity(spec, n)};
    for (int k = 1; k <= maxdeg; ++k) apow.push_back(apow.back() * A);

    RationalForm out;
    std::vector<std::vector<FieldElem>> columns;
    for (u32 i = 0; i < n; ++i) {
        const FPoly& d = s.m[i][i];
        // generator of the i-th cyclic summand: sum_j uinv[j][i](A) e_j
        std::vector<FieldElem> v(n, spec->zero());
        for (u32 j = 0; j < n; ++j) {
            const FPoly& f = s.uinv[j][i];
            for (int k = 0; k <= f.degree(); ++k) {
                FieldElem c = f.coeff(size_t(k));
                if (c.is_zero()) continue;
                for (u32 r = 0; r < n; ++r) v[r] = v[r] + apow[size_t(k)].at(r, j) * c;
            }
        }
        if (d.degree() < 1) {
            bool zero = std::all_of(v.begin(), v.end(), [](const FieldElem& x) { return x.is_zero(); });
            if (!zero) throw Error("trivial invariant factor with nonzero generator (Smith transform bug)");
            continue;
        }
        out.factors.push_back(d);
        // cyclic basis v, Av, ..., A^{deg-1} v
        std::vector<FieldElem> w = v;
        for (int k = 0; k < d.degree(); ++k) {
            columns.push_back(w);
            std::vector<FieldElem> nw(n, spec->zero());
            for (u32 r = 0; r < n; ++r)
                for (u32 c = 0; c < n; ++c) nw[r] = nw[r] + A.at(r, c) * w[c];
            w = std::move(nw);
        }
    }
    if (columns.size() != n) throw Error("rational form basis has wrong size (Smith transform bug)");
    std::vector<FieldElem> pe(size_t(n) * n, spec->zero());
    for (u32 j = 0; j < n; ++j)
        for (u32 i = 0; i < n; ++i) pe[size_t(i) * n + j] = columns[j][i];
    out.transform = SquareMatrix(spec, n, std::move(pe));
    out.rcf = out.transform.inverse() * A * out.transform;
    // Self-check: the result must be the block companion form.
    SquareMatrix expect = SquareMatrix::zero(spec, n);
    {
        std::vector<FieldElem> ee(size_t(n) * n, spec->zero());
        u32 off = 0;
        for (const auto& f : out.factors) {
            SquareMatrix c = SquareMatrix::companion(f);
            for (u32 i = 0; i < c.n(); ++i)
                for (u32 j = 0; j < c.n(); ++j) ee[size_t(off + i) * n + (off + j)] = c.at(i, j);
            off += u32(c.n());
        }
        expect = SquareMatrix(spec, n, std::move(ee));
    }
    if (out.rcf != expect) throw Error("rational canonical form mismatch (Smith transform bug)");
    return out;
}

std::string group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::GL: return "GL";
        case GroupKind::SL: return "SL";
        case GroupKind::U: return "U";
        case GroupKind::SU: return "SU";
    }
    return "?";
}

SquareMatrix standard_hermitian_form(const FieldSpecPtr& ext, u32 n) {
    return SquareMatrix::anti_diagonal(std::vector<FieldElem>(n, ext->one()));
}

bool group_membership(const SquareMatrix& A, GroupKind kind, const QuadraticTower* tower,
                      const SquareMatrix* form) {
    switch (kind) {
        case GroupKind::GL:
            return !A.determinant().is_zero();
        case GroupKind::SL:
            return A.determinant().is_one();
        case GroupKind::U:
        case GroupKind::SU: {
            if (tower == nullptr) throw WrongTower("unitary membership requires a quadratic tower");
            if (!A.spec()->same(*tower->ext()))
                throw WrongTower("matrix entries are not in the declared quadratic extension");
            SquareMatrix B = form != nullptr ? *form : standard_hermitian_form(tower->ext(), A.n());
            bool unitary = A.transpose() * B * A.entrywise_bar(*tower) == B;
            if (kind == GroupKind::U) return unitary;
            return unitary && A.determinant().is_one();
        }
    }
    return false;
}

}  // namespace chilab
