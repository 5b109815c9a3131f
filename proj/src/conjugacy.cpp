#include "chilab/conjugacy.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "chilab/ftab.hpp"
#include "chilab/group_enum.hpp"
#include "chilab/parallel.hpp"

namespace chilab {

std::string verdict_name(Verdict v) { return v == Verdict::conjugate ? "conjugate" : "not_conjugate"; }

std::string method_name(DecisionMethod m) {
    switch (m) {
        case DecisionMethod::invariant_factors: return "invariant_factors";
        case DecisionMethod::norm_criterion: return "norm_criterion";
        case DecisionMethod::brute_force: return "brute_force";
    }
    return "?";
}

const SquareMatrix& DetNormSubgroup::witness_for(const FieldElem& d) const {
    auto it = witness.find(d.index());
    if (it == witness.end()) throw Error("no centralizer witness for determinant " + d.str());
    return it->second;
}

namespace {

// RREF kernel basis of the linear map X -> X A - B X on n x n matrices.
// Variables are X entries in row-major order; the basis is canonical.
std::vector<SquareMatrix> kernel_basis(const SquareMatrix& A, const SquareMatrix& B) {
    u32 n = A.n();
    auto spec = A.spec();
    u32 nv = n * n;
    std::vector<std::vector<FieldElem>> rows(nv, std::vector<FieldElem>(nv, spec->zero()));
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) {
            auto& row = rows[i * n + j];
            // (X A)_{ij} = sum_s X_{is} A_{sj}; (B X)_{ij} = sum_r B_{ir} X_{rj}
            for (u32 s = 0; s < n; ++s) row[i * n + s] = row[i * n + s] + A.at(s, j);
            for (u32 r = 0; r < n; ++r) row[r * n + j] = row[r * n + j] - B.at(i, r);
        }
    std::vector<i64> pivot_of_col(nv, -1);
    u32 rank = 0;
    for (u32 col = 0; col < nv && rank < nv; ++col) {
        u32 pr = rank;
        while (pr < nv && rows[pr][col].is_zero()) ++pr;
        if (pr == nv) continue;
        std::swap(rows[pr], rows[rank]);
        FieldElem inv = rows[rank][col].inverse();
        for (u32 j = 0; j < nv; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (u32 i = 0; i < nv; ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            FieldElem f = rows[i][col];
            for (u32 j = 0; j < nv; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::vector<SquareMatrix> basis;
    for (u32 free_col = 0; free_col < nv; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<FieldElem> v(nv, spec->zero());
        v[free_col] = spec->one();
        for (u32 col = 0; col < nv; ++col)
            if (pivot_of_col[col] >= 0) v[col] = -rows[size_t(pivot_of_col[col])][free_col];
        basis.emplace_back(spec, n, std::move(v));
    }
    return basis;
}

M3 herm_form_m3(const FieldTable& t) { return M3{0, 0, t.one, 0, t.one, 0, t.one, 0, 0}; }

// sigma(X) = B tr(bar(X)) B for B = antidiag(1,1,1); an anti-automorphism of
// the matrix algebra sending every member of U_3 to its inverse.
M3 m3_sigma(const FieldTable& t, const M3& x) {
    M3 b = herm_form_m3(t);
    return m3_mul(t, b, m3_mul(t, m3_transpose(m3_bar(t, x)), b));
}

struct ScanContext {
    std::shared_ptr<const FieldTable> tab;
    std::vector<M3> basis;
    u64 q = 0;
};

ScanContext scan_context(const std::vector<SquareMatrix>& basis) {
    ScanContext c;
    c.tab = field_table(basis.at(0).spec());
    for (const auto& b : basis) c.basis.push_back(m3_from(b));
    c.q = c.tab->q;
    return c;
}

M3 combine(const ScanContext& c, u64 tuple) {
    const FieldTable& t = *c.tab;
    M3 x{};
    for (const auto& b : c.basis) {
        u32 coef = u32(tuple % c.q);
        tuple /= c.q;
        if (coef != 0)
            for (int k = 0; k < 9; ++k) x[size_t(k)] = t.addf(x[size_t(k)], t.mulf(coef, b[size_t(k)]));
    }
    return x;
}

u64 pow_or_cap(u64 base, size_t exp, u64 cap) {
    u64 r = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

void verify_witness(const SquareMatrix& w, const SquareMatrix& A, const SquareMatrix& B, GroupKind kind,
                    const QuadraticTower* tower) {
    if (w * A != B * w) throw Error("internal: witness fails g A = B g");
    if (!group_membership(w, kind, tower)) throw Error("internal: witness not in stated group");
}

}  // namespace

std::vector<SquareMatrix> centralizer_basis(const SquareMatrix& A) { return kernel_basis(A, A); }

std::vector<SquareMatrix> intertwiner_basis(const SquareMatrix& A, const SquareMatrix& B) {
    return kernel_basis(A, B);
}

std::optional<SquareMatrix> gl_conjugator(const SquareMatrix& A, const SquareMatrix& B) {
    if (A.n() != B.n() || !A.spec()->same(*B.spec()))
        throw DimensionMismatch("conjugacy requires matching field and dimension");
    if (A == B) return SquareMatrix::identity(A.spec(), A.n());
    RationalForm ra = rational_canonical_form(A);
    RationalForm rb = rational_canonical_form(B);
    if (ra.factors.size() != rb.factors.size()) return std::nullopt;
    for (size_t i = 0; i < ra.factors.size(); ++i)
        if (ra.factors[i] != rb.factors[i]) return std::nullopt;
    SquareMatrix g = rb.transform * ra.transform.inverse();
    if (g * A != B * g) throw Error("internal: rational-form conjugator failed");
    return g;
}

DetNormSubgroup det_norm_group(const SquareMatrix& A, AmbientKind kind, const QuadraticTower* tower,
                               const RunLimits& limits) {
    if (A.n() != 3) throw DimensionMismatch("det_norm_group supports 3x3 matrices");
    if (kind == AmbientKind::U) {
        if (tower == nullptr) throw WrongTower("kind U requires a quadratic tower");
        if (!group_membership(A, GroupKind::U, tower)) throw NotInAmbientGroup("matrix is not unitary");
    } else if (A.determinant().is_zero()) {
        throw NotInAmbientGroup("matrix is singular");
    }
    auto spec = A.spec();
    auto basis = centralizer_basis(A);
    ScanContext ctx = scan_context(basis);
    const FieldTable& t = *ctx.tab;
    u64 q = t.q;
    u64 ambient_order = kind == AmbientKind::GL ? q - 1 : tower->q() + 1;

    DetNormSubgroup out;
    out.ambient = kind;
    out.ambient_order = ambient_order;
    std::map<u64, SquareMatrix> witnesses;

    u64 space = pow_or_cap(q, ctx.basis.size(), limits.scan_cap);
    if (space <= limits.scan_cap) {
        out.exhaustive = true;
        for (u64 tup = 0; tup < space; ++tup) {
            M3 x = combine(ctx, tup);
            u32 d = m3_det(t, x);
            if (d == 0) continue;
            if (kind == AmbientKind::U && !m3_is_unitary(t, x)) continue;
            witnesses.try_emplace(d, m3_to(t, x));
        }
    } else {
        out.exhaustive = false;
        std::mt19937_64 rng(limits.seed);
        bool regular = poly_invariants(A).invariant_factors.size() == 1;
        witnesses.try_emplace(t.one, SquareMatrix::identity(spec, 3));
        u64 stable = 0, attempts = 0, current_order = 1;
        const u64 max_attempts = 50'000'000;
        std::vector<std::pair<u64, SquareMatrix>> gens;
        while (stable < 64) {
            if (++attempts > max_attempts)
                throw WitnessSearchExhausted("determinant subgroup sampling did not stabilize");
            u64 tup = 0;
            for (size_t i = 0; i < ctx.basis.size(); ++i) tup = tup * q + rng() % q;
            M3 x = combine(ctx, tup);
            if (m3_det(t, x) == 0) continue;
            if (kind == AmbientKind::U) {
                if (regular) {
                    // Hilbert-90 point: sigma(x)^{-1} x is a unitary centralizer
                    // element, and for a commutative centralizer every unitary
                    // element arises this way, uniformly.
                    M3 s = m3_sigma(t, x);
                    x = m3_mul(t, m3_inverse(t, s), x);
                    if (!m3_is_unitary(t, x)) throw Error("internal: Hilbert-90 point not unitary");
                } else if (!m3_is_unitary(t, x)) {
                    continue;
                }
            }
            u32 d = m3_det(t, x);
            if (!witnesses.count(d)) {
                SquareMatrix m = m3_to(t, x);
                witnesses.emplace(d, m);
                gens.emplace_back(d, m);
            }
            u64 ord = multiplicative_order(spec->from_index(d));
            u64 next = std::lcm(current_order, ord);
            if (next == current_order) {
                ++stable;
            } else {
                current_order = next;
                stable = 0;
            }
        }
        // Close the witness table into the full generated subgroup.
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::pair<u64, SquareMatrix>> fresh;
            for (const auto& [d1, m1] : witnesses)
                for (const auto& [d2, m2] : gens) {
                    u32 d = t.mulf(u32(d1), u32(d2));
                    if (witnesses.count(d)) continue;
                    if (std::any_of(fresh.begin(), fresh.end(), [&](const auto& pr) { return pr.first == d; }))
                        continue;
                    fresh.emplace_back(d, m1 * m2);
                }
            if (!fresh.empty()) {
                grew = true;
                for (auto& pr : fresh) witnesses.emplace(pr.first, std::move(pr.second));
            }
        }
    }
    out.subgroup_order = witnesses.size();
    if (out.subgroup_order == 0 || ambient_order % out.subgroup_order != 0)
        throw Error("internal: determinant subgroup order does not divide ambient order");
    out.index = u32(ambient_order / out.subgroup_order);
    out.witness = std::move(witnesses);
    // Canonically least generator: the first ambient element of exact order
    // |N_A|; in a cyclic ambient group it necessarily lies in N_A.
    bool found = false;
    if (kind == AmbientKind::GL) {
        for (u64 i = 1; i < q && !found; ++i) {
            FieldElem x = spec->from_index(i);
            if (x.pow(out.subgroup_order).is_one() && multiplicative_order(x) == out.subgroup_order) {
                out.generator = x;
                found = true;
            }
        }
    } else {
        NormOneGroup no = NormOneGroup::make(tower->q());
        for (const auto& x : no.elements()) {
            if (x.pow(out.subgroup_order).is_one() && multiplicative_order(x) == out.subgroup_order) {
                out.generator = x;
                found = true;
                break;
            }
        }
    }
    if (!found) throw Error("internal: no generator of the determinant subgroup found");
    for (const auto& [d, m] : out.witness) {
        if (m * A != A * m) throw Error("internal: norm witness does not centralize");
        if (m.determinant().index() != d) throw Error("internal: norm witness determinant mismatch");
    }
    return out;
}

namespace {

ConjugacyDecision decide_by_norm(const SquareMatrix& A, const SquareMatrix& B, GroupKind small_kind,
                                 const QuadraticTower* tower, const RunLimits& limits) {
    AmbientKind ambient = small_kind == GroupKind::SL ? AmbientKind::GL : AmbientKind::U;
    ConjugacyDecision dec;
    dec.group = small_kind;
    if (A == B) {
        dec.verdict = Verdict::conjugate;
        dec.method = DecisionMethod::invariant_factors;
        dec.witness = SquareMatrix::identity(A.spec(), A.n());
        return dec;
    }
    auto ia = poly_invariants(A);
    auto ib = poly_invariants(B);
    if (ia.invariant_factors != ib.invariant_factors) {
        dec.verdict = Verdict::not_conjugate;
        dec.method = DecisionMethod::invariant_factors;
        return dec;
    }
    std::optional<SquareMatrix> g0;
    if (ambient == AmbientKind::GL) {
        g0 = gl_conjugator(A, B);
        if (!g0) throw Error("internal: equal invariant factors but no GL conjugator");
    } else {
        // Canonical-order scan of the intertwiner space for an invertible
        // unitary point.
        auto basis = intertwiner_basis(A, B);
        ScanContext ctx = scan_context(basis);
        const FieldTable& t = *ctx.tab;
        u64 space = pow_or_cap(t.q, ctx.basis.size(), limits.scan_cap);
        u64 budget = std::min(space, limits.scan_cap);
        for (u64 tup = 0; tup < budget; ++tup) {
            M3 x = combine(ctx, tup);
            if (m3_det(t, x) == 0) continue;
            if (!m3_is_unitary(t, x)) continue;
            g0 = m3_to(t, x);
            break;
        }
        if (!g0 && space <= limits.scan_cap)
            throw Error("internal: exhausted intertwiner space without a unitary point");
        if (!g0) {
            EnumerableGroup grp{GroupKind::SU, 3, A.spec(), *tower};
            if (grp.order() > limits.enum_cap)
                throw WitnessSearchExhausted("unitary witness scan capped and group too large for brute force");
            auto w = brute_force_conjugator(A, B, grp, limits);
            dec.method = DecisionMethod::brute_force;
            if (w) {
                dec.verdict = Verdict::conjugate;
                dec.witness = *w;
            } else {
                dec.verdict = Verdict::not_conjugate;
            }
            return dec;
        }
    }
    DetNormSubgroup norm = det_norm_group(A, ambient, tower, limits);
    FieldElem d0 = g0->determinant();
    dec.method = DecisionMethod::norm_criterion;
    dec.connecting_det = d0;
    if (norm.contains(d0)) {
        const SquareMatrix& c = norm.witness_for(d0);
        SquareMatrix w = *g0 * c.inverse();
        verify_witness(w, A, B, small_kind, tower);
        dec.verdict = Verdict::conjugate;
        dec.witness = w;
    } else {
        dec.verdict = Verdict::not_conjugate;
    }
    dec.norm_data = std::move(norm);
    return dec;
}

}  // namespace

ConjugacyDecision decide_gl3(const SquareMatrix& A, const SquareMatrix& B) {
    if (A.n() != 3 || B.n() != 3) throw DimensionMismatch("decide_gl3 expects 3x3 matrices");
    if (A.determinant().is_zero() || B.determinant().is_zero()) throw NotInAmbientGroup("matrix not in GL3");
    ConjugacyDecision dec;
    dec.group = GroupKind::GL;
    dec.method = DecisionMethod::invariant_factors;
    auto g = gl_conjugator(A, B);
    if (g) {
        dec.verdict = Verdict::conjugate;
        dec.witness = *g;
        verify_witness(*g, A, B, GroupKind::GL, nullptr);
    } else {
        dec.verdict = Verdict::not_conjugate;
    }
    return dec;
}

ConjugacyDecision decide_sl3(const SquareMatrix& A, const SquareMatrix& B, const RunLimits& limits) {
    if (A.n() != 3 || B.n() != 3) throw DimensionMismatch("decide_sl3 expects 3x3 matrices");
    if (!group_membership(A, GroupKind::SL) || !group_membership(B, GroupKind::SL))
        throw NotInAmbientGroup("matrix not in SL3");
    return decide_by_norm(A, B, GroupKind::SL, nullptr, limits);
}

ConjugacyDecision decide_u3(const SquareMatrix& A, const SquareMatrix& B, const QuadraticTower& tower,
                            const RunLimits& limits) {
    if (A.n() != 3 || B.n() != 3) throw DimensionMismatch("decide_u3 expects 3x3 matrices");
    if (!group_membership(A, GroupKind::U, &tower) || !group_membership(B, GroupKind::U, &tower))
        throw NotInAmbientGroup("matrix not in U3");
    ConjugacyDecision dec;
    dec.group = GroupKind::U;
    if (A == B) {
        dec.verdict = Verdict::conjugate;
        dec.method = DecisionMethod::invariant_factors;
        dec.witness = SquareMatrix::identity(A.spec(), 3);
        return dec;
    }
    auto ia = poly_invariants(A);
    auto ib = poly_invariants(B);
    dec.method = DecisionMethod::invariant_factors;
    if (ia.invariant_factors != ib.invariant_factors) {
        dec.verdict = Verdict::not_conjugate;
        return dec;
    }
    auto basis = intertwiner_basis(A, B);
    ScanContext ctx = scan_context(basis);
    const FieldTable& t = *ctx.tab;
    u64 space = pow_or_cap(t.q, ctx.basis.size(), limits.scan_cap);
    u64 budget = std::min(space, limits.scan_cap);
    for (u64 tup = 0; tup < budget; ++tup) {
        M3 x = combine(ctx, tup);
        if (m3_det(t, x) == 0 || !m3_is_unitary(t, x)) continue;
        SquareMatrix w = m3_to(t, x);
        verify_witness(w, A, B, GroupKind::U, &tower);
        dec.verdict = Verdict::conjugate;
        dec.witness = w;
        return dec;
    }
    if (space <= limits.scan_cap) {
        dec.verdict = Verdict::not_conjugate;
        return dec;
    }
    throw WitnessSearchExhausted("unitary conjugator scan capped");
}

ConjugacyDecision decide_su3(const SquareMatrix& A, const SquareMatrix& B, const QuadraticTower& tower,
                             const RunLimits& limits) {
    if (A.n() != 3 || B.n() != 3) throw DimensionMismatch("decide_su3 expects 3x3 matrices");
    if (!group_membership(A, GroupKind::SU, &tower) || !group_membership(B, GroupKind::SU, &tower))
        throw NotInAmbientGroup("matrix not in SU3");
    return decide_by_norm(A, B, GroupKind::SU, &tower, limits);
}

u64 EnumerableGroup::order() const {
    u64 q = spec->order();
    switch (kind) {
        case GroupKind::GL: return n == 3 ? gl3_order(q) : 0;
        case GroupKind::SL: return n == 3 ? sl3_order(q) : (n == 2 ? sl2_order(q) : 0);
        case GroupKind::U: return tower ? u3_order(tower->q()) : 0;
        case GroupKind::SU: return tower ? su3_order(tower->q()) : 0;
    }
    return 0;
}

std::optional<SquareMatrix> brute_force_conjugator(const SquareMatrix& A, const SquareMatrix& B,
                                                   const EnumerableGroup& group, const RunLimits& limits) {
    if (A.n() != 3 || B.n() != 3 || group.n != 3)
        throw DimensionMismatch("brute_force_conjugator supports 3x3 groups");
    u64 order = group.order();
    if (order == 0) throw Error("group not enumerable");
    if (order > limits.enum_cap)
        throw SizeCapExceeded("group order " + std::to_string(order) + " exceeds enum cap " +
                              std::to_string(limits.enum_cap));
    auto tab = field_table(A.spec());
    const FieldTable& t = *tab;
    M3 a = m3_from(A), b = m3_from(B);
    u32 workers = effective_workers(limits.workers);

    auto scan_chunked = [&](u64 chunks, auto&& slice_fn) -> std::optional<M3> {
        std::vector<std::optional<M3>> best(static_cast<size_t>(chunks));
        parallel_for_chunks(chunks, workers, [&](u64 chunk) {
            std::optional<M3> local;
            slice_fn(chunk, M3Visitor([&](const M3& g) {
                         if (m3_mul(t, g, a) != m3_mul(t, b, g)) return;
                         if (!local || std::lexicographical_compare(g.begin(), g.end(), local->begin(), local->end()))
                             local = g;
                     }));
            best[size_t(chunk)] = local;
        });
        std::optional<M3> overall;
        for (const auto& cand : best) {
            if (!cand) continue;
            if (!overall ||
                std::lexicographical_compare(cand->begin(), cand->end(), overall->begin(), overall->end()))
                overall = cand;
        }
        return overall;
    };

    std::optional<M3> found;
    switch (group.kind) {
        case GroupKind::SL:
            found = scan_chunked(sl3_slice_count(t),
                                 [&](u64 s, const M3Visitor& fn) { for_each_sl3_slice(t, s, fn); });
            break;
        case GroupKind::GL:
            found = scan_chunked(sl3_slice_count(t),
                                 [&](u64 s, const M3Visitor& fn) { for_each_gl3_slice(t, s, fn); });
            break;
        case GroupKind::SU:
            found = scan_chunked(su3_slice_count(t), [&](u64 s, const M3Visitor& fn) {
                for_each_su3_slice(t, group.tower->q(), s, fn);
            });
            break;
        case GroupKind::U: {
            auto all = materialize_u3(t, group.tower->q(), limits.enum_cap);
            u64 chunks = std::max<u64>(1, u64(workers) * 8);
            u64 per = (all.size() + chunks - 1) / chunks;
            found = scan_chunked(chunks, [&](u64 c, const M3Visitor& fn) {
                u64 lo = c * per, hi = std::min<u64>(all.size(), lo + per);
                for (u64 i = lo; i < hi; ++i) fn(all[size_t(i)]);
            });
            break;
        }
    }
    if (!found) return std::nullopt;
    SquareMatrix w = m3_to(t, *found);
    verify_witness(w, A, B, group.kind, group.tower ? &*group.tower : nullptr);
    return w;
}

bool is_real(const SquareMatrix& A, GroupKind kind, const QuadraticTower* tower, const RunLimits& limits) {
    SquareMatrix inv = A.inverse();
    switch (kind) {
        case GroupKind::SL: return decide_sl3(A, inv, limits).verdict == Verdict::conjugate;
        case GroupKind::SU: return decide_su3(A, inv, *tower, limits).verdict == Verdict::conjugate;
        case GroupKind::GL: return decide_gl3(A, inv).verdict == Verdict::conjugate;
        case GroupKind::U: return decide_u3(A, inv, *tower, limits).verdict == Verdict::conjugate;
    }
    return false;
}

u32 splitting_count(const SquareMatrix& A, AmbientKind pair, const QuadraticTower* tower,
                    const RunLimits& limits) {
    return det_norm_group(A, pair, tower, limits).index;
}

}  // namespace chilab
