#include "chilab/group_enum.hpp"

#include <algorithm>

namespace chilab {

u64 gl3_order(u64 q) {
    u64 q3 = q * q * q;
    return (q3 - 1) * (q3 - q) * (q3 - q * q);
}

u64 sl3_order(u64 q) { return gl3_order(q) / (q - 1); }

u64 su3_order(u64 q) { return q * q * q * (q * q - 1) * (q * q * q + 1); }

u64 u3_order(u64 q) { return (q + 1) * su3_order(q); }

u64 sl2_order(u64 q) { return q * (q * q - 1); }

u64 sp4_order(u64 q) {
    // q^4 (q^2-1)(q^4-1)
    u64 q2 = q * q;
    return q2 * q2 * (q2 - 1) * (q2 * q2 - 1);
}

namespace {

using Vec3 = std::array<u32, 3>;

Vec3 decode3(const FieldTable& t, u64 idx) {
    Vec3 v;
    v[0] = u32(idx % t.q);
    idx /= t.q;
    v[1] = u32(idx % t.q);
    v[2] = u32(idx / t.q);
    return v;
}

u32 dot3(const FieldTable& t, const Vec3& a, const Vec3& b) {
    u32 s = t.mulf(a[0], b[0]);
    s = t.addf(s, t.mulf(a[1], b[1]));
    return t.addf(s, t.mulf(a[2], b[2]));
}

Vec3 cross3(const FieldTable& t, const Vec3& a, const Vec3& b) {
    return Vec3{t.subf(t.mulf(a[1], b[2]), t.mulf(a[2], b[1])),
                t.subf(t.mulf(a[2], b[0]), t.mulf(a[0], b[2])),
                t.subf(t.mulf(a[0], b[1]), t.mulf(a[1], b[0]))};
}

bool is_zero3(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

M3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return M3{r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]};
}

M3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return M3{c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]};
}

// Hermitian pairing h(u, v) = sum_i u_i bar(v_{2-i}) for antidiag(1,1,1).
u32 herm(const FieldTable& t, const Vec3& u, const Vec3& v) {
    u32 s = t.mulf(u[0], t.barf(v[2]));
    s = t.addf(s, t.mulf(u[1], t.barf(v[1])));
    return t.addf(s, t.mulf(u[2], t.barf(v[0])));
}

}  // namespace

u64 sl3_slice_count(const FieldTable& t) { return t.q * t.q * t.q; }

void for_each_sl3_slice(const FieldTable& t, u64 slice, const M3Visitor& fn) {
    u64 q = t.q;
    Vec3 r0 = decode3(t, slice);
    if (is_zero3(r0)) return;
    for (u64 i1 = 0; i1 < q * q * q; ++i1) {
        Vec3 r1 = decode3(t, i1);
        Vec3 c = cross3(t, r0, r1);
        if (is_zero3(c)) continue;  // r1 in span(r0)
        // det(r0, r1, v) = <c, v>; pick the particular v with det = 1.
        u32 pivot = 0;
        while (c[pivot] == 0) ++pivot;
        u32 vp = t.inv[c[pivot]];
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b) {
                Vec3 r2{0, 0, 0};
                r2[pivot] = vp;
                for (u32 k = 0; k < 3; ++k)
                    r2[k] = t.addf(r2[k], t.addf(t.mulf(u32(a), r0[k]), t.mulf(u32(b), r1[k])));
                fn(from_rows(r0, r1, r2));
            }
    }
}

void for_each_sl3(const FieldTable& t, const M3Visitor& fn) {
    u64 slices = sl3_slice_count(t);
    for (u64 s = 0; s < slices; ++s) for_each_sl3_slice(t, s, fn);
}

void for_each_gl3_slice(const FieldTable& t, u64 slice, const M3Visitor& fn) {
    u64 q = t.q;
    Vec3 r0 = decode3(t, slice);
    if (is_zero3(r0)) return;
    for (u64 i1 = 0; i1 < q * q * q; ++i1) {
        Vec3 r1 = decode3(t, i1);
        Vec3 c = cross3(t, r0, r1);
        if (is_zero3(c)) continue;
        for (u64 i2 = 0; i2 < q * q * q; ++i2) {
            Vec3 r2 = decode3(t, i2);
            if (dot3(t, c, r2) == 0) continue;
            fn(from_rows(r0, r1, r2));
        }
    }
}

u64 su3_slice_count(const FieldTable& ext) { return ext.q * ext.q * ext.q; }

void for_each_su3_slice(const FieldTable& ext, u64 base_q, u64 slice, const M3Visitor& fn) {
    const FieldTable& t = ext;
    u64 Q = t.q;  // = base_q^2
    Vec3 c0 = decode3(t, slice);
    if (is_zero3(c0)) return;
    if (herm(t, c0, c0) != 0) return;  // first column must be isotropic
    // Kernel of v -> h(c0, v): bar the equation to sum_i bar(c0_i) v_{2-i} = 0,
    // i.e. sum_j a_j v_j = 0 with a_j = bar(c0_{2-j}).
    Vec3 a{t.barf(c0[2]), t.barf(c0[1]), t.barf(c0[0])};
    u32 pa = 0;
    while (a[pa] == 0) ++pa;
    u32 pai = t.inv[a[pa]];
    // Basis of the kernel: for each free coordinate j != pa, e_j - (a_j/a_pa) e_pa.
    std::array<Vec3, 2> kb{};
    u32 nk = 0;
    for (u32 j = 0; j < 3; ++j) {
        if (j == pa) continue;
        Vec3 b{0, 0, 0};
        b[j] = t.one;
        b[pa] = t.neg[t.mulf(a[j], pai)];
        kb[nk++] = b;
    }
    for (u64 s = 0; s < Q; ++s)
        for (u64 u = 0; u < Q; ++u) {
            Vec3 c1;
            for (u32 k = 0; k < 3; ++k)
                c1[k] = t.addf(t.mulf(u32(s), kb[0][k]), t.mulf(u32(u), kb[1][k]));
            if (herm(t, c1, c1) != t.one) continue;
            // c2: h(c0, c2) = 1, h(c1, c2) = 0. Conjugated: with a_j as above and
            // b_j = bar(c1_{2-j}): sum a_j v_j = 1, sum b_j v_j = 0.
            Vec3 b{t.barf(c1[2]), t.barf(c1[1]), t.barf(c1[0])};
            // Eliminate coordinate pa: b2 = b - f a with f = b_pa / a_pa turns the
            // second equation into b2 . v = -f.
            Vec3 b2 = b;
            u32 f = t.mulf(b[pa], pai);
            for (u32 k = 0; k < 3; ++k) b2[k] = t.subf(b2[k], t.mulf(f, a[k]));
            u32 rhs2 = t.neg[f];
            u32 pb = 3;
            for (u32 k = 0; k < 3; ++k)
                if (k != pa && b2[k] != 0) {
                    pb = k;
                    break;
                }
            if (pb == 3) continue;  // c1 not independent over the pairing (won't happen for valid c1)
            u32 pbi = t.inv[b2[pb]];
            u32 fr = 3;  // the free coordinate
            for (u32 k = 0; k < 3; ++k)
                if (k != pa && k != pb) fr = k;
            // From b2 . v = rhs2 with v_fr = w: v_pb = (rhs2 - b2[fr] w) / b2[pb]
            // From a . v = 1: v_pa = (1 - a[pb] v_pb - a[fr] w) / a[pa]
            for (u64 w = 0; w < Q; ++w) {
                Vec3 c2{0, 0, 0};
                c2[fr] = u32(w);
                c2[pb] = t.mulf(t.subf(rhs2, t.mulf(b2[fr], u32(w))), pbi);
                u32 rest = t.subf(t.one, t.addf(t.mulf(a[pb], c2[pb]), t.mulf(a[fr], c2[fr])));
                c2[pa] = t.mulf(rest, pai);
                if (herm(t, c2, c2) != 0) continue;
                M3 m = from_cols(c0, c1, c2);
                if (m3_det(t, m) != t.one) continue;
                fn(m);
            }
        }
    (void)base_q;
}

void for_each_su3(const FieldTable& ext, u64 base_q, const M3Visitor& fn) {
    u64 slices = su3_slice_count(ext);
    for (u64 s = 0; s < slices; ++s) for_each_su3_slice(ext, base_q, s, fn);
}

std::vector<M3> materialize_sl3(const FieldTable& t, u64 cap) {
    u64 order = sl3_order(t.q);
    if (order > cap) throw SizeCapExceeded("|SL3(" + std::to_string(t.q) + ")| = " + std::to_string(order) +
                                           " exceeds cap " + std::to_string(cap));
    std::vector<M3> out;
    out.reserve(size_t(order));
    for_each_sl3(t, [&](const M3& m) { out.push_back(m); });
    if (out.size() != order) throw Error("SL3 enumeration produced wrong count");
    return out;
}

std::vector<M3> materialize_su3(const FieldTable& ext, u64 base_q, u64 cap) {
    u64 order = su3_order(base_q);
    if (order > cap) throw SizeCapExceeded("|SU3(" + std::to_string(base_q) + ")| = " + std::to_string(order) +
                                           " exceeds cap " + std::to_string(cap));
    std::vector<M3> out;
    out.reserve(size_t(order));
    for_each_su3(ext, base_q, [&](const M3& m) { out.push_back(m); });
    if (out.size() != order) throw Error("SU3 enumeration produced wrong count");
    return out;
}

std::vector<M3> materialize_u3(const FieldTable& ext, u64 base_q, u64 cap) {
    u64 order = u3_order(base_q);
    if (order > cap) throw SizeCapExceeded("|U3(" + std::to_string(base_q) + ")| = " + std::to_string(order) +
                                           " exceeds cap " + std::to_string(cap));
    std::vector<M3> su = materialize_su3(ext, base_q, cap);
    // Coset representatives diag(a, 1, bar(a)^{-1}); dets a * bar(a)^{-1} = a^{1-q}
    // run over the whole norm-one group as a runs over F_{q^2}^*.
    std::vector<M3> reps;
    std::vector<bool> seen(size_t(ext.q), false);
    for (u64 a = 1; a < ext.q && reps.size() < base_q + 1; ++a) {
        u32 d = ext.mulf(u32(a), ext.inv[ext.barf(u32(a))]);
        if (seen[d]) continue;
        seen[d] = true;
        M3 rep{u32(a), 0, 0, 0, ext.one, 0, 0, 0, ext.inv[ext.barf(u32(a))]};
        reps.push_back(rep);
    }
    if (reps.size() != base_q + 1) throw Error("U3 coset representatives incomplete");
    std::vector<M3> out;
    out.reserve(size_t(order));
    for (const auto& rep : reps)
        for (const auto& m : su) out.push_back(m3_mul(ext, rep, m));
    if (out.size() != order) throw Error("U3 enumeration produced wrong count");
    return out;
}

std::vector<std::array<u32, 4>> materialize_sl2(const FieldTable& t, u64 cap) {
    u64 q = t.q;
    u64 order = sl2_order(q);
    if (order > cap) throw SizeCapExceeded("|SL2| exceeds cap");
    std::vector<std::array<u32, 4>> out;
    out.reserve(size_t(order));
    for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b)
            for (u64 c = 0; c < q; ++c)
                for (u64 d = 0; d < q; ++d) {
                    u32 det = t.subf(t.mulf(u32(a), u32(d)), t.mulf(u32(b), u32(c)));
                    if (det != t.one) continue;
                    out.push_back({u32(a), u32(b), u32(c), u32(d)});
                }
    if (out.size() != order) throw Error("SL2 enumeration produced wrong count");
    return out;
}

std::vector<std::array<u32, 16>> materialize_sp4(const FieldTable& t, int epsilon, u64 cap) {
    u64 q = t.q;
    u64 order = sp4_order(q);
    if (order > cap) throw SizeCapExceeded("|Sp4| exceeds cap");
    // J = [[0, I2], [-I2, 0]]; symplectic pairing <u, v> = u0 v2 + u1 v3 - u2 v0 - u3 v1.
    auto pair4 = [&](const std::array<u32, 4>& u, const std::array<u32, 4>& v) {
        u32 s = t.mulf(u[0], v[2]);
        s = t.addf(s, t.mulf(u[1], v[3]));
        s = t.subf(s, t.mulf(u[2], v[0]));
        return t.subf(s, t.mulf(u[3], v[1]));
    };
    u32 target = epsilon >= 0 ? t.one : t.neg[t.one];
    u64 q4 = q * q * q * q;
    auto decode4 = [&](u64 idx) {
        std::array<u32, 4> v;
        for (int k = 0; k < 4; ++k) {
            v[size_t(k)] = u32(idx % q);
            idx /= q;
        }
        return v;
    };
    std::vector<std::array<u32, 16>> out;
    out.reserve(size_t(order));
    // Columns c0..c3 with <c0,c2> = <c1,c3> = target, other pairings zero.
    for (u64 i0 = 0; i0 < q4; ++i0) {
        auto c0 = decode4(i0);
        if (c0[0] == 0 && c0[1] == 0 && c0[2] == 0 && c0[3] == 0) continue;
        for (u64 i1 = 0; i1 < q4; ++i1) {
            auto c1 = decode4(i1);
            if (pair4(c0, c1) != 0) continue;
            if (c1[0] == 0 && c1[1] == 0 && c1[2] == 0 && c1[3] == 0) continue;
            for (u64 i2 = 0; i2 < q4; ++i2) {
                auto c2 = decode4(i2);
                if (pair4(c0, c2) != target || pair4(c1, c2) != 0) continue;
                for (u64 i3 = 0; i3 < q4; ++i3) {
                    auto c3 = decode4(i3);
                    if (pair4(c0, c3) != 0 || pair4(c1, c3) != target || pair4(c2, c3) != 0) continue;
                    std::array<u32, 16> m;
                    std::array<std::array<u32, 4>, 4> cols{c0, c1, c2, c3};
                    for (u32 i = 0; i < 4; ++i)
                        for (u32 j = 0; j < 4; ++j) m[size_t(i) * 4 + j] = cols[j][i];
                    out.push_back(m);
                }
            }
        }
    }
    if (out.size() != order) throw Error("Sp4 enumeration produced wrong count");
    return out;
}

}  // namespace chilab
