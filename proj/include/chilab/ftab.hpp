#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "chilab/field.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

// Lookup-table field arithmetic on canonical element indices, for the
// enumeration-heavy paths. Elements are their canonical indices in [0, q).
struct FieldTable {
    u64 q = 0;
    u32 p = 0;
    u32 n = 0;
    u32 one = 0;
    std::vector<u32> mul;   // q*q
    std::vector<u32> add;   // q*q
    std::vector<u32> neg;   // q
    std::vector<u32> inv;   // q, inv[0] = 0 sentinel
    std::vector<u32> bar;   // x -> x^{p^{n/2}} when n is even, else empty
    FieldSpecPtr spec;

    static constexpr u64 kMaxTabledOrder = 4096;

    u32 mulf(u32 a, u32 b) const { return mul[size_t(a) * q + b]; }
    u32 addf(u32 a, u32 b) const { return add[size_t(a) * q + b]; }
    u32 subf(u32 a, u32 b) const { return add[size_t(a) * q + neg[b]]; }
    u32 barf(u32 a) const { return bar[a]; }
};

// Cached per (p, n); safe to share across threads.
std::shared_ptr<const FieldTable> field_table(const FieldSpecPtr& spec);

using M3 = std::array<u32, 9>;

inline M3 m3_from(const SquareMatrix& a) {
    M3 m{};
    for (u32 i = 0; i < 3; ++i)
        for (u32 j = 0; j < 3; ++j) m[i * 3 + j] = u32(a.at(i, j).index());
    return m;
}

SquareMatrix m3_to(const FieldTable& t, const M3& m);

inline M3 m3_mul(const FieldTable& t, const M3& a, const M3& b) {
    M3 r{};
    for (u32 i = 0; i < 3; ++i)
        for (u32 j = 0; j < 3; ++j) {
            u32 s = t.mulf(a[i * 3], b[j]);
            s = t.addf(s, t.mulf(a[i * 3 + 1], b[3 + j]));
            s = t.addf(s, t.mulf(a[i * 3 + 2], b[6 + j]));
            r[i * 3 + j] = s;
        }
    return r;
}

inline M3 m3_transpose(const M3& a) {
    return M3{a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]};
}

inline M3 m3_bar(const FieldTable& t, const M3& a) {
    M3 r;
    for (int i = 0; i < 9; ++i) r[size_t(i)] = t.barf(a[size_t(i)]);
    return r;
}

inline u32 m3_det(const FieldTable& t, const M3& a) {
    u32 s = t.mulf(a[0], t.subf(t.mulf(a[4], a[8]), t.mulf(a[5], a[7])));
    s = t.subf(s, t.mulf(a[1], t.subf(t.mulf(a[3], a[8]), t.mulf(a[5], a[6]))));
    s = t.addf(s, t.mulf(a[2], t.subf(t.mulf(a[3], a[7]), t.mulf(a[4], a[6]))));
    return s;
}

// Adjugate-based inverse; caller must know det != 0.
M3 m3_inverse(const FieldTable& t, const M3& a);

inline bool m3_eq(const M3& a, const M3& b) { return a == b; }

inline M3 m3_identity(const FieldTable& t) {
    return M3{t.one, 0, 0, 0, t.one, 0, 0, 0, t.one};
}

// tX * antidiag(1,1,1) * bar(X) == antidiag(1,1,1)
bool m3_is_unitary(const FieldTable& t, const M3& x);

// Packs a 3x3 index matrix into one key; requires q <= 2^21.
inline std::array<u64, 2> m3_key(const M3& m, u32 bits) {
    u64 lo = 0, hi = 0;
    for (int i = 0; i < 5; ++i) lo = (lo << bits) | m[size_t(i)];
    for (int i = 5; i < 9; ++i) hi = (hi << bits) | m[size_t(i)];
    return {lo, hi};
}

}  // namespace chilab
