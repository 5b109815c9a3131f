#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "chilab/ftab.hpp"
#include "chilab/matrix.hpp"

namespace chilab {

u64 gl3_order(u64 q);
u64 sl3_order(u64 q);
u64 su3_order(u64 q);   // q^3 (q^2-1)(q^3+1)
u64 u3_order(u64 q);    // (q+1) * su3_order(q)
u64 sl2_order(u64 q);
u64 sp4_order(u64 q);

using M3Visitor = std::function<void(const M3&)>;

// Row-by-row enumeration of SL3(q) with the unit-determinant constraint
// propagated: the third row ranges over an explicit q^2-point affine space.
// Slices partition the work by first-row index; slice count is q^3.
u64 sl3_slice_count(const FieldTable& t);
void for_each_sl3_slice(const FieldTable& t, u64 slice, const M3Visitor& fn);
void for_each_sl3(const FieldTable& t, const M3Visitor& fn);

// Column enumeration of SU3(q) (unitary for antidiag(1,1,1), det 1) with the
// isotropy/orthogonality constraints propagated; ext is the F_{q^2} table.
// Slices partition by first-column index; slice count is q^6.
u64 su3_slice_count(const FieldTable& ext);
void for_each_su3_slice(const FieldTable& ext, u64 base_q, u64 slice, const M3Visitor& fn);
void for_each_su3(const FieldTable& ext, u64 base_q, const M3Visitor& fn);

// GL3(q), first rows free, third row filtered by det != 0.
void for_each_gl3_slice(const FieldTable& t, u64 slice, const M3Visitor& fn);

std::vector<M3> materialize_sl3(const FieldTable& t, u64 cap);
std::vector<M3> materialize_su3(const FieldTable& ext, u64 base_q, u64 cap);
// U3(q) as the union of det-coset translates diag(a, 1, bar(a)^{-1}) * SU3(q).
std::vector<M3> materialize_u3(const FieldTable& ext, u64 base_q, u64 cap);

// SL2(q) as packed 2x2 index matrices.
std::vector<std::array<u32, 4>> materialize_sl2(const FieldTable& t, u64 cap);

// Sp4(q) for J = [[0, I], [-I, 0]]; epsilon = +1 enumerates Sp4, -1 the
// other coset of the extended group Sp4^{+-}.
std::vector<std::array<u32, 16>> materialize_sp4(const FieldTable& t, int epsilon, u64 cap);

}  // namespace chilab
