#include "chilab/ftab.hpp"

#include <map>
#include <mutex>

namespace chilab {

namespace {
std::mutex g_tab_mutex;
std::map<std::pair<u64, u32>, std::shared_ptr<const FieldTable>>& tab_cache() {
    static std::map<std::pair<u64, u32>, std::shared_ptr<const FieldTable>> c;
    return c;
}
}  // namespace

std::shared_ptr<const FieldTable> field_table(const FieldSpecPtr& spec) {
    std::pair<u64, u32> key{spec->characteristic(), spec->degree()};
    {
        std::lock_guard<std::mutex> lk(g_tab_mutex);
        auto it = tab_cache().find(key);
        if (it != tab_cache().end()) return it->second;
    }
    u64 q = spec->order();
    if (q > FieldTable::kMaxTabledOrder)
        throw SizeCapExceeded("field of order " + std::to_string(q) + " too large for table arithmetic");
    auto t = std::make_shared<FieldTable>();
    t->q = q;
    t->p = spec->characteristic();
    t->n = spec->degree();
    t->spec = spec;
    t->one = u32(spec->one().index());
    t->mul.assign(size_t(q) * q, 0);
    t->add.assign(size_t(q) * q, 0);
    t->neg.assign(size_t(q), 0);
    t->inv.assign(size_t(q), 0);
    std::vector<FieldElem> elems;
    elems.reserve(size_t(q));
    for (u64 i = 0; i < q; ++i) elems.push_back(spec->from_index(i));
    for (u64 i = 0; i < q; ++i) {
        t->neg[size_t(i)] = u32((-elems[size_t(i)]).index());
        if (i != 0) t->inv[size_t(i)] = u32(elems[size_t(i)].inverse().index());
        for (u64 j = i; j < q; ++j) {
            u32 m = u32((elems[size_t(i)] * elems[size_t(j)]).index());
            u32 a = u32((elems[size_t(i)] + elems[size_t(j)]).index());
            t->mul[size_t(i) * q + j] = m;
            t->mul[size_t(j) * q + i] = m;
            t->add[size_t(i) * q + j] = a;
            t->add[size_t(j) * q + i] = a;
        }
    }
    if (t->n % 2 == 0) {
        u64 sq = 1;
        for (u32 i = 0; i < t->n / 2; ++i) sq *= t->p;
        t->bar.assign(size_t(q), 0);
        for (u64 i = 0; i < q; ++i) t->bar[size_t(i)] = u32(elems[size_t(i)].pow(sq).index());
    }
    std::shared_ptr<const FieldTable> out = t;
    {
        std::lock_guard<std::mutex> lk(g_tab_mutex);
        tab_cache()[key] = out;
    }
    return out;
}

SquareMatrix m3_to(const FieldTable& t, const M3& m) {
    std::vector<FieldElem> e;
    e.reserve(9);
    for (int i = 0; i < 9; ++i) e.push_back(t.spec->from_index(m[size_t(i)]));
    return SquareMatrix(t.spec, 3, std::move(e));
}

M3 m3_inverse(const FieldTable& t, const M3& a) {
    u32 d = m3_det(t, a);
    u32 di = t.inv[d];
    auto minor2 = [&](u32 r0, u32 r1, u32 c0, u32 c1) {
        return t.subf(t.mulf(a[r0 * 3 + c0], a[r1 * 3 + c1]), t.mulf(a[r0 * 3 + c1], a[r1 * 3 + c0]));
    };
    M3 adj;
    // adj[j][i] = cofactor(i, j)
    static const u32 rows[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    for (u32 i = 0; i < 3; ++i)
        for (u32 j = 0; j < 3; ++j) {
            u32 m = minor2(rows[i][0], rows[i][1], rows[j][0], rows[j][1]);
            if ((i + j) % 2 == 1) m = t.neg[m];
            adj[j * 3 + i] = t.mulf(m, di);
        }
    return adj;
}

bool m3_is_unitary(const FieldTable& t, const M3& x) {
    // (tX B bar(X))_{ij} = sum_k x[k][i] * bar(x[2-k][j]) must equal B_{ij} = [i + j == 2].
    for (u32 i = 0; i < 3; ++i)
        for (u32 j = 0; j < 3; ++j) {
            u32 s = 0;
            for (u32 k = 0; k < 3; ++k)
                s = t.addf(s, t.mulf(x[k * 3 + i], t.barf(x[(2 - k) * 3 + j])));
            u32 want = (i + j == 2) ? t.one : 0;
            if (s != want) return false;
        }
    return true;
}

}  // namespace chilab
