#include "chilab/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "chilab/ftab.hpp"
#include "chilab/group_enum.hpp"

namespace chilab {

namespace {

using Perm = std::vector<u32>;

Perm compose(const Perm& f, const Perm& g) {
    // (f g)(i) = f(g(i))
    Perm r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
    return r;
}

bool is_even(const Perm& p) {
    u32 transpositions = 0;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i;
        u32 len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

std::string cycle_notation(const Perm& p) {
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    bool any = false;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) {
            seen[i] = true;
            continue;
        }
        os << "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) os << " ";
            os << j + 1;
            first = false;
            j = p[j];
        }
        os << ")";
        any = true;
    }
    return any ? os.str() : "e";
}

}  // namespace

void GroupTable::finalize() {
    u32 n = size();
    inverse_.assign(n, 0);
    bool id_found = false;
    for (u32 e = 0; e < n && !id_found; ++e) {
        bool ok = true;
        for (u32 a = 0; a < n && ok; ++a) ok = product_[e][a] == a && product_[a][e] == a;
        if (ok) {
            identity_ = e;
            id_found = true;
        }
    }
    if (!id_found) throw Error("group table has no identity");
    for (u32 a = 0; a < n; ++a) {
        bool found = false;
        for (u32 b = 0; b < n && !found; ++b)
            if (product_[a][b] == identity_ && product_[b][a] == identity_) {
                inverse_[a] = b;
                found = true;
            }
        if (!found) throw Error("group table element has no inverse");
    }
    // Conjugacy classes by full orbit scan.
    class_of_.assign(n, u32(-1));
    for (u32 a = 0; a < n; ++a) {
        if (class_of_[a] != u32(-1)) continue;
        u32 id = u32(classes_.size());
        std::vector<u32> cls;
        for (u32 g = 0; g < n; ++g) {
            u32 c = product_[product_[g][a]][inverse_[g]];
            if (class_of_[c] == u32(-1)) {
                class_of_[c] = id;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }
    if (names_.empty()) {
        names_.resize(n);
        for (u32 a = 0; a < n; ++a) names_[a] = std::to_string(a);
    }
}

u32 GroupTable::pow(u32 a, i64 e) const {
    u32 base = e < 0 ? inv(a) : a;
    u64 k = u64(e < 0 ? -e : e);
    u32 acc = identity_;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

bool GroupTable::is_automorphism(const std::vector<u32>& phi) const {
    u32 n = size();
    if (phi.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (u32 a = 0; a < n; ++a) {
        if (phi[a] >= n || hit[phi[a]]) return false;
        hit[phi[a]] = true;
    }
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            if (phi[product_[a][b]] != product_[phi[a]][phi[b]]) return false;
    return true;
}

GroupTable GroupTable::custom(std::vector<std::vector<u32>> product, std::string kind) {
    GroupTable t;
    t.kind_ = std::move(kind);
    u32 n = u32(product.size());
    if (n == 0) throw Error("empty group table");
    if (u64(n) > kMaxTableSize) throw SizeCapExceeded("group too large for a dense table");
    for (const auto& row : product)
        if (row.size() != n) throw Error("group table is not square");
    t.product_ = std::move(product);
    // Associativity, full triple check.
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            for (u32 c = 0; c < n; ++c)
                if (t.product_[t.product_[a][b]][c] != t.product_[a][t.product_[b][c]])
                    throw Error("group table is not associative");
    t.finalize();
    return t;
}

namespace {

GroupTable build_from_perms(std::vector<Perm> elems, const std::string& kind) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::map<Perm, u32> index;
    for (u32 i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    u32 n = u32(elems.size());
    if (u64(n) > GroupTable::kMaxTableSize) throw SizeCapExceeded("group too large for a dense table");
    std::vector<std::vector<u32>> product(n, std::vector<u32>(n, 0));
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            auto it = index.find(compose(elems[a], elems[b]));
            if (it == index.end()) throw Error("permutation set is not closed");
            product[a][b] = it->second;
        }
    GroupTable t = GroupTable::custom(std::move(product), kind);
    // Overwrite names with cycle notation.
    std::vector<std::string> names(n);
    for (u32 a = 0; a < n; ++a) names[a] = cycle_notation(elems[a]);
    // Rebuild via friend-ish access: names_ is private, so go through a copy.
    t.set_names(std::move(names));
    return t;
}

}  // namespace

GroupTable GroupTable::symmetric(u32 n) {
    if (n < 1 || n > 7) throw SizeCapExceeded("symmetric group degree out of range");
    Perm base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Perm> elems;
    Perm p = base;
    do {
        elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return build_from_perms(std::move(elems), "symmetric");
}

GroupTable GroupTable::alternating(u32 n) {
    if (n < 2 || n > 7) throw SizeCapExceeded("alternating group degree out of range");
    Perm base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Perm> elems;
    Perm p = base;
    do {
        if (is_even(p)) elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return build_from_perms(std::move(elems), "alternating");
}

GroupTable GroupTable::cyclic(u32 n) {
    if (n < 1 || u64(n) > kMaxTableSize) throw SizeCapExceeded("cyclic group order out of range");
    std::vector<std::vector<u32>> product(n, std::vector<u32>(n, 0));
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) product[a][b] = (a + b) % n;
    return custom(std::move(product), "cyclic");
}

namespace {

GroupTable build_from_matrices(std::vector<SquareMatrix> mats, const std::string& kind) {
    std::sort(mats.begin(), mats.end(),
              [](const SquareMatrix& x, const SquareMatrix& y) { return key_less(x.key(), y.key()); });
    u32 n = u32(mats.size());
    if (u64(n) > GroupTable::kMaxTableSize) throw SizeCapExceeded("group too large for a dense table");
    std::map<std::vector<u64>, u32> index;
    for (u32 i = 0; i < n; ++i) index[mats[i].key()] = i;
    std::vector<std::vector<u32>> product(n, std::vector<u32>(n, 0));
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            auto it = index.find((mats[a] * mats[b]).key());
            if (it == index.end()) throw Error("matrix set is not closed under product");
            product[a][b] = it->second;
        }
    GroupTable t = GroupTable::custom(std::move(product), kind);
    std::vector<std::string> names(n);
    for (u32 a = 0; a < n; ++a) names[a] = mats[a].str();
    t.set_names(std::move(names));
    t.set_matrices(std::move(mats));
    return t;
}

}  // namespace

GroupTable GroupTable::sl2(u64 q) {
    auto pk = prime_power_decompose(q);
    if (!pk) throw NonPrimeCharacteristic(std::to_string(q) + " is not a prime power");
    auto spec = FieldSpec::make(pk->first, pk->second);
    auto tab = field_table(spec);
    auto packed = materialize_sl2(*tab, kMaxTableSize);
    std::vector<SquareMatrix> mats;
    mats.reserve(packed.size());
    for (const auto& m : packed) {
        std::vector<FieldElem> e;
        for (int k = 0; k < 4; ++k) e.push_back(spec->from_index(m[size_t(k)]));
        mats.emplace_back(spec, 2, std::move(e));
    }
    return build_from_matrices(std::move(mats), "SL");
}

GroupTable GroupTable::sl3(u64 q) {
    auto pk = prime_power_decompose(q);
    if (!pk) throw NonPrimeCharacteristic(std::to_string(q) + " is not a prime power");
    if (sl3_order(q) > kMaxTableSize) throw SizeCapExceeded("SL3(" + std::to_string(q) + ") too large for a table");
    auto spec = FieldSpec::make(pk->first, pk->second);
    auto tab = field_table(spec);
    auto packed = materialize_sl3(*tab, kMaxTableSize);
    std::vector<SquareMatrix> mats;
    mats.reserve(packed.size());
    for (const auto& m : packed) mats.push_back(m3_to(*tab, m));
    return build_from_matrices(std::move(mats), "SL");
}

GroupTable GroupTable::su3(u64 q) {
    if (su3_order(q) > kMaxTableSize) throw SizeCapExceeded("SU3(" + std::to_string(q) + ") too large for a table");
    QuadraticTower tower = QuadraticTower::make(q);
    auto tab = field_table(tower.ext());
    auto packed = materialize_su3(*tab, q, kMaxTableSize);
    std::vector<SquareMatrix> mats;
    mats.reserve(packed.size());
    for (const auto& m : packed) mats.push_back(m3_to(*tab, m));
    return build_from_matrices(std::move(mats), "SU");
}

}  // namespace chilab
