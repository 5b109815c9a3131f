#include "chilab/isolated.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "chilab/ftab.hpp"
#include "chilab/group_enum.hpp"
#include "chilab/parallel.hpp"

namespace chilab {

std::string iso_group_name(IsoGroup g) { return g == IsoGroup::SL3 ? "SL3" : "SU3"; }

namespace {

void check_characteristic(u64 q) {
    auto pk = prime_power_decompose(q);
    if (!pk) throw NonPrimeCharacteristic(std::to_string(q) + " is not a prime power");
    if (pk->first == 2 || pk->first == 3)
        throw BadCharacteristic("characteristic " + std::to_string(pk->first) + " is excluded");
}

const FieldElem& require_cube_root(const FieldElem& alpha) {
    if (alpha.is_zero() || alpha.is_one() || !alpha.pow(u64(3)).is_one())
        throw NotPrimitiveCubeRoot("alpha must be a primitive cube root of unity");
    return alpha;
}

}  // namespace

std::array<SquareMatrix, 3> canonical_reps_sl3(const FieldSpecPtr& spec, const FieldElem& alpha) {
    check_characteristic(spec->order());
    require_cube_root(alpha);
    if (!alpha.spec()->same(*spec)) throw DimensionMismatch("alpha is not an element of the given field");
    auto z = spec->zero();
    auto o = spec->one();
    SquareMatrix A(spec, 3, {alpha, o, z, z, alpha, o, z, z, alpha});
    SquareMatrix d1 = SquareMatrix::diagonal({alpha, o, o});
    SquareMatrix d2 = SquareMatrix::diagonal({alpha * alpha, o, o});
    SquareMatrix A1 = d1 * A * d1.inverse();
    SquareMatrix A2 = d2 * A * d2.inverse();
    for (const auto* m : {&A, &A1, &A2}) {
        if (!group_membership(*m, GroupKind::SL)) throw Error("internal: SL3 representative not special");
        auto pi = poly_invariants(*m);
        if (pi.invariant_factors.size() != 1 || pi.min_poly.degree() != 3)
            throw Error("internal: SL3 representative not regular");
    }
    return {A, A1, A2};
}

std::array<SquareMatrix, 3> canonical_reps_su3(const NormOneGroup& group, const FieldElem& alpha) {
    check_characteristic(group.q());
    require_cube_root(alpha);
    if (!group.contains(alpha)) throw NotPrimitiveCubeRoot("alpha is not in the norm-one group");
    const auto& tower = group.tower();
    auto ext = tower.ext();
    auto z = ext->zero();
    auto o = ext->one();
    FieldElem a2 = alpha * alpha;
    FieldElem denom = o + a2;
    if (denom.is_zero()) throw BadCharacteristic("1 + alpha^2 vanishes");
    FieldElem corner = (-alpha) / denom;
    SquareMatrix A(ext, 3, {alpha, -a2, corner, z, alpha, o, z, z, alpha});
    if (!group_membership(A, GroupKind::SU, &tower))
        throw Error("internal: SU3 representative fails tA B bar(A) = B");
    SquareMatrix d1 = SquareMatrix::diagonal({o, alpha, o});
    SquareMatrix d2 = SquareMatrix::diagonal({o, a2, o});
    SquareMatrix A1 = d1 * A * d1.inverse();
    SquareMatrix A2 = d2 * A * d2.inverse();
    for (const auto* m : {&A, &A1, &A2}) {
        if (!group_membership(*m, GroupKind::SU, &tower)) throw Error("internal: SU3 representative not unitary");
        auto pi = poly_invariants(*m);
        if (pi.invariant_factors.size() != 1 || pi.min_poly.degree() != 3)
            throw Error("internal: SU3 representative not regular");
    }
    return {A, A1, A2};
}

IsolationCertificate is_isolated(const SquareMatrix& M, IsoGroup group, const QuadraticTower* tower,
                                 const RunLimits& limits) {
    IsolationCertificate cert;
    if (group == IsoGroup::SL3) {
        if (!group_membership(M, GroupKind::SL)) throw NotInAmbientGroup("matrix not in SL3");
        cert.vs_partner = decide_sl3(M, M.transpose(), limits);
        cert.vs_inverse = decide_sl3(M, M.inverse(), limits);
    } else {
        if (tower == nullptr) throw WrongTower("SU3 isolation requires a quadratic tower");
        if (!group_membership(M, GroupKind::SU, tower)) throw NotInAmbientGroup("matrix not in SU3");
        cert.vs_partner = decide_su3(M, M.entrywise_bar(*tower).inverse(), *tower, limits);
        cert.vs_inverse = decide_su3(M, M.inverse(), *tower, limits);
    }
    cert.isolated = cert.vs_partner.verdict == Verdict::not_conjugate &&
                    cert.vs_inverse.verdict == Verdict::not_conjugate;
    return cert;
}

std::pair<TheoremVerdict, ConditionTrace> theorem_verdict(u64 q, IsoGroup group) {
    check_characteristic(q);
    ConditionTrace trace;
    auto pk = prime_power_decompose(q);
    if (group == IsoGroup::SL3) {
        trace.arithmetic = (q % 3 == 1) && (q % 9 != 1);
        auto spec = FieldSpec::make(pk->first, pk->second);
        trace.prim3_present = primitive_root_of_unity(spec, 3).has_value();
        trace.prim9_present = primitive_root_of_unity(spec, 9).has_value();
    } else {
        trace.arithmetic = (q % 3 == 2) && ((q * q) % 9 != 1);
        NormOneGroup no = NormOneGroup::make(q);
        trace.prim3_present = primitive_root_of_unity(no, 3).has_value();
        trace.prim9_present = primitive_root_of_unity(no.tower().ext(), 9).has_value();
    }
    trace.root_phrasing = trace.prim3_present && !trace.prim9_present;
    if (trace.arithmetic != trace.root_phrasing)
        throw Error("internal: arithmetic and root-of-unity phrasings disagree");
    return {trace.arithmetic ? TheoremVerdict::exists : TheoremVerdict::not_exists, trace};
}

namespace {

// ---- oracle census: conjugation-orbit partition over packed elements ----

struct PackedGroup {
    std::shared_ptr<const FieldTable> tab;
    u32 bits = 0;
    std::vector<u64> keys;  // sorted

    u64 key_of(const M3& m) const {
        u64 k = 0;
        for (int i = 0; i < 9; ++i) k = (k << bits) | m[size_t(i)];
        return k;
    }
    M3 m3_of(u64 k) const {
        M3 m;
        u64 mask = (u64(1) << bits) - 1;
        for (int i = 8; i >= 0; --i) {
            m[size_t(i)] = u32(k & mask);
            k >>= bits;
        }
        return m;
    }
    i64 find(u64 key) const {
        auto it = std::lower_bound(keys.begin(), keys.end(), key);
        if (it == keys.end() || *it != key) return -1;
        return it - keys.begin();
    }
};

u32 bits_for(u64 q) {
    u32 b = 0;
    while ((u64(1) << b) < q) ++b;
    return b;
}

struct OrbitPartition {
    std::vector<u32> orbit_id;
    std::vector<u64> rep_index;
    std::vector<u64> orbit_size;
};

OrbitPartition conjugation_orbits(const PackedGroup& g, const std::vector<M3>& gens) {
    const FieldTable& t = *g.tab;
    std::vector<std::pair<M3, M3>> gen_pairs;
    for (const auto& x : gens) {
        gen_pairs.emplace_back(x, m3_inverse(t, x));
        gen_pairs.emplace_back(m3_inverse(t, x), x);
    }
    OrbitPartition part;
    part.orbit_id.assign(g.keys.size(), u32(-1));
    std::vector<u64> queue;
    for (u64 start = 0; start < g.keys.size(); ++start) {
        if (part.orbit_id[size_t(start)] != u32(-1)) continue;
        u32 id = u32(part.rep_index.size());
        part.rep_index.push_back(start);  // keys sorted: first unvisited is the least of its orbit
        part.orbit_size.push_back(0);
        queue.clear();
        queue.push_back(start);
        part.orbit_id[size_t(start)] = id;
        while (!queue.empty()) {
            u64 idx = queue.back();
            queue.pop_back();
            ++part.orbit_size[id];
            M3 x = g.m3_of(g.keys[size_t(idx)]);
            for (const auto& [h, hinv] : gen_pairs) {
                M3 y = m3_mul(t, h, m3_mul(t, x, hinv));
                i64 j = g.find(g.key_of(y));
                if (j < 0) throw Error("internal: conjugate left the group (bad generators)");
                if (part.orbit_id[size_t(j)] == u32(-1)) {
                    part.orbit_id[size_t(j)] = id;
                    queue.push_back(u64(j));
                }
            }
        }
    }
    return part;
}

// Verifies <gens> = the whole packed group by left-multiplication closure.
bool generates(const PackedGroup& g, const std::vector<M3>& gens) {
    const FieldTable& t = *g.tab;
    std::vector<bool> seen(g.keys.size(), false);
    std::vector<u64> queue;
    i64 e = g.find(g.key_of(m3_identity(t)));
    if (e < 0) return false;
    seen[size_t(e)] = true;
    queue.push_back(u64(e));
    u64 visited = 1;
    while (!queue.empty()) {
        u64 idx = queue.back();
        queue.pop_back();
        M3 x = g.m3_of(g.keys[size_t(idx)]);
        for (const auto& h : gens) {
            M3 y = m3_mul(t, h, x);
            i64 j = g.find(g.key_of(y));
            if (j < 0) return false;
            if (!seen[size_t(j)]) {
                seen[size_t(j)] = true;
                ++visited;
                queue.push_back(u64(j));
            }
        }
    }
    return visited == g.keys.size();
}

OracleCensus run_census(u64 q, IsoGroup group, const std::vector<SquareMatrix>& criterion_isolated,
                        const RunLimits& limits) {
    OracleCensus census;
    PackedGroup pg;
    std::vector<M3> gens;
    if (group == IsoGroup::SL3) {
        auto pk = prime_power_decompose(q);
        auto spec = FieldSpec::make(pk->first, pk->second);
        pg.tab = field_table(spec);
        census.group_order = sl3_order(q);
        if (census.group_order > limits.enum_cap)
            throw SizeCapExceeded("SL3(" + std::to_string(q) + ") exceeds the enumeration cap");
        pg.bits = bits_for(pg.tab->q);
        u64 chunks = sl3_slice_count(*pg.tab);
        std::vector<std::vector<u64>> per(static_cast<size_t>(chunks));
        parallel_for_chunks(chunks, effective_workers(limits.workers), [&](u64 s) {
            auto& out = per[size_t(s)];
            for_each_sl3_slice(*pg.tab, s, [&](const M3& m) { out.push_back(pg.key_of(m)); });
        });
        pg.keys.reserve(size_t(census.group_order));
        for (auto& v : per) pg.keys.insert(pg.keys.end(), v.begin(), v.end());
        // Transvections I + E_ij generate SL_n.
        const FieldTable& t = *pg.tab;
        for (u32 i = 0; i < 3; ++i)
            for (u32 j = 0; j < 3; ++j) {
                if (i == j) continue;
                M3 m = m3_identity(t);
                m[i * 3 + j] = t.one;
                gens.push_back(m);
            }
    } else {
        QuadraticTower tower = QuadraticTower::make(q);
        pg.tab = field_table(tower.ext());
        census.group_order = su3_order(q);
        if (census.group_order > limits.enum_cap)
            throw SizeCapExceeded("SU3(" + std::to_string(q) + ") exceeds the enumeration cap");
        pg.bits = bits_for(pg.tab->q);
        u64 chunks = su3_slice_count(*pg.tab);
        std::vector<std::vector<u64>> per(static_cast<size_t>(chunks));
        parallel_for_chunks(chunks, effective_workers(limits.workers), [&](u64 s) {
            auto& out = per[size_t(s)];
            for_each_su3_slice(*pg.tab, q, s, [&](const M3& m) { out.push_back(pg.key_of(m)); });
        });
        pg.keys.reserve(size_t(census.group_order));
        for (auto& v : per) pg.keys.insert(pg.keys.end(), v.begin(), v.end());
    }
    if (pg.keys.size() != census.group_order) throw Error("internal: census enumeration count mismatch");
    std::sort(pg.keys.begin(), pg.keys.end());

    if (group == IsoGroup::SU3) {
        // Seeded generating set, verified by closure.
        std::mt19937_64 rng(limits.seed);
        while (true) {
            gens.clear();
            for (int k = 0; k < 3; ++k)
                gens.push_back(pg.m3_of(pg.keys[size_t(rng() % pg.keys.size())]));
            if (generates(pg, gens)) break;
        }
    }

    OrbitPartition part = conjugation_orbits(pg, gens);
    const FieldTable& t = *pg.tab;

    u32 isolated_count = 0;
    std::vector<bool> iso(part.rep_index.size(), false);
    for (u32 id = 0; id < part.rep_index.size(); ++id) {
        M3 r = pg.m3_of(pg.keys[size_t(part.rep_index[id])]);
        M3 partner = group == IsoGroup::SL3 ? m3_transpose(r) : m3_inverse(t, m3_bar(t, r));
        M3 rinv = m3_inverse(t, r);
        i64 ip = pg.find(pg.key_of(partner));
        i64 ii = pg.find(pg.key_of(rinv));
        if (ip < 0 || ii < 0) throw Error("internal: census image outside group");
        bool is_iso = part.orbit_id[size_t(ip)] != id && part.orbit_id[size_t(ii)] != id;
        iso[id] = is_iso;
        if (is_iso) ++isolated_count;
    }
    census.isolated_count = isolated_count;
    for (u32 id = 0; id < part.rep_index.size(); ++id)
        census.classes.push_back(
            CensusClass{m3_to(t, pg.m3_of(pg.keys[size_t(part.rep_index[id])])), part.orbit_size[id], iso[id]});
    std::vector<u32> criterion_ids;
    for (const auto& m : criterion_isolated) {
        i64 j = pg.find(pg.key_of(m3_from(m)));
        if (j < 0) throw Error("internal: criterion representative not in group");
        criterion_ids.push_back(part.orbit_id[size_t(j)]);
    }
    std::sort(criterion_ids.begin(), criterion_ids.end());
    criterion_ids.erase(std::unique(criterion_ids.begin(), criterion_ids.end()), criterion_ids.end());
    std::vector<u32> census_ids;
    for (u32 id = 0; id < iso.size(); ++id)
        if (iso[id]) census_ids.push_back(id);
    census.matches_criterion = criterion_ids == census_ids;
    return census;
}

}  // namespace

IsolatedReport enumerate_isolated(u64 q, IsoGroup group, CensusMode mode, const RunLimits& limits) {
    IsolatedReport report;
    report.q = q;
    report.group = group;
    report.mode = mode;
    auto [verdict, trace] = theorem_verdict(q, group);
    report.verdict = verdict;
    report.trace = trace;

    std::optional<NormOneGroup> normone;
    std::optional<QuadraticTower> tower;
    FieldSpecPtr spec;
    auto pk = prime_power_decompose(q);
    if (group == IsoGroup::SL3) {
        spec = FieldSpec::make(pk->first, pk->second);
        for (u64 i = 1; i < spec->order(); ++i) {
            FieldElem x = spec->from_index(i);
            if (!x.is_one() && x.pow(u64(3)).is_one()) report.alpha_choices.push_back(x);
        }
    } else {
        normone = NormOneGroup::make(q);
        tower = normone->tower();
        spec = tower->ext();
        for (const auto& x : normone->elements())
            if (!x.is_one() && x.pow(u64(3)).is_one()) report.alpha_choices.push_back(x);
    }

    const QuadraticTower* tw = tower ? &*tower : nullptr;
    static const char* kLabels[3] = {"A", "A1", "A2"};
    std::vector<SquareMatrix> isolated_reps;

    for (const auto& alpha : report.alpha_choices) {
        auto reps = group == IsoGroup::SL3 ? canonical_reps_sl3(spec, alpha) : canonical_reps_su3(*normone, alpha);
        std::string suffix = "[" + alpha.str() + "]";
        std::vector<u32> distinct;
        for (u32 i = 0; i < 3; ++i) {
            ClassRecord rec{std::string(kLabels[i]) + suffix, alpha, reps[i]};
            for (u32 j : distinct) {
                auto dec = group == IsoGroup::SL3 ? decide_sl3(reps[i], reps[j], limits)
                                                  : decide_su3(reps[i], reps[j], *tw, limits);
                if (dec.verdict == Verdict::conjugate) {
                    rec.distinct = false;
                    rec.same_class_as = std::string(kLabels[j]) + suffix;
                    break;
                }
            }
            if (rec.distinct) {
                distinct.push_back(i);
                rec.certificate = is_isolated(reps[i], group, tw, limits);
                rec.is_isolated = rec.certificate->isolated;
                if (rec.is_isolated) {
                    ++report.class_count_isolated;
                    isolated_reps.push_back(reps[i]);
                }
            }
            report.classes.push_back(std::move(rec));
        }
        // The in-triple transpose pairing: A1 against tA2.
        auto dec = group == IsoGroup::SL3 ? decide_sl3(reps[1], reps[2].transpose(), limits)
                                          : decide_su3(reps[1], reps[2].transpose(), *tw, limits);
        report.relations.push_back(ClassRelation{"A1" + suffix, "transpose", "A2" + suffix,
                                                 dec.verdict == Verdict::conjugate, dec.witness});
    }
    // Cross-alpha closure: where the inverse of the first root's A1 lands in
    // the second root's triple.
    if (report.alpha_choices.size() == 2) {
        const auto& a0 = report.alpha_choices[0];
        const auto& a1 = report.alpha_choices[1];
        auto reps0 = group == IsoGroup::SL3 ? canonical_reps_sl3(spec, a0) : canonical_reps_su3(*normone, a0);
        auto reps1 = group == IsoGroup::SL3 ? canonical_reps_sl3(spec, a1) : canonical_reps_su3(*normone, a1);
        SquareMatrix inv1 = reps0[1].inverse();
        for (u32 j = 0; j < 3; ++j) {
            auto dec = group == IsoGroup::SL3 ? decide_sl3(inv1, reps1[j], limits)
                                              : decide_su3(inv1, reps1[j], *tw, limits);
            if (dec.verdict == Verdict::conjugate) {
                report.relations.push_back(ClassRelation{std::string("A1[") + a0.str() + "]^-1", "inverse",
                                                         std::string(kLabels[j]) + "[" + a1.str() + "]", true,
                                                         dec.witness});
                break;
            }
        }
    }

    if (mode == CensusMode::oracle) report.census = run_census(q, group, isolated_reps, limits);
    return report;
}

}  // namespace chilab
