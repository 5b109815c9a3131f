#include "chilab/g2.hpp"

namespace chilab {

ChiralityVerdict chirality_verdict(u64 q, const RunLimits& limits) {
    ChiralityVerdict out;
    out.q = q;
    auto [v1, t1] = theorem_verdict(q, IsoGroup::SL3);
    auto [v2, t2] = theorem_verdict(q, IsoGroup::SU3);
    out.trace_sl3 = t1;
    out.trace_su3 = t2;
    out.case1 = v1 == TheoremVerdict::exists;
    out.case2 = v2 == TheoremVerdict::exists;
    out.chiral = out.case1 || out.case2;
    if (out.case1 && out.case2) throw Error("internal: q = 1 and q = 2 mod 3 simultaneously");
    if (out.case1) {
        out.witness_source = "SL3";
        auto pk = prime_power_decompose(q);
        auto spec = FieldSpec::make(pk->first, pk->second);
        FieldElem alpha = *primitive_root_of_unity(spec, 3);
        auto reps = canonical_reps_sl3(spec, alpha);
        auto cert = is_isolated(reps[1], IsoGroup::SL3, nullptr, limits);
        if (!cert.isolated) throw Error("internal: chiral case1 witness is not isolated");
        out.witness_alpha = alpha;
        out.witness_class = reps[1];
        out.witness_certificate = std::move(cert);
    } else if (out.case2) {
        out.witness_source = "SU3";
        NormOneGroup no = NormOneGroup::make(q);
        FieldElem alpha = *primitive_root_of_unity(no, 3);
        auto reps = canonical_reps_su3(no, alpha);
        auto tower = no.tower();
        auto cert = is_isolated(reps[0], IsoGroup::SU3, &tower, limits);
        if (!cert.isolated) throw Error("internal: chiral case2 witness is not isolated");
        out.witness_alpha = alpha;
        out.witness_class = reps[0];
        out.witness_certificate = std::move(cert);
    }
    return out;
}

}  // namespace chilab
