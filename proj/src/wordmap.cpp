#include "chilab/wordmap.hpp"

#include <algorithm>
#include <random>

#include "chilab/ftab.hpp"
#include "chilab/group_enum.hpp"
#include "chilab/parallel.hpp"

namespace chilab {

u32 evaluate_word(const Word& w, const GroupTable& g, const std::vector<u32>& tuple) {
    if (w.arity() > tuple.size()) throw ArityMismatch("tuple shorter than the word's arity");
    u32 acc = g.identity();
    for (const auto& l : w.letters()) acc = g.mul(acc, g.pow(tuple[l.index - 1], l.exponent));
    return acc;
}

ImageReport word_image(const Word& w, const GroupTable& g, ImageMode mode, const RunLimits& limits,
                       const SampledSpec& sampled) {
    ImageReport rep;
    rep.word = w;
    rep.group_kind = g.kind();
    rep.group_size = g.size();
    rep.mode = mode;
    u32 n = g.size();
    u32 arity = std::max<u32>(w.arity(), 1);
    std::vector<bool> in_image(n, false);
    if (mode == ImageMode::exhaustive) {
        u64 tuples = 1;
        for (u32 i = 0; i < arity; ++i) {
            if (tuples > limits.enum_cap / n)
                throw SizeCapExceeded("exhaustive image needs " + std::to_string(n) + "^" +
                                      std::to_string(arity) + " tuples");
            tuples *= n;
        }
        rep.tuples_evaluated = tuples;
        u32 workers = effective_workers(limits.workers);
        u64 chunks = n;  // partition by the first coordinate
        std::vector<std::vector<bool>> partial(size_t(chunks));
        parallel_for_chunks(chunks, workers, [&](u64 first) {
            std::vector<bool> local(n, false);
            std::vector<u32> tuple(arity, 0);
            tuple[0] = u32(first);
            u64 rest = tuples / n;
            for (u64 t = 0; t < rest; ++t) {
                u64 v = t;
                for (u32 i = 1; i < arity; ++i) {
                    tuple[i] = u32(v % n);
                    v /= n;
                }
                local[evaluate_word(w, g, tuple)] = true;
            }
            partial[size_t(first)] = std::move(local);
        });
        for (const auto& local : partial)
            for (u32 i = 0; i < n; ++i)
                if (local[i]) in_image[i] = true;
    } else {
        std::mt19937_64 rng(sampled.seed);
        std::vector<u32> tuple(arity, 0);
        for (u64 t = 0; t < sampled.count; ++t) {
            for (u32 i = 0; i < arity; ++i) tuple[i] = u32(rng() % n);
            in_image[evaluate_word(w, g, tuple)] = true;
        }
        rep.tuples_evaluated = sampled.count;
    }
    for (u32 i = 0; i < n; ++i)
        if (in_image[i]) rep.elements.push_back(i);
    if (mode == ImageMode::exhaustive) {
        bool symmetric = true;
        for (u32 i : rep.elements)
            if (!in_image[g.inv(i)]) {
                symmetric = false;
                break;
            }
        rep.symmetric = symmetric;
    }
    return rep;
}

namespace {

// Reduced words of the given total length over `arity` letters, generated in
// canonical symbol order: x < x^-1 < y < y^-1 < ...
void enumerate_reduced(u32 arity, u64 length, std::vector<i64>& symbols, const std::function<bool()>& emit,
                       bool& stop) {
    if (stop) return;
    if (symbols.size() == length) {
        stop = emit();
        return;
    }
    for (u32 letter = 1; letter <= arity && !stop; ++letter) {
        for (int sign = +1; sign >= -1 && !stop; sign -= 2) {
            i64 sym = sign * i64(letter);
            if (!symbols.empty() && symbols.back() == -sym) continue;  // free cancellation
            symbols.push_back(sym);
            enumerate_reduced(arity, length, symbols, emit, stop);
            symbols.pop_back();
        }
    }
}

Word word_from_symbols(const std::vector<i64>& symbols) {
    std::vector<WordLetter> letters;
    for (i64 s : symbols) letters.push_back({u32(s < 0 ? -s : s), s < 0 ? i64(-1) : i64(1)});
    return Word::from_letters(letters);
}

}  // namespace

std::optional<Word> chirality_search(const GroupTable& g, u64 max_total_length, u32 arity,
                                     const RunLimits& limits) {
    std::optional<Word> found;
    for (u64 len = 1; len <= max_total_length && !found; ++len) {
        std::vector<i64> symbols;
        bool stop = false;
        enumerate_reduced(arity, len, symbols,
                          [&]() {
                              Word w = word_from_symbols(symbols);
                              ImageReport rep = word_image(w, g, ImageMode::exhaustive, limits);
                              if (rep.symmetric && !*rep.symmetric) {
                                  found = w;
                                  return true;
                              }
                              return false;
                          },
                          stop);
    }
    return found;
}

InversionCertificate inversion_certificate(const SquareMatrix& g, GroupKind kind, const QuadraticTower* tower,
                                           const RunLimits& limits) {
    InversionCertificate cert;
    cert.element = g;
    cert.kind = kind;
    cert.automorphism = "transpose_inverse_then_inner";
    if (!group_membership(g, kind, tower)) throw NotInAmbientGroup("element not in the stated group");
    SquareMatrix tg = g.transpose();
    std::optional<SquareMatrix> x;
    if (kind == GroupKind::SL || kind == GroupKind::GL) {
        x = gl_conjugator(g, tg);
        if (!x) throw CertificateNotFound("no GL conjugator from g to its transpose (impossible)");
    } else {
        if (tower == nullptr) throw WrongTower("unitary certificates need a quadratic tower");
        if (tg == g) {
            x = SquareMatrix::identity(g.spec(), g.n());
        } else {
            // Scan {X : X g = tg X} for an invertible unitary point; the
            // class correspondence guarantees one exists.
            auto basis = intertwiner_basis(g, tg);
            auto tab = field_table(g.spec());
            const FieldTable& t = *tab;
            std::vector<M3> b3;
            for (const auto& b : basis) b3.push_back(m3_from(b));
            u64 q = t.q;
            u64 space = 1;
            bool capped = false;
            for (size_t i = 0; i < b3.size(); ++i) {
                if (space > limits.scan_cap / q) {
                    capped = true;
                    break;
                }
                space *= q;
            }
            u64 budget = capped ? limits.scan_cap : space;
            for (u64 tup = 0; tup < budget && !x; ++tup) {
                M3 m{};
                u64 v = tup;
                for (const auto& b : b3) {
                    u32 c = u32(v % q);
                    v /= q;
                    if (c != 0)
                        for (int k = 0; k < 9; ++k) m[size_t(k)] = t.addf(m[size_t(k)], t.mulf(c, b[size_t(k)]));
                }
                if (m3_det(t, m) == 0 || !m3_is_unitary(t, m)) continue;
                x = m3_to(t, m);
            }
            if (!x) throw CertificateNotFound("unitary conjugator scan exhausted");
        }
    }
    if (*x * g != tg * *x) throw CertificateNotFound("conjugator does not map g to its transpose");
    // psi = Int_{x^{-1}} after gamma, gamma(h) = th^{-1}: psi(g) = x^{-1} tg^{-1} x = g^{-1}.
    SquareMatrix psi_g = x->inverse() * tg.inverse() * *x;
    cert.verified = psi_g == g.inverse();
    if (!cert.verified) throw CertificateNotFound("certificate verification failed");
    cert.conjugator = *x;
    return cert;
}

namespace {

using M4 = std::array<u32, 16>;

M4 m4_from(const SquareMatrix& a) {
    M4 m{};
    for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) m[i * 4 + j] = u32(a.at(i, j).index());
    return m;
}

SquareMatrix m4_to(const FieldTable& t, const M4& m) {
    std::vector<FieldElem> e;
    for (int k = 0; k < 16; ++k) e.push_back(t.spec->from_index(m[size_t(k)]));
    return SquareMatrix(t.spec, 4, std::move(e));
}

M4 m4_mul(const FieldTable& t, const M4& a, const M4& b) {
    M4 r{};
    for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) {
            u32 s = 0;
            for (u32 k = 0; k < 4; ++k) s = t.addf(s, t.mulf(a[i * 4 + k], b[k * 4 + j]));
            r[i * 4 + j] = s;
        }
    return r;
}

bool m4_invertible(const FieldTable& t, M4 a) {
    for (u32 col = 0; col < 4; ++col) {
        u32 piv = col;
        while (piv < 4 && a[piv * 4 + col] == 0) ++piv;
        if (piv == 4) return false;
        if (piv != col)
            for (u32 j = 0; j < 4; ++j) std::swap(a[piv * 4 + j], a[col * 4 + j]);
        u32 inv = t.inv[a[col * 4 + col]];
        for (u32 j = 0; j < 4; ++j) a[col * 4 + j] = t.mulf(a[col * 4 + j], inv);
        for (u32 i = col + 1; i < 4; ++i) {
            u32 f = a[i * 4 + col];
            if (f == 0) continue;
            for (u32 j = 0; j < 4; ++j) a[i * 4 + j] = t.subf(a[i * 4 + j], t.mulf(f, a[col * 4 + j]));
        }
    }
    return true;
}

// tX J X for J = [[0, I2], [-I2, 0]], returned as an M4.
M4 m4_symplectic_gram(const FieldTable& t, const M4& x) {
    M4 jx{};
    // J X: rows 0,1 of JX are rows 2,3 of X; rows 2,3 are -rows 0,1.
    for (u32 j = 0; j < 4; ++j) {
        jx[0 * 4 + j] = x[2 * 4 + j];
        jx[1 * 4 + j] = x[3 * 4 + j];
        jx[2 * 4 + j] = t.neg[x[0 * 4 + j]];
        jx[3 * 4 + j] = t.neg[x[1 * 4 + j]];
    }
    M4 xt{};
    for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) xt[i * 4 + j] = x[j * 4 + i];
    return m4_mul(t, xt, jx);
}

}  // namespace

SpRealityCertificate sp4_reality_certificate(const SquareMatrix& g, const RunLimits& limits) {
    if (g.n() != 4) throw DimensionMismatch("sp4_reality_certificate expects 4x4 matrices");
    auto tab = field_table(g.spec());
    const FieldTable& t = *tab;
    M4 jplus{};
    {
        SquareMatrix J = SquareMatrix::zero(g.spec(), 4);
        auto one = g.spec()->one();
        J = J.with(0, 2, one).with(1, 3, one).with(2, 0, -one).with(3, 1, -one);
        jplus = m4_from(J);
        M4 gram = m4_symplectic_gram(t, m4_from(g));
        if (gram != jplus) throw NotInAmbientGroup("element is not symplectic");
    }
    M4 jminus{};
    for (int k = 0; k < 16; ++k) jminus[size_t(k)] = t.neg[jplus[size_t(k)]];

    SpRealityCertificate cert;
    cert.element = g;
    SquareMatrix ginv = g.inverse();
    if (g == ginv) {
        cert.conjugator = SquareMatrix::identity(g.spec(), 4);
        cert.conjugator_in_sp4 = true;
        cert.verified = true;
        return cert;
    }
    auto basis = intertwiner_basis(g, ginv);
    std::vector<M4> b4;
    for (const auto& b : basis) b4.push_back(m4_from(b));
    u64 q = t.q;
    u64 space = 1;
    bool capped = false;
    for (size_t i = 0; i < b4.size(); ++i) {
        if (space > limits.scan_cap / q) {
            capped = true;
            break;
        }
        space *= q;
    }
    u64 budget = capped ? limits.scan_cap : space;
    for (u64 tup = 0; tup < budget; ++tup) {
        M4 m{};
        u64 v = tup;
        for (const auto& b : b4) {
            u32 c = u32(v % q);
            v /= q;
            if (c != 0)
                for (int k = 0; k < 16; ++k) m[size_t(k)] = t.addf(m[size_t(k)], t.mulf(c, b[size_t(k)]));
        }
        if (!m4_invertible(t, m)) continue;
        M4 gram = m4_symplectic_gram(t, m);
        bool plus = gram == jplus;
        bool minus = gram == jminus;
        if (!plus && !minus) continue;
        SquareMatrix x = m4_to(t, m);
        if (x * g != ginv * x) throw Error("internal: intertwiner basis inconsistent");
        cert.conjugator = x;
        cert.conjugator_in_sp4 = plus;
        cert.verified = true;
        return cert;
    }
    throw CertificateNotFound("no extended-symplectic conjugator within the scan budget");
}

bool automorphism_invariance_check(const Word& w, const GroupTable& g,
                                   const std::vector<std::vector<u32>>& automorphisms,
                                   const RunLimits& limits) {
    ImageReport rep = word_image(w, g, ImageMode::exhaustive, limits);
    std::vector<bool> in_image(g.size(), false);
    for (u32 i : rep.elements) in_image[i] = true;
    for (const auto& phi : automorphisms) {
        if (!g.is_automorphism(phi)) throw Error("supplied map is not an automorphism");
        for (u32 i : rep.elements)
            if (!in_image[phi[i]]) return false;
    }
    return true;
}

}  // namespace chilab
