#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sl2rep/linalg.hpp"

namespace sl2rep {

// Orbits of the cyclic characters psi_[A] of K^ell under SL2(o_r)-conjugation,
// computed at level ell' = floor(r/2) on companion triples (a, alpha, beta).

enum class OrbitType { SS, IR, SNS };

inline const char* orbit_type_name(OrbitType t) {
    switch (t) {
        case OrbitType::SS: return "SS";
        case OrbitType::IR: return "IR";
        default: return "SNS";
    }
}

// type of X^2 + beta X + alpha modulo pi
inline OrbitType classify_type(const CyclicTriple& t) {
    const Ring& R = t.ring();
    unsigned b = t.beta.residue(), a = t.alpha.residue();
    if (b == 0) return OrbitType::SNS;
    for (unsigned x = 0; x < R.q(); ++x)
        if (R.fq_add(R.fq_add(R.fq_mul(x, x), R.fq_mul(b, x)), a) == 0) return OrbitType::SS;
    return OrbitType::IR;
}

// k = min(val(beta), ell') and the odd square-defect parameter s of alpha;
// in char 2, s is the position of the first nonzero odd digit of alpha below
// k, or 2*floor(k/2)+1 when alpha is a square mod pi^k
struct SnsParameters {
    unsigned k = 0;
    unsigned s = 1;
};

inline SnsParameters sns_parameters(const CyclicTriple& t) {
    const Ring& L = t.ring();
    SnsParameters p;
    p.k = std::min(t.beta.val(), L.r());
    p.s = 2 * (p.k / 2) + 1;
    for (unsigned i = 1; i < p.k; i += 2)
        if (t.alpha.digit(i) != 0) {
            p.s = i;
            break;
        }
    return p;
}

struct OrbitClass {
    CyclicTriple rep;
    OrbitType type = OrbitType::SNS;
    SnsParameters params;         // char-2 bookkeeping; k,s of the representative
    bool computed = false;        // true when found by the exhaustive partition
    uint64_t members = 0;         // number of triples in the sigma-class (level ell')
};

namespace detail {

// dense index of Sigma = units x o x o
struct SigmaIndex {
    const Ring& L;
    uint64_t Q;
    explicit SigmaIndex(const Ring& L_) : L(L_), Q(L_.size()) {}
    uint64_t index(Ring::code_t a, Ring::code_t al, Ring::code_t be) const {
        return ((uint64_t)a * Q + al) * Q + be;
    }
    uint64_t index(const CyclicTriple& t) const {
        return index(t.a.code(), t.alpha.code(), t.beta.code());
    }
    CyclicTriple triple(uint64_t idx) const {
        Ring::code_t be = (Ring::code_t)(idx % Q);
        Ring::code_t al = (Ring::code_t)((idx / Q) % Q);
        Ring::code_t a = (Ring::code_t)(idx / (Q * Q));
        return {L.element(a), L.element(al), L.element(be)};
    }
};

struct UnionFind {
    std::vector<int64_t> up;
    explicit UnionFind(size_t n) : up(n, -1) {}
    int64_t find(int64_t x) {
        while (up[x] >= 0) {
            if (up[up[x]] >= 0) up[x] = up[up[x]];
            x = up[x];
        }
        return x;
    }
    void unite(int64_t a, int64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (up[a] > up[b]) std::swap(a, b);
        up[a] += up[b];
        up[b] = a;
    }
};

inline const std::vector<Ring::code_t>& det_image_cached(
    const Ring& L, Ring::code_t alpha, Ring::code_t beta,
    std::map<uint64_t, std::vector<Ring::code_t>>& cache) {
    uint64_t key = (uint64_t)alpha * L.size() + beta;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    CyclicTriple t{L.one(), L.element(alpha), L.element(beta)};
    return cache.emplace(key, det_image(t, L)).first->second;
}

}  // namespace detail

// conjugation equivalence of companion triples: exists s with beta2 = beta1 - 2s,
// alpha2 = alpha1 - s^2 + s beta1, and a2 a1^{-1} in det(C_GL(B1)).
inline bool sigma_equivalent(const CyclicTriple& t1, const CyclicTriple& t2) {
    const Ring& L = t1.ring();
    std::vector<Ring::code_t> img = det_image(t1, L);
    RingElem ratio = t2.a * t1.a.inv();
    for (Ring::code_t sc = 0; sc < L.size(); ++sc) {
        RingElem s = L.element(sc);
        if (t2.beta != t1.beta - L.from_int(2) * s) continue;
        if (t2.alpha != t1.alpha - s * s + s * t1.beta) continue;
        if (std::binary_search(img.begin(), img.end(), ratio.code())) return true;
    }
    return false;
}

// exhaustive partition of Sigma by the generating moves of the equivalence
inline std::vector<OrbitClass> orbit_partition_exhaustive(const Ring& L) {
    detail::SigmaIndex ix(L);
    uint64_t Q = L.size();
    if (Q * Q * Q > (uint64_t)3e7)
        throw std::domain_error("orbit_partition_exhaustive: level ring too large");
    detail::UnionFind uf((size_t)(Q * Q * Q));
    std::map<uint64_t, std::vector<Ring::code_t>> det_cache;
    RingElem two = L.from_int(2);
    for (Ring::code_t a = 0; a < Q; ++a) {
        if (!L.is_unit_code(a)) continue;
        for (Ring::code_t al = 0; al < Q; ++al)
            for (Ring::code_t be = 0; be < Q; ++be) {
                RingElem alpha = L.element(al), beta = L.element(be);
                uint64_t self = ix.index(a, al, be);
                const auto& img = detail::det_image_cached(L, al, be, det_cache);
                for (Ring::code_t sc = 0; sc < Q; ++sc) {
                    RingElem s = L.element(sc);
                    RingElem b2 = beta - two * s;
                    RingElem a2 = alpha - s * s + s * beta;
                    for (Ring::code_t d : img)
                        uf.unite((int64_t)self,
                                 (int64_t)ix.index(L.mul_code(a, d), a2.code(), b2.code()));
                }
            }
    }
    std::map<int64_t, OrbitClass> roots;
    for (Ring::code_t a = 0; a < Q; ++a) {
        if (!L.is_unit_code(a)) continue;
        for (Ring::code_t al = 0; al < Q; ++al)
            for (Ring::code_t be = 0; be < Q; ++be) {
                uint64_t self = ix.index(a, al, be);
                int64_t root = uf.find((int64_t)self);
                CyclicTriple t = ix.triple(self);
                auto it = roots.find(root);
                if (it == roots.end()) {
                    OrbitClass oc;
                    oc.rep = t;
                    oc.computed = true;
                    oc.members = 1;
                    roots.emplace(root, oc);
                } else {
                    it->second.members += 1;
                    if (t < it->second.rep) it->second.rep = t;  // lexicographically least member
                }
            }
    }
    std::vector<OrbitClass> out;
    out.reserve(roots.size());
    for (auto& [root, oc] : roots) {
        oc.type = classify_type(oc.rep);
        oc.params = sns_parameters(oc.rep);
        out.push_back(oc);
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitClass& x, const OrbitClass& y) { return x.rep < y.rep; });
    return out;
}

namespace detail {

// canonical coset representatives of a subgroup S (given as a sorted code set)
// inside the unit group
inline std::vector<Ring::code_t> unit_coset_reps(const Ring& L,
                                                 const std::vector<Ring::code_t>& sub) {
    std::vector<char> seen(L.size(), 0);
    std::vector<Ring::code_t> reps;
    for (Ring::code_t u = 0; u < L.size(); ++u) {
        if (!L.is_unit_code(u) || seen[u]) continue;
        reps.push_back(u);
        for (Ring::code_t d : sub) seen[L.mul_code(u, d)] = 1;
    }
    return reps;
}

// structured representatives for invertible trace (both characteristics)
inline std::vector<OrbitClass> invertible_trace_reps(const Ring& L) {
    std::vector<OrbitClass> out;
    if (L.char_two() || L.r() <= L.e()) {
        // char 2 for any ell'; char 0 with ell' <= e is ring-isomorphic to the
        // char-2 quotient, and the recipe computes verbatim inside L
        // { (1, alpha_beta, beta), (1, alpha'_beta, beta) } over all units beta,
        // the alphas being coset representatives of { s^2 + s beta }
        for (Ring::code_t bc = 0; bc < L.size(); ++bc) {
            if (!L.is_unit_code(bc)) continue;
            RingElem beta = L.element(bc);
            std::vector<char> in_sub(L.size(), 0);
            for (Ring::code_t sc = 0; sc < L.size(); ++sc) {
                RingElem s = L.element(sc);
                in_sub[(s * s + s * beta).code()] = 1;
            }
            Ring::code_t other = 0;
            while (in_sub[other]) ++other;
            for (Ring::code_t al : {(Ring::code_t)0, other}) {
                OrbitClass oc;
                oc.rep = {L.one(), L.element(al), beta};
                out.push_back(oc);
            }
        }
        return out;
    }
    // char 0, ell' > e: representatives (1, alpha, beta), beta in
    // units/(1 + pi^e o), alpha modulo (pi^{ell'-e})
    unsigned e = L.e();
    std::vector<Ring::code_t> one_plus;
    for (Ring::code_t z = 0; z < L.size(); ++z)
        one_plus.push_back(L.add_code(1, L.mul_code(L.pi_pow_code(e), z)));
    std::sort(one_plus.begin(), one_plus.end());
    one_plus.erase(std::unique(one_plus.begin(), one_plus.end()), one_plus.end());
    std::vector<Ring::code_t> T = unit_coset_reps(L, one_plus);
    unsigned cut = L.r() > e ? L.r() - e : 0;
    for (Ring::code_t beta : T)
        for (Ring::code_t al = 0; al < L.size(); ++al) {
            bool canonical = true;
            for (unsigned i = cut; i < L.r(); ++i)
                if (L.digit_code(al, i)) canonical = false;
            if (!canonical) continue;
            OrbitClass oc;
            oc.rep = {L.one(), L.element(al), L.element(beta)};
            out.push_back(oc);
        }
    return out;
}

// char 0, ell' >= 2e: representatives (a, alpha, beta) with beta in a
// transversal W of (pi)/(pi^e), alpha modulo (pi^{ell'-e} beta), and a in
// units modulo the det image of the centralizer
inline std::vector<OrbitClass> char0_noninvertible_reps(const Ring& L) {
    unsigned e = L.e();
    std::vector<OrbitClass> out;
    for (Ring::code_t bc = 0; bc < L.size(); ++bc) {
        if (L.val_code(bc) < 1) continue;
        bool w_canonical = true;  // W: digits at positions >= e vanish
        for (unsigned i = e; i < L.r(); ++i)
            if (L.digit_code(bc, i)) w_canonical = false;
        if (!w_canonical) continue;
        RingElem beta = L.element(bc);
        unsigned ideal_pow = std::min(L.r(), L.r() - e + L.val_code(bc));
        for (Ring::code_t al = 0; al < L.size(); ++al) {
            bool canonical = true;
            for (unsigned i = ideal_pow; i < L.r(); ++i)
                if (L.digit_code(al, i)) canonical = false;
            if (!canonical) continue;
            CyclicTriple base{L.one(), L.element(al), beta};
            for (Ring::code_t a : unit_coset_reps(L, det_image(base, L))) {
                OrbitClass oc;
                oc.rep = {L.element(a), L.element(al), beta};
                out.push_back(oc);
            }
        }
    }
    return out;
}

}  // namespace detail

// Complete, duplicate-free orbit representatives at level ell'.  Structured
// generation where the closed-form representative sets apply; the exhaustive
// partition otherwise (those classes carry computed = true).
inline std::vector<OrbitClass> orbit_representatives(const Ring& L) {
    std::vector<OrbitClass> out;
    for (OrbitClass& oc : detail::invertible_trace_reps(L)) out.push_back(oc);

    bool noninv_structured = !L.char_two() && L.r() >= 2 * L.e();
    if (noninv_structured) {
        for (OrbitClass& oc : detail::char0_noninvertible_reps(L)) out.push_back(oc);
    } else {
        // exhaustive partition restricted to non-invertible trace
        for (const OrbitClass& oc : orbit_partition_exhaustive(L))
            if (!oc.rep.beta.is_unit()) out.push_back(oc);
    }

    for (OrbitClass& oc : out) {
        oc.type = classify_type(oc.rep);
        oc.params = sns_parameters(oc.rep);
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitClass& x, const OrbitClass& y) { return x.rep < y.rep; });
    return out;
}

struct OrbitCounts {
    uint64_t ss = 0, ir = 0, sns = 0;
    bool formula = false;  // SS/IR counts from the closed form (else counted)
};

// |Sigma^SS| = |Sigma^IR| = (q-1) q^{ell'-1} in char 2, halved in char 0 when
// ell' > e; SNS by generation/partition
inline OrbitCounts count_orbits_by_type(const Ring& L) {
    OrbitCounts oc;
    uint64_t qpow = 1;
    for (unsigned i = 0; i + 1 < L.r(); ++i) qpow *= L.q();
    uint64_t base = (uint64_t)(L.q() - 1) * qpow;
    if (L.char_two() || L.r() <= L.e()) {
        oc.ss = oc.ir = base;
        oc.formula = true;
    } else {
        oc.ss = oc.ir = base / 2;
        oc.formula = true;
    }
    for (const OrbitClass& c : orbit_representatives(L))
        if (c.type == OrbitType::SNS) ++oc.sns;
    return oc;
}

// GL2-orbit count of SNS classes with parameters (k, s), char 2:
//   B_G(k, s) per the closed form, with
//   D(s) = (q-1) q^{ell'-floor(s/2)-1} for s < k and q^{ell'-floor(k/2)} else.
// The k = ell' branch divides by q^{ceil(ell'/2)}; the floor variant sometimes
// quoted overcounts by a factor q at odd ell' (checked against enumeration).
inline uint64_t sns_gl_class_count_formula(const Ring& L, unsigned k, unsigned s) {
    if (!L.char_two()) throw std::domain_error("B_G(k,s) is a char-2 quantity");
    unsigned lp = L.r();
    auto qpow = [&](long long ee) -> uint64_t {
        uint64_t v = 1;
        for (long long i = 0; i < ee; ++i) v *= L.q();
        return v;
    };
    // D(s)
    uint64_t D;
    if (s < k)
        D = (uint64_t)(L.q() - 1) * qpow((long long)lp - (long long)(s / 2) - 1);
    else
        D = qpow((long long)lp - (long long)(k / 2));
    // the three k-ranges; all values here are integers (q divides D appropriately)
    if (2 * k < lp) return 2 * (L.q() - 1) * D / L.q();
    if (k < lp) return (uint64_t)(L.q() - 1) * D / qpow((long long)k + 1 - (long long)(lp / 2));
    return D / qpow((long long)((lp + 1) / 2));
}

// exhaustive GL2-orbit partition of SNS classes, grouped by (k, s)
inline std::map<std::pair<unsigned, unsigned>, uint64_t> sns_gl_class_count_enumerated(
    const Ring& L) {
    // GL-equivalence adds unconstrained a-scaling: classes are the (alpha, beta)
    // orbits under alpha -> alpha - s^2 + s beta, beta -> beta - 2s
    uint64_t Q = L.size();
    std::vector<int64_t> cls((size_t)(Q * Q), -1);
    RingElem two = L.from_int(2);
    std::map<std::pair<unsigned, unsigned>, uint64_t> out;
    for (Ring::code_t al = 0; al < Q; ++al)
        for (Ring::code_t be = 0; be < Q; ++be) {
            if (L.val_code(be) < 1) continue;  // SNS only
            if (cls[al * Q + be] >= 0) continue;
            // flood the (alpha, beta) orbit
            std::vector<std::pair<Ring::code_t, Ring::code_t>> stack{{al, be}};
            cls[al * Q + be] = 1;
            while (!stack.empty()) {
                auto [ac, bc] = stack.back();
                stack.pop_back();
                RingElem alpha = L.element(ac), beta = L.element(bc);
                for (Ring::code_t sc = 0; sc < Q; ++sc) {
                    RingElem s = L.element(sc);
                    Ring::code_t a2 = (alpha - s * s + s * beta).code();
                    Ring::code_t b2 = (beta - two * s).code();
                    if (cls[a2 * Q + b2] < 0) {
                        cls[a2 * Q + b2] = 1;
                        stack.push_back({a2, b2});
                    }
                }
            }
            CyclicTriple rep{L.one(), L.element(al), L.element(be)};
            SnsParameters p = sns_parameters(rep);
            out[{p.k, p.s}] += 1;
        }
    return out;
}

}  // namespace sl2rep
