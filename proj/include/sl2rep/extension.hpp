#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2rep/orbits.hpp"

namespace sl2rep {

// The extension set E_A~ = { lambda in h^ell : psi_[A] extends to
// C_S^ell(A~)<e_lambda> }, its brute-force characterization via the sets
// E_{lambda,A~} / E°_{lambda,A~}, and the fast closed-form characterizations
// for characteristic zero and characteristic two.

// Per-triple lift data: the companion triple at level ell' together with its
// canonical zero-extended lift to o_r and the derived invariants.
class ExtensionContext {
public:
    Ring R;  // o_r
    Ring L;  // o_{ell'}
    unsigned r, ell, ellp, eps;
    unsigned k = 0, s = 1;
    bool w_valid = false;

    ExtensionContext(const RingSpec& level_spec, const CyclicTriple& t, unsigned target_r)
        : R(level_spec.with_length(target_r)),
          L(level_spec),
          r(target_r),
          ell((target_r + 1) / 2),
          ellp(target_r / 2) {
        if (L.r() != ellp)
            throw std::invalid_argument("triple level must equal floor(r/2)");
        eps = (r % 2 == 0) ? 1 : 0;
        aL_ = t.a.code();
        alphaL_ = t.alpha.code();
        betaL_ = t.beta.code();
        a_ = R.lift_code(aL_, L);
        alpha_ = R.lift_code(alphaL_, L);
        beta_ = R.lift_code(betaL_, L);
        SnsParameters p = sns_parameters(t);
        k = p.k;
        s = p.s;
        if (R.char_two() && s < k) {
            // alpha~ = w1^2 + pi^s w2^2 exactly: even/odd digit split of the
            // canonical lift (the decomposition exists precisely when s < k)
            std::vector<unsigned> ds = R.digits_code(alpha_);
            std::vector<unsigned> even(R.r(), 0), odd_shift(R.r(), 0);
            for (unsigned i = 0; i < R.r(); ++i) {
                if (i % 2 == 0) even[i] = ds[i];
                else if (i >= s) odd_shift[i - s] = ds[i];
            }
            w1_ = R.sqrt_code(R.from_digits_code(even));
            w2_ = R.sqrt_code(R.from_digits_code(odd_shift));
            w_valid = true;
        }
    }
    // custom-lift variant (testing: E-data must not depend on the lift choice);
    // the fast char-2 path is disabled when the lift is not the canonical one
    ExtensionContext(const RingSpec& level_spec, const CyclicTriple& t, unsigned target_r,
                     Ring::code_t alpha_lift, Ring::code_t beta_lift)
        : ExtensionContext(level_spec, t, target_r) {
        if (R.project_code(alpha_lift, L) != alphaL_ || R.project_code(beta_lift, L) != betaL_)
            throw std::invalid_argument("custom lifts must reduce to the triple");
        alpha_ = alpha_lift;
        beta_ = beta_lift;
        w_valid = false;
    }
    ExtensionContext(const ExtensionContext&) = delete;
    ExtensionContext& operator=(const ExtensionContext&) = delete;

    RingElem a_lift() const { return R.element(a_); }
    RingElem alpha_lift() const { return R.element(alpha_); }
    RingElem beta_lift() const { return R.element(beta_); }
    RingElem w1() const { return R.element(w1_); }
    RingElem w2() const { return R.element(w2_); }
    CyclicTriple level_triple() const {
        return {L.element(aL_), L.element(alphaL_), L.element(betaL_)};
    }
    CyclicTriple lifted_triple() const {
        return {R.element(a_), R.element(alpha_), R.element(beta_)};
    }

    RingElem g_eval(const RingElem& x, const RingElem& y) const {
        return x * x + beta_lift() * x * y - alpha_lift() * y * y;
    }
    RingElem f_eval(const RingElem& lam, const RingElem& x, const RingElem& y) const {
        RingElem one = R.one();
        return x * y * lam * (beta_lift() - lam) - alpha_lift() * lam * y * y +
               lam * (x * x - one);
    }

    // per-lambda valuation data
    unsigned i_of(Ring::code_t lam) const { return R.val_code(lam); }
    unsigned j_of(Ring::code_t lam) const {
        return std::min(R.val_code(R.add_code(lam, beta_)), ellp);
    }
    int delta_of(Ring::code_t lam) const {
        unsigned i = i_of(lam), j = j_of(lam);
        int m = std::max((int)ell - (int)i, (int)ell - (int)k);
        m = std::max(m, (int)((ell - s + 1) / 2));
        return (int)j - (int)s - m;
    }

private:
    Ring::code_t aL_ = 0, alphaL_ = 0, betaL_ = 0;
    Ring::code_t a_ = 0, alpha_ = 0, beta_ = 0;
    Ring::code_t w1_ = 0, w2_ = 0;
};

// h_A~^j = { x : 2x = 0 and x(x + beta~) = 0 mod pi^j } as a union of at most
// two ideal cosets
struct HSet {
    unsigned j = 0;
    unsigned r = 0, q = 0;
    // cosets offset + (pi^pow)
    std::vector<std::pair<Ring::code_t, unsigned>> pieces;

    uint64_t cardinality() const {
        uint64_t c = 0;
        for (auto& [off, pow] : pieces) {
            uint64_t piece = 1;
            for (unsigned i = 0; i < r - pow; ++i) piece *= q;
            c += piece;
        }
        return c;
    }
};

inline HSet h_set(const ExtensionContext& ctx, unsigned j) {
    const Ring& R = ctx.R;
    HSet h;
    h.j = j;
    h.r = R.r();
    h.q = R.q();
    unsigned vb = R.val_code(ctx.beta_lift().code());
    unsigned ceil_j2 = (j + 1) / 2;
    std::vector<std::pair<Ring::code_t, unsigned>> S;
    if (vb >= ceil_j2) {
        S.push_back({0, ceil_j2});
    } else {
        S.push_back({0, j - vb});
        S.push_back({ctx.beta_lift().code(), j - vb});
    }
    if (R.char_two()) {
        h.pieces = S;
        return h;
    }
    // intersect with the 2x = 0 condition, i.e. (pi^{max(0, j-e)})
    unsigned c = j > R.e() ? j - R.e() : 0;
    for (auto& [off, pow] : S) {
        if (off == 0) {
            h.pieces.push_back({0, std::max(pow, c)});
        } else if (R.val_code(off) >= c) {
            h.pieces.push_back({off, std::max(pow, c)});
        }
    }
    return h;
}

inline bool h_contains(const HSet& h, const Ring& R, Ring::code_t x) {
    for (auto& [off, pow] : h.pieces)
        if (R.val_code(R.sub_code(x, off)) >= pow) return true;
    return false;
}

// closed-form cardinality (the ceil(j/2) branch; a ceil(ell'/2) variant is
// sometimes quoted, but only this one matches enumeration when j = ell > ell'):
// char 0, r >= 4e:  q^{r-j+m0},  m0 = min(e, val(beta~));
// char 2:           2 q^{r-j+val(beta~)}  if val(beta~) < ceil(j/2),
//                   q^{r-ceil(j/2)}       otherwise.
inline uint64_t h_cardinality_formula(const ExtensionContext& ctx, unsigned j) {
    const Ring& R = ctx.R;
    unsigned vb = R.val_code(ctx.beta_lift().code());
    auto qpow = [&](unsigned e_) {
        uint64_t v = 1;
        for (unsigned i = 0; i < e_; ++i) v *= R.q();
        return v;
    };
    if (R.char_two()) {
        if (vb < (j + 1) / 2) return 2 * qpow(R.r() - j + vb);
        return qpow(R.r() - (j + 1) / 2);
    }
    unsigned m0 = std::min(R.e(), vb);
    return qpow(R.r() - j + m0);
}

// canonical representatives of the (pi^m) cosets inside the h-set
inline std::vector<Ring::code_t> h_coset_reps(const HSet& h, const Ring& R, unsigned m) {
    std::vector<Ring::code_t> out;
    for (auto& [off, pow] : h.pieces) {
        if (pow >= m) {
            // single coset: normalize the offset mod pi^m
            Ring sub(R.spec().with_length(m));
            out.push_back(R.lift_code(R.project_code(off, sub), sub));
        } else {
            Ring sub(R.spec().with_length(m - pow));
            for (Ring::code_t t = 0; t < sub.size(); ++t) {
                Ring::code_t v =
                    R.add_code(off, R.mul_code(R.pi_pow_code(pow), R.lift_code(t, sub)));
                Ring subm(R.spec().with_length(m));
                out.push_back(R.lift_code(R.project_code(v, subm), subm));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ExtensionSet {
    std::vector<Ring::code_t> reps;  // canonical coset reps of (pi^ell), sorted, 0 included
    std::string provenance;          // "fast-char0", "fast-char2", "brute"
    unsigned index_over_pi_ell() const { return (unsigned)reps.size(); }
};

// membership of a single (pi^ell)-coset in E_A~, by the restricted sweep:
// lambda y in (pi^ell) forces val(y) >= ell - val(lambda), and representatives
// of x mod pi^{r-val(lambda)}, y mod pi^{r-val(lambda)} decide psi(f) exactly
inline bool e_contains_brute(const ExtensionContext& ctx, Ring::code_t lam) {
    const Ring& R = ctx.R;
    unsigned i = R.val_code(lam);
    if (i >= ctx.ellp) return true;  // h^ell intersect (pi^{ell'}) always extends
    RingElem lambda = R.element(lam);
    Ring xring(R.spec().with_length(R.r() - i));
    Ring tring(R.spec().with_length(R.r() - ctx.ell));
    RingElem shift = R.pi_pow(ctx.ell - i);
    for (Ring::code_t xc = 0; xc < xring.size(); ++xc) {
        RingElem x = R.element(R.lift_code(xc, xring));
        for (Ring::code_t tc = 0; tc < tring.size(); ++tc) {
            RingElem y = shift * R.element(R.lift_code(tc, tring));
            RingElem g1 = ctx.g_eval(x, y) - R.one();
            if (g1.val() < ctx.ell) continue;
            if (R.psi_exp_code(ctx.f_eval(lambda, x, y).code()) != 0) return false;
        }
    }
    return true;
}

// unrestricted validation sweep over all of o_r x o_r (small r only)
inline bool e_contains_brute_unrestricted(const ExtensionContext& ctx, Ring::code_t lam) {
    const Ring& R = ctx.R;
    RingElem lambda = R.element(lam);
    for (Ring::code_t xc = 0; xc < R.size(); ++xc)
        for (Ring::code_t yc = 0; yc < R.size(); ++yc) {
            RingElem x = R.element(xc), y = R.element(yc);
            if ((lambda * y).val() < ctx.ell) continue;
            if ((ctx.g_eval(x, y) - R.one()).val() < ctx.ell) continue;
            if (R.psi_exp_code(ctx.f_eval(lambda, x, y).code()) != 0) return false;
        }
    return true;
}

inline ExtensionSet e_brute(const ExtensionContext& ctx) {
    ExtensionSet E;
    E.provenance = "brute";
    HSet h = h_set(ctx, ctx.ell);
    for (Ring::code_t lam : h_coset_reps(h, ctx.R, ctx.ell))
        if (e_contains_brute(ctx, lam)) E.reps.push_back(lam);
    return E;
}

// fast characterizations; nullopt marks an unsupported regime
inline std::optional<ExtensionSet> e_fast(const ExtensionContext& ctx) {
    const Ring& R = ctx.R;
    ExtensionSet E;
    if (!R.char_two()) {
        unsigned e = R.e();
        bool beta_unit = R.is_unit_code(ctx.beta_lift().code());
        if (beta_unit && ctx.r > 2 * e) {
            E.reps = {0};
            E.provenance = "fast-char0";
            return E;
        }
        if (!beta_unit && ctx.r > 4 * e) {
            // E = (pi^{ell'})
            if (ctx.ell == ctx.ellp) {
                E.reps = {0};
            } else {
                Ring tr(R.spec().with_length(ctx.ell - ctx.ellp));
                for (Ring::code_t t = 0; t < tr.size(); ++t)
                    E.reps.push_back(
                        R.mul_code(R.pi_pow_code(ctx.ellp), R.lift_code(t, tr)));
                std::sort(E.reps.begin(), E.reps.end());
            }
            E.provenance = "fast-char0";
            return E;
        }
        if (!beta_unit && ctx.r == 4 * e && e == 1) {
            // dichotomy at r = 4e: the extra coset pi^{ell-1} (xi~ w^2)^{-1}
            // appears iff alpha = (v~/w)^2 + (1/(xi~ w^3))^2 mod pi
            RingElem two = R.from_int(2);
            RingElem w = R.element(R.div_pi_pow_code(two.code(), e));
            RingElem xit = R.element(R.fq_section(R.xi()));
            RingElem v = R.element(R.div_pi_pow_code(ctx.beta_lift().code(), 1));
            RingElem t1 = v * w.inv();
            RingElem t2 = (xit * w * w * w).inv();
            unsigned target = (t1 * t1 + t2 * t2).residue();
            E.reps = {0};
            if (ctx.alpha_lift().residue() == target) {
                RingElem lam = R.pi_pow(ctx.ell - 1) * (xit * w * w).inv();
                Ring subm(R.spec().with_length(ctx.ell));
                E.reps.push_back(R.lift_code(R.project_code(lam.code(), subm), subm));
                std::sort(E.reps.begin(), E.reps.end());
            }
            E.provenance = "fast-char0";
            return E;
        }
        return std::nullopt;  // r <= 2e, or 2e < r < 4e with beta non-invertible
    }
    // characteristic two: digit conditions (I), (II), (III)
    E.provenance = "fast-char2";
    HSet h = h_set(ctx, ctx.ell);
    unsigned shift = ctx.ell - ctx.ellp;  // 1 - eps
    for (Ring::code_t lam : h_coset_reps(h, ctx.R, ctx.ell)) {
        unsigned i = R.val_code(lam);
        if (i >= ctx.ellp) {
            E.reps.push_back(lam);
            continue;
        }
        // (I): lambda in pi^{ell-ell'} o^2 mod (pi^{ell'})
        bool ok = true;
        for (unsigned p = 0; p < ctx.ellp && ok; ++p)
            if ((p % 2) != (shift % 2) && R.digit_code(lam, p) != 0) ok = false;
        if (!ok) continue;
        // (II): 2 j + i = 2 ell' + s - eps
        unsigned j = ctx.j_of(lam);
        if (2 * j + i != 2 * ctx.ellp + ctx.s - ctx.eps) continue;
        // (III): for j < ell', s < k, delta >= 0:
        //        xi u1^2 u2^2 = u1 w2^2 mod (pi^{2 delta + 1})
        if (j < ctx.ellp && ctx.s < ctx.k) {
            int delta = ctx.delta_of(lam);
            if (delta >= 0) {
                if (!ctx.w_valid) throw std::logic_error("missing w2 witness with s < k");
                RingElem u1 = R.element(R.div_pi_pow_code(lam, i));
                RingElem u2 =
                    R.element(R.div_pi_pow_code(R.add_code(lam, ctx.beta_lift().code()), j));
                RingElem xit = R.element(R.fq_section(R.xi()));
                RingElem lhs = xit * u1 * u1 * u2 * u2;
                RingElem rhs = u1 * ctx.w2() * ctx.w2();
                if ((lhs - rhs).val() < (unsigned)(2 * delta + 1)) continue;
            }
        }
        E.reps.push_back(lam);
    }
    return E;
}

inline ExtensionSet e_set(const ExtensionContext& ctx) {
    if (auto fast = e_fast(ctx)) return *fast;
    return e_brute(ctx);
}

// distinct valuations below ell' occurring in E (the proof of the q^3 bound
// shows there are at most two)
inline std::vector<unsigned> e_valuations_below_ellp(const ExtensionContext& ctx,
                                                     const ExtensionSet& E) {
    std::vector<unsigned> vals;
    for (Ring::code_t lam : E.reps) {
        unsigned v = ctx.R.val_code(lam);
        if (v < ctx.ellp) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

// largest [M : (pi^ell)] over additive subgroups (pi^ell) <= M <= E; the
// candidates M_chi of the stabilizer bound all arise this way
inline uint64_t max_subgroup_index(const ExtensionContext& ctx, const ExtensionSet& E) {
    const Ring& R = ctx.R;
    Ring subm(R.spec().with_length(ctx.ell));
    auto norm = [&](Ring::code_t x) { return R.lift_code(R.project_code(x, subm), subm); };
    std::vector<Ring::code_t> reps = E.reps;
    size_t nrep = reps.size();
    if (nrep > 20) throw std::domain_error("max_subgroup_index: extension set too large");
    std::vector<std::vector<unsigned>> add(nrep, std::vector<unsigned>(nrep, 0));
    auto find_rep = [&](Ring::code_t v) -> int {
        auto it = std::lower_bound(reps.begin(), reps.end(), v);
        if (it == reps.end() || *it != v) return -1;
        return (int)(it - reps.begin());
    };
    // addition table on coset representatives (closed only inside subgroups)
    std::vector<std::vector<int>> sum(nrep, std::vector<int>(nrep, -1));
    for (size_t a = 0; a < nrep; ++a)
        for (size_t b = 0; b < nrep; ++b)
            sum[a][b] = find_rep(norm(R.add_code(reps[a], reps[b])));
    uint64_t best = 1;
    for (uint32_t mask = 1; mask < (1u << nrep); ++mask) {
        if (!(mask & 1)) continue;  // must contain 0 (reps[0] == 0 after sorting)
        bool closed = true;
        for (size_t a = 0; a < nrep && closed; ++a) {
            if (!((mask >> a) & 1)) continue;
            for (size_t b = a; b < nrep && closed; ++b) {
                if (!((mask >> b) & 1)) continue;
                int c = sum[a][b];
                if (c < 0 || !((mask >> c) & 1)) closed = false;
            }
        }
        if (closed) best = std::max<uint64_t>(best, (uint64_t)__builtin_popcount(mask));
    }
    return best;
}

// digit invariants of an SNS triple: w(A) = val(beta)
// (with ell' for beta = 0) and the odd depth of alpha
inline std::pair<unsigned, unsigned> odd_depth_params(const CyclicTriple& t) {
    const Ring& L = t.ring();
    if (!L.char_two()) throw std::domain_error("odd-depth parameters are char-2 quantities");
    unsigned w = std::min(t.beta.val(), L.r());
    unsigned depth = w / 2;
    for (unsigned i = 0; i < w / 2; ++i)
        if (t.alpha.digit(2 * i + 1) != 0) {
            depth = i;
            break;
        }
    return {w, depth};
}

}  // namespace sl2rep
