#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2rep/brute_force.hpp"
#include "sl2rep/extension.hpp"

namespace sl2rep {

// Assembly of the per-orbit representation data at even level r = 2*ell:
// stabilizer orders, the normal subgroup M_A = C(psi_A) E_A~, the counts
// theta_lambda / Delta_1 / Delta_2, dimensions, primitive tables and the
// primitive representation zeta polynomial.

inline uint64_t qpow(unsigned q, unsigned e) {
    uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) v *= q;
    return v;
}

struct StabilizerData {
    uint64_t c_sl_level = 0;   // |C_{SL2(o_ell)}(A)|
    uint64_t c_psiA = 0;       // |C_{SL2(o_2ell)}(psi_A)| = |C_S^ell(A~)|
    uint64_t c_psi_brA = 0;    // |C_{SL2(o_2ell)}(psi_[A])|
    uint64_t h_ell = 0;        // |h_A~^ell|
    uint64_t h_ellp = 0;       // |h_A~^ell'|
};

// exact stabilizer orders at r = 2*ell (ell' = ell)
inline StabilizerData stabilizers(const ExtensionContext& ctx) {
    if (ctx.r != 2 * ctx.ellp) throw std::domain_error("stabilizers: r must equal 2*ell");
    StabilizerData st;
    st.c_sl_level = centralizer_sl_order(ctx.level_triple(), ctx.L);
    st.c_psiA = st.c_sl_level * qpow(ctx.R.q(), 3 * ctx.ell);
    st.h_ell = h_set(ctx, ctx.ell).cardinality();
    st.h_ellp = h_set(ctx, ctx.ellp).cardinality();
    // |C(psi_[A])| = |C(psi_A)| |h^{ell'}| / |(pi^{ell'})|
    st.c_psi_brA = st.c_psiA * st.h_ellp / qpow(ctx.R.q(), ctx.r - ctx.ellp);
    return st;
}

// |C_{GL2(o_m)}(A)| = c * q^{2m-2} with c depending only on the residue type
inline uint64_t centralizer_gl_order_formula(OrbitType type, const RingSpec& spec) {
    uint64_t q = spec.q;
    uint64_t c = type == OrbitType::SS ? (q - 1) * (q - 1)
                 : type == OrbitType::IR ? (q * q - 1)
                                         : (q * q - q);
    return c * qpow(spec.q, 2 * spec.r - 2);
}

// |C_{SL2(o_r)}(psi_[A])| at any level r with floor(r/2) = level of the
// triple; reduces to c_type q^{2r-2} |h^{ell'}| / |det image over o_{ell'}|
inline uint64_t stabilizer_order_general(const RingSpec& level_spec, const CyclicTriple& t,
                                         unsigned r) {
    Ring L(level_spec);
    ExtensionContext ctx(level_spec, t, r);
    uint64_t cgl = centralizer_gl_order_formula(classify_type(t), level_spec.with_length(r));
    uint64_t det_im = det_image(t, L).size();
    uint64_t h_ellp = h_set(ctx, ctx.ellp).cardinality();
    return cgl * h_ellp / det_im;
}

// |E_A~| as a character count: the number of extensions of psi_[A] to
// C_S^ell(A~), which at r = 2 ell is |C_{SL2(o_ell)}(A)|
inline uint64_t extension_character_count(const ExtensionContext& ctx) {
    if (ctx.r != 2 * ctx.ellp)
        throw std::domain_error("extension_character_count: r must equal 2*ell");
    return centralizer_sl_order(ctx.level_triple(), ctx.L);
}

// theta_lambda = #{ (x, y) in o_ell^2 : lambda y = 0 and
//                   x^2 + beta x y - alpha y^2 = 1 (mod pi^ell) }
inline uint64_t theta_lambda(const ExtensionContext& ctx, Ring::code_t lambda_code) {
    if (ctx.r != 2 * ctx.ellp) throw std::domain_error("theta_lambda: r must equal 2*ell");
    const Ring& L = ctx.L;
    RingElem lam = ctx.R.element(lambda_code).project_to(L);
    CyclicTriple t = ctx.level_triple();
    uint64_t cnt = 0;
    for (Ring::code_t x = 0; x < L.size(); ++x)
        for (Ring::code_t y = 0; y < L.size(); ++y) {
            RingElem ye = L.element(y);
            if (!(lam * ye).is_zero()) continue;
            if (centralizer_det_form(t, L.element(x), ye) == L.one()) ++cnt;
        }
    return cnt;
}

struct IrrBlock {
    uint64_t dim = 0;
    uint64_t count = 0;
};

struct TableRow {
    // representative over o_ell, stored as codes so rows outlive ring handles
    RingSpec level;
    Ring::code_t rep_a = 0, rep_alpha = 0, rep_beta = 0;
    OrbitType type = OrbitType::SNS;
    SnsParameters params;
    bool computed_orbit = false;
    StabilizerData stab;
    uint64_t m_order = 0;
    unsigned iota = 1;  // [E_A~ : (pi^ell)]
    std::optional<uint64_t> theta;
    uint64_t delta1 = 0, delta2 = 0;
    uint64_t dim = 0;  // |SL2(o_2ell)| / |M_A|
    uint64_t orbit_size = 0;
    std::string e_provenance;

    CyclicTriple rep(const Ring& L) const {
        return {L.element(rep_a), L.element(rep_alpha), L.element(rep_beta)};
    }

    std::vector<IrrBlock> blocks() const {
        std::vector<IrrBlock> b;
        if (delta1) b.push_back({dim, delta1});
        if (delta2) b.push_back({2 * dim, delta2});
        return b;
    }
};

// the M_A data and Delta counts for one orbit representative at r = 2*ell
inline TableRow orbit_row(const RingSpec& level_spec, const OrbitClass& oc, unsigned r) {
    if (r % 2 != 0) throw std::domain_error("orbit_row: r must be even");
    ExtensionContext ctx(level_spec, oc.rep, r);
    TableRow row;
    row.level = level_spec;
    row.rep_a = oc.rep.a.code();
    row.rep_alpha = oc.rep.alpha.code();
    row.rep_beta = oc.rep.beta.code();
    row.type = classify_type(oc.rep);
    row.params = sns_parameters(oc.rep);
    row.computed_orbit = oc.computed;
    row.stab = stabilizers(ctx);

    std::vector<Ring::code_t> e_reps;
    if (!ctx.R.char_two() && r < 4 * ctx.R.e()) {
        // below R_o the construction is the worked small-level convention
        // M_A := C(psi_[A]), i.e. the full h-set acts as the extension set
        if (r != 2) throw std::domain_error("orbit_row: char-0 level out of regime");
        e_reps = h_coset_reps(h_set(ctx, ctx.ell), ctx.R, ctx.ell);
        row.e_provenance = "convention-r2";
    } else {
        ExtensionSet E = e_set(ctx);
        e_reps = E.reps;
        row.e_provenance = E.provenance;
    }
    row.iota = (unsigned)e_reps.size();
    row.m_order = row.stab.c_psiA * row.iota;
    uint64_t G = sl2_order(ctx.R.spec());
    row.dim = G / row.m_order;
    row.orbit_size = G / row.stab.c_psi_brA;

    uint64_t kell = qpow(ctx.R.q(), 3 * ctx.ell);
    if (row.iota == 2) {
        Ring::code_t lam = e_reps[0] ? e_reps[0] : e_reps[1];
        uint64_t th = theta_lambda(ctx, lam);
        row.theta = th;
        uint64_t num1 = 2 * th * row.m_order;
        uint64_t num2 = (row.stab.c_sl_level - th) * row.m_order;
        if (num1 % row.stab.c_psi_brA || num2 % (2 * row.stab.c_psi_brA))
            throw std::logic_error("orbit_row: non-integral Delta counts");
        row.delta1 = num1 / row.stab.c_psi_brA;
        row.delta2 = num2 / (2 * row.stab.c_psi_brA);
    } else {
        // M_A / K^ell abelian (iota = 1 always; iota = 4 by the index-4
        // dichotomy): all constituents above psi_[A] are one-dimensional
        uint64_t num = row.m_order * row.m_order;
        if (num % (kell * row.stab.c_psi_brA))
            throw std::logic_error("orbit_row: non-integral Delta_1");
        row.delta1 = num / (kell * row.stab.c_psi_brA);
        row.delta2 = 0;
    }
    return row;
}

struct PrimitiveTable {
    RingSpec ring;
    unsigned r = 0;
    std::vector<TableRow> rows;
};

inline PrimitiveTable primitive_table(const RingSpec& spec, unsigned r) {
    if (r % 2 != 0 || r < 2)
        throw std::domain_error(
            "primitive_table: odd levels are outside the constructive scope; "
            "use the brute-force oracle");
    PrimitiveTable tab;
    tab.ring = spec;
    tab.r = r;
    RingSpec level_spec = spec.with_length(r / 2);
    Ring L(level_spec);
    for (const OrbitClass& oc : orbit_representatives(L))
        tab.rows.push_back(orbit_row(level_spec, oc, r));
    return tab;
}

using ZetaPolynomial = std::map<uint64_t, uint64_t>;  // dimension -> count

inline ZetaPolynomial table_zeta(const PrimitiveTable& tab) {
    ZetaPolynomial z;
    for (const TableRow& row : tab.rows)
        for (const IrrBlock& b : row.blocks()) z[b.dim] += b.count;
    return z;
}

inline ZetaPolynomial primitive_zeta(const RingSpec& spec, unsigned r) {
    return table_zeta(primitive_table(spec, r));
}

// Plancherel mass of the primitive slice: |SL2(o_r)| - |SL2(o_{r-1})|
inline uint64_t primitive_mass(const RingSpec& spec, unsigned r) {
    return sl2_order(spec.with_length(r)) - sl2_order(spec.with_length(r - 1));
}

inline uint64_t zeta_mass(const ZetaPolynomial& z) {
    uint64_t m = 0;
    for (auto& [dim, count] : z) m += count * dim * dim;
    return m;
}

// descending pretty form, e.g. "2X^24 + 2X^12 + 6X^8 + 20X^6 + 16X^3"
inline std::string format_zeta(const ZetaPolynomial& z) {
    std::string out;
    for (auto it = z.rbegin(); it != z.rend(); ++it) {
        if (!out.empty()) out += " + ";
        if (it->second != 1) out += std::to_string(it->second);
        out += "X";
        if (it->first != 1) out += "^" + std::to_string(it->first);
    }
    return out.empty() ? "0" : out;
}

// per-type slice of the primitive zeta polynomial
inline ZetaPolynomial zeta_contribution(const PrimitiveTable& tab, OrbitType type) {
    ZetaPolynomial z;
    for (const TableRow& row : tab.rows)
        if (row.type == type)
            for (const IrrBlock& b : row.blocks()) z[b.dim] += b.count;
    return z;
}

struct NMax {
    uint64_t dim = 0;
    uint64_t count = 0;
};

// n^max over the full group at even r: attained on the primitive slice, since
// every irreducible of SL2(o_{r-1}) has strictly smaller dimension
inline NMax nmax_even(const RingSpec& spec, unsigned r) {
    ZetaPolynomial z = primitive_zeta(spec, r);
    NMax m;
    m.dim = z.rbegin()->first;
    m.count = z.rbegin()->second;
    return m;
}

struct CompareResult {
    bool distinguished = false;
    uint64_t witness_dim = 0;
    uint64_t count_a = 0, count_b = 0;
    ZetaPolynomial zeta_a, zeta_b;
};

inline CompareResult compare_zetas(const ZetaPolynomial& a, const ZetaPolynomial& b) {
    CompareResult res;
    res.zeta_a = a;
    res.zeta_b = b;
    std::map<uint64_t, std::pair<uint64_t, uint64_t>> merged;
    for (auto& [d, c] : a) merged[d].first = c;
    for (auto& [d, c] : b) merged[d].second = c;
    for (auto it = merged.rbegin(); it != merged.rend(); ++it)
        if (it->second.first != it->second.second) {
            res.distinguished = true;
            res.witness_dim = it->first;
            res.count_a = it->second.first;
            res.count_b = it->second.second;
            break;
        }
    return res;
}

// dimensions of all irreducibles of SL2(o_r), via the enumerated group
inline ZetaPolynomial all_dims_zeta(const RingSpec& spec, uint64_t cap) {
    Ring R(spec);
    FiniteGroup G = enumerate_sl2(R, cap);
    CharacterTable T = character_table(G, /*lift_values=*/false);
    ZetaPolynomial z;
    for (uint64_t d : T.dims) z[d] += 1;
    return z;
}

// full zeta polynomial, assembled as P_{G_r} = P^pr_r + P_{G_{r-1}}: even
// levels from the construction, the odd base level from the oracle
inline ZetaPolynomial full_zeta(const RingSpec& spec, unsigned r, uint64_t cap = 200000) {
    if (r == 0) return {{1, 1}};
    if (r % 2 == 1) return all_dims_zeta(spec.with_length(r), cap);
    ZetaPolynomial z =
        (r >= 2) ? all_dims_zeta(spec.with_length(r - 1), cap) : ZetaPolynomial{};
    for (auto& [d, c] : primitive_zeta(spec, r)) z[d] += c;
    return z;
}

inline CompareResult compare_group_algebras(const RingSpec& a, const RingSpec& b, unsigned r,
                                            uint64_t cap = 200000) {
    if (a.q != b.q) throw std::invalid_argument("compare: rings must share the residue field");
    return compare_zetas(full_zeta(a, r, cap), full_zeta(b, r, cap));
}

// Odd levels carry no constructed table; the dimension and count windows are
// still exact.  dim in [ |G| / (q^5 |C(psi_A)|), |G| / |C_S^ell(A~)| ] and the
// irreducible count above psi_[A] lies in the stated window.
struct OddLevelBounds {
    uint64_t dim_lo = 0, dim_hi = 0;
    uint64_t count_lo = 0, count_hi = 0;
    uint64_t stab_order = 0;
};

inline OddLevelBounds odd_level_bounds(const RingSpec& level_spec, const CyclicTriple& t,
                                       unsigned r) {
    ExtensionContext ctx(level_spec, t, r);
    Ring L(level_spec);
    Ring Lell(level_spec.with_length(ctx.ell));
    uint64_t G = sl2_order(level_spec.with_length(r));
    uint64_t q = level_spec.q;
    uint64_t cgl = centralizer_gl_order_formula(classify_type(t), level_spec.with_length(r));
    uint64_t det_ellp = det_image(t, L).size();
    // det image over o_ell of the canonical lift
    CyclicTriple t_ell{t.a.lift_to(Lell), t.alpha.lift_to(Lell), t.beta.lift_to(Lell)};
    uint64_t det_ell = det_image(t_ell, Lell).size();
    uint64_t c_psiA = cgl * qpow(q, 2 * (r - ctx.ellp)) / (det_ellp * qpow(q, r - ctx.ellp));
    uint64_t c_S_ell = cgl * qpow(q, 2 * (r - ctx.ell)) / (det_ell * qpow(q, r - ctx.ell));
    uint64_t h_ellp = h_set(ctx, ctx.ellp).cardinality();
    uint64_t kell = qpow(q, 3 * (r - ctx.ell));
    OddLevelBounds b;
    b.dim_lo = (G + qpow(q, 5) * c_psiA - 1) / (qpow(q, 5) * c_psiA);
    b.dim_hi = G / c_S_ell;
    uint64_t lo_num = c_S_ell * c_S_ell * qpow(q, ctx.ell);
    uint64_t lo_den = c_psiA * h_ellp * kell;
    b.count_lo = (lo_num + lo_den - 1) / lo_den;
    b.count_hi = c_psiA * qpow(q, ctx.ell + 10) / (h_ellp * kell);
    b.stab_order = c_psiA * h_ellp / qpow(q, r - ctx.ellp);
    return b;
}

struct NMaxResult {
    uint64_t dim = 0;
    uint64_t count = 0;
    std::string source;  // "construction" or "oracle"
};

inline NMaxResult nmax(const RingSpec& spec, unsigned r, bool allow_brute = false,
                       uint64_t cap = 200000) {
    NMaxResult res;
    if (r % 2 == 0 && r >= 2) {
        NMax m = nmax_even(spec, r);
        res.dim = m.dim;
        res.count = m.count;
        res.source = "construction";
        return res;
    }
    if (!allow_brute)
        throw std::domain_error("nmax: odd level needs the brute-force oracle (--brute)");
    ZetaPolynomial z = all_dims_zeta(spec.with_length(r), cap);
    res.dim = z.rbegin()->first;
    res.count = z.rbegin()->second;
    res.source = "oracle";
    return res;
}

}  // namespace sl2rep
