#pragma once

#include <string>

#include <json.hpp>

#include "sl2rep/brute_force.hpp"
#include "sl2rep/clifford.hpp"

namespace sl2rep {

// JSON / CSV emission.  Elements serialize as little-endian digit vectors
// over the residue field; matrices as 4-tuples of digit vectors; triples as
// (a, alpha, beta).

using json = nlohmann::json;

inline json elem_json(const RingElem& x) { return json(x.digits()); }

inline std::string elem_str(const RingElem& x) {
    std::string out;
    auto ds = x.digits();
    for (size_t i = 0; i < ds.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ds[i]);
    }
    return out;
}

inline json triple_json(const CyclicTriple& t) {
    return json{{"a", elem_json(t.a)}, {"alpha", elem_json(t.alpha)}, {"beta", elem_json(t.beta)}};
}

inline std::string triple_str(const CyclicTriple& t) {
    return "(" + elem_str(t.a) + ";" + elem_str(t.alpha) + ";" + elem_str(t.beta) + ")";
}

inline json mat_json(const Mat2& m) {
    return json{{"a", elem_json(m.a)}, {"b", elem_json(m.b)}, {"c", elem_json(m.c)},
                {"d", elem_json(m.d)}};
}

inline json orbit_json(const RingSpec& level_spec, const OrbitClass& oc, unsigned r) {
    Ring L(level_spec);
    uint64_t stab = stabilizer_order_general(level_spec, oc.rep, r);
    json j{{"representative", triple_json(oc.rep)},
           {"type", orbit_type_name(oc.type)},
           {"orbit_size", sl2_order(level_spec.with_length(r)) / stab},
           {"stabilizer_order", stab},
           {"provenance", oc.computed ? "computed" : "structured"}};
    if (level_spec.char_two()) {
        j["k"] = oc.params.k;
        j["s"] = oc.params.s;
    }
    return j;
}

inline json extension_json(const ExtensionContext& ctx, const ExtensionSet& E) {
    json cosets = json::array();
    for (Ring::code_t c : E.reps) cosets.push_back(elem_json(ctx.R.element(c)));
    return json{{"triple", triple_json(ctx.level_triple())},
                {"r", ctx.r},
                {"regime", E.provenance},
                {"cosets", cosets},
                {"index_over_pi_ell", E.index_over_pi_ell()}};
}

inline json zeta_json(const ZetaPolynomial& z) {
    json j = json::object();
    for (auto& [dim, count] : z) j[std::to_string(dim)] = count;
    return j;
}

inline json row_json(const TableRow& row) {
    Ring L(row.level);
    json j{{"representative", triple_json(row.rep(L))},
           {"type", orbit_type_name(row.type)},
           {"centralizer_sl_level", row.stab.c_sl_level},
           {"stabilizer_psi_A", row.stab.c_psiA},
           {"stabilizer_psi_brA", row.stab.c_psi_brA},
           {"M_A_order", row.m_order},
           {"index_E_over_pi_ell", row.iota},
           {"delta1", row.delta1},
           {"delta2", row.delta2},
           {"dim", row.dim},
           {"orbit_size", row.orbit_size},
           {"e_provenance", row.e_provenance}};
    if (row.level.char_two()) {
        j["k"] = row.params.k;
        j["s"] = row.params.s;
    }
    if (row.theta) j["theta"] = *row.theta;
    return j;
}

inline json table_json(const PrimitiveTable& tab) {
    json rows = json::array();
    for (const TableRow& row : tab.rows) rows.push_back(row_json(row));
    return json{{"ring", tab.ring.str()},
                {"r", tab.r},
                {"rows", rows},
                {"zeta", zeta_json(table_zeta(tab))}};
}

inline std::string table_csv(const PrimitiveTable& tab) {
    std::string out =
        "representative,type,k,s,centralizer_sl_level,M_A_order,theta,delta1,delta2,dim,"
        "orbit_size\n";
    Ring L(tab.ring.with_length(tab.r / 2));
    for (const TableRow& row : tab.rows) {
        out += "\"" + triple_str(row.rep(L)) + "\"," + orbit_type_name(row.type) + ",";
        if (row.level.char_two())
            out += std::to_string(row.params.k) + "," + std::to_string(row.params.s);
        else
            out += ",";
        out += "," + std::to_string(row.stab.c_sl_level) + "," + std::to_string(row.m_order) +
               ",";
        if (row.theta) out += std::to_string(*row.theta);
        out += "," + std::to_string(row.delta1) + "," + std::to_string(row.delta2) + "," +
               std::to_string(row.dim) + "," + std::to_string(row.orbit_size) + "\n";
    }
    return out;
}

inline json character_table_json(const FiniteGroup& G, const CharacterTable& T) {
    json classes = json::array();
    for (uint32_t c = 0; c < T.classes.count(); ++c)
        classes.push_back(json{{"representative", mat_json(G.mat(T.classes.reps[c]))},
                               {"size", T.classes.sizes[c]}});
    json j{{"group_order", T.group_order},
           {"modulus", T.m},
           {"classes", classes},
           {"dims", T.dims}};
    if (T.values_lifted) j["values"] = T.values;
    return j;
}

}  // namespace sl2rep
