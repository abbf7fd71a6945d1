// Batch front end: orbit tables, extension sets, primitive tables, zeta
// polynomials, n^max statistics, group-algebra comparison and oracle
// verification for SL2 over finite chain rings of even residue characteristic.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "sl2rep/json_io.hpp"

using namespace sl2rep;

namespace {

struct Options {
    std::string ring, ring_b;
    unsigned level = 0;
    bool as_json = false, as_csv = false, brute = false;
    uint64_t cap = 200000;
    uint64_t seed = 1;
    std::string triple;
};

RingSpec parse_ring(const std::string& s, unsigned level) {
    RingSpec spec = RingSpec::parse(s);
    if (level) spec.r = level;
    return spec;
}

CyclicTriple parse_triple(const Ring& L, const std::string& s) {
    std::vector<std::vector<unsigned>> parts(1);
    std::vector<unsigned>* cur = &parts[0];
    unsigned acc = 0;
    bool have = false;
    for (char ch : s) {
        if (ch == ';') {
            if (have) cur->push_back(acc);
            parts.emplace_back();
            cur = &parts.back();
            acc = 0;
            have = false;
        } else if (ch == ',') {
            if (have) cur->push_back(acc);
            acc = 0;
            have = false;
        } else if (isdigit((unsigned char)ch)) {
            acc = 10 * acc + unsigned(ch - '0');
            have = true;
        } else if (!isspace((unsigned char)ch) && ch != '(' && ch != ')') {
            throw std::invalid_argument("bad triple syntax: " + s);
        }
    }
    if (have) cur->push_back(acc);
    if (parts.size() != 3) throw std::invalid_argument("triple needs three components a;alpha;beta");
    CyclicTriple t{L.from_digits(parts[0]), L.from_digits(parts[1]), L.from_digits(parts[2])};
    if (!t.a.is_unit()) throw std::invalid_argument("triple component a must be a unit");
    return t;
}

int cmd_ring_info(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    Ring R(spec);
    if (opt.as_json) {
        json j{{"ring", spec.str()},
               {"kind", spec.char_two() ? "char-two" : "char-zero"},
               {"q", R.q()},
               {"r", R.r()},
               {"e", spec.char_two() ? json() : json(R.e())},
               {"size", R.size()},
               {"units", R.unit_count()},
               {"psi_modulus", R.psi_modulus()},
               {"xi", R.xi()},
               {"sl2_order", sl2_order(spec)},
               {"gl2_order", gl2_order(spec)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("ring %s: q=%u r=%u size=%llu units=%llu\n", spec.str().c_str(), R.q(), R.r(),
                (unsigned long long)R.size(), (unsigned long long)R.unit_count());
    std::printf("psi values in mu_%llu, xi = %u\n", (unsigned long long)R.psi_modulus(), R.xi());
    std::printf("|SL2| = %llu, |GL2| = %llu\n", (unsigned long long)sl2_order(spec),
                (unsigned long long)gl2_order(spec));
    return 0;
}

int cmd_orbits(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    unsigned r = spec.r;
    RingSpec level_spec = spec.with_length(r / 2);
    if (r < 2) throw std::domain_error("orbits: need level r >= 2");
    Ring L(level_spec);
    auto reps = orbit_representatives(L);
    if (opt.as_json) {
        json rows = json::array();
        for (auto& oc : reps) rows.push_back(orbit_json(level_spec, oc, r));
        std::cout << json{{"ring", spec.str()}, {"r", r}, {"orbits", rows}}.dump(2) << "\n";
        return 0;
    }
    std::printf("%zu orbits of cyclic characters of K^%u under SL2(%s):\n", reps.size(),
                (r + 1) / 2, spec.str().c_str());
    for (auto& oc : reps) {
        uint64_t stab = stabilizer_order_general(level_spec, oc.rep, r);
        std::printf("  %-14s %-3s", triple_str(oc.rep).c_str(), orbit_type_name(oc.type));
        if (level_spec.char_two()) std::printf(" k=%u s=%u", oc.params.k, oc.params.s);
        std::printf("  orbit=%llu stab=%llu%s\n",
                    (unsigned long long)(sl2_order(spec) / stab), (unsigned long long)stab,
                    oc.computed ? " [computed]" : "");
    }
    return 0;
}

int cmd_extension_set(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    unsigned r = spec.r;
    if (r < 2) throw std::domain_error("extension-set: need level r >= 2");
    RingSpec level_spec = spec.with_length(r / 2);
    Ring L(level_spec);
    std::vector<CyclicTriple> triples;
    if (!opt.triple.empty()) {
        triples.push_back(parse_triple(L, opt.triple));
    } else {
        for (auto& oc : orbit_representatives(L)) triples.push_back(oc.rep);
    }
    json out = json::array();
    for (auto& t : triples) {
        ExtensionContext ctx(level_spec, t, r);
        ExtensionSet E = opt.brute ? e_brute(ctx) : e_set(ctx);
        if (opt.as_json) {
            out.push_back(extension_json(ctx, E));
        } else {
            std::printf("%-14s [%s] index %u, coset reps:", triple_str(t).c_str(),
                        E.provenance.c_str(), E.index_over_pi_ell());
            for (Ring::code_t c : E.reps) std::printf(" (%s)", elem_str(ctx.R.element(c)).c_str());
            std::printf("\n");
        }
    }
    if (opt.as_json) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_table(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    if (spec.r % 2 == 1) {
        // bounds-only report; the full construction exists at even levels only
        RingSpec level_spec = spec.with_length(spec.r / 2);
        Ring L(level_spec);
        std::printf("level %u is odd: no constructed table; exact windows per orbit follow\n",
                    spec.r);
        std::printf("(run the brute-force oracle for the actual dimensions: verify/nmax --brute)\n");
        json rows = json::array();
        for (auto& oc : orbit_representatives(L)) {
            OddLevelBounds b = odd_level_bounds(level_spec, oc.rep, spec.r);
            if (opt.as_json) {
                rows.push_back(json{{"representative", triple_json(oc.rep)},
                                    {"type", orbit_type_name(oc.type)},
                                    {"dim_window", json::array({b.dim_lo, b.dim_hi})},
                                    {"count_window", json::array({b.count_lo, b.count_hi})},
                                    {"stabilizer_order", b.stab_order}});
            } else {
                std::printf("  %-14s %-3s dim in [%llu, %llu], count in [%llu, %llu]\n",
                            triple_str(oc.rep).c_str(), orbit_type_name(oc.type),
                            (unsigned long long)b.dim_lo, (unsigned long long)b.dim_hi,
                            (unsigned long long)b.count_lo, (unsigned long long)b.count_hi);
            }
        }
        if (opt.as_json)
            std::cout << json{{"ring", spec.str()}, {"r", spec.r}, {"bounds_only", true},
                              {"rows", rows}}
                             .dump(2)
                      << "\n";
        return 0;
    }
    PrimitiveTable tab = primitive_table(spec, spec.r);
    if (opt.as_json) {
        std::cout << table_json(tab).dump(2) << "\n";
        return 0;
    }
    if (opt.as_csv) {
        std::cout << table_csv(tab);
        return 0;
    }
    Ring L(spec.with_length(spec.r / 2));
    std::printf("primitive representation data of SL2(%s):\n", spec.str().c_str());
    std::printf("  %-14s %-3s %-4s %-4s %10s %12s %6s %6s %6s %8s\n", "rep", "typ", "k", "s",
                "|C_sl(A)|", "|M_A|", "theta", "D1", "D2", "dim");
    for (auto& row : tab.rows) {
        std::printf("  %-14s %-3s", triple_str(row.rep(L)).c_str(), orbit_type_name(row.type));
        if (spec.char_two())
            std::printf(" %-4u %-4u", row.params.k, row.params.s);
        else
            std::printf(" %-4s %-4s", "-", "-");
        std::printf(" %10llu %12llu %6s %6llu %6llu %8llu\n",
                    (unsigned long long)row.stab.c_sl_level, (unsigned long long)row.m_order,
                    row.theta ? std::to_string(*row.theta).c_str() : "-",
                    (unsigned long long)row.delta1, (unsigned long long)row.delta2,
                    (unsigned long long)row.dim);
    }
    std::printf("primitive zeta: %s\n", format_zeta(table_zeta(tab)).c_str());
    return 0;
}

int cmd_zeta(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    ZetaPolynomial z = primitive_zeta(spec, spec.r);
    if (opt.as_json) {
        std::cout << json{{"ring", spec.str()}, {"r", spec.r}, {"zeta", zeta_json(z)}}.dump(2)
                  << "\n";
        return 0;
    }
    std::printf("%s\n", format_zeta(z).c_str());
    return 0;
}

int cmd_nmax(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    NMaxResult res = nmax(spec, spec.r, opt.brute, opt.cap);
    if (opt.as_json) {
        std::cout << json{{"ring", spec.str()},
                          {"r", spec.r},
                          {"nmax", res.dim},
                          {"count", res.count},
                          {"source", res.source}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::printf("n^max(SL2(%s)) = %llu, attained by %llu irreducibles [%s]\n", spec.str().c_str(),
                (unsigned long long)res.dim, (unsigned long long)res.count, res.source.c_str());
    return 0;
}

int cmd_compare(const Options& opt) {
    RingSpec a = parse_ring(opt.ring, opt.level);
    RingSpec b = parse_ring(opt.ring_b, opt.level);
    if (a.r != b.r) throw std::invalid_argument("compare: levels differ");
    CompareResult res = compare_group_algebras(a, b, a.r, opt.cap);
    if (opt.as_json) {
        std::cout << json{{"a", a.str()},
                          {"b", b.str()},
                          {"r", a.r},
                          {"verdict", res.distinguished ? "distinguished" : "isomorphic-consistent"},
                          {"witness_dim", res.distinguished ? json(res.witness_dim) : json()},
                          {"counts", res.distinguished
                                         ? json::array({res.count_a, res.count_b})
                                         : json()},
                          {"zeta_a", zeta_json(res.zeta_a)},
                          {"zeta_b", zeta_json(res.zeta_b)}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (res.distinguished)
        std::printf("DISTINGUISHED at dimension %llu: counts %llu vs %llu\n",
                    (unsigned long long)res.witness_dim, (unsigned long long)res.count_a,
                    (unsigned long long)res.count_b);
    else
        std::printf("ISOMORPHIC-CONSISTENT: zeta polynomials coincide (%s)\n",
                    format_zeta(res.zeta_a).c_str());
    return 0;
}

int cmd_verify(const Options& opt) {
    RingSpec spec = parse_ring(opt.ring, opt.level);
    unsigned r = spec.r;
    if (r < 2) throw std::domain_error("verify: need level r >= 2");
    RingSpec level_spec = spec.with_length(r / 2);
    Ring R(spec), L(level_spec);
    bool ok = true;
    auto report = [&](const char* what, bool pass) {
        std::printf("  %-52s %s\n", what, pass ? "ok" : "MISMATCH");
        if (!pass) ok = false;
    };

    std::printf("verify %s (level %u):\n", spec.str().c_str(), r);

    // group order
    if (sl2_order(spec) <= opt.cap) {
        FiniteGroup G = enumerate_sl2(R, opt.cap);
        report("group order: enumeration vs formula", G.size() == sl2_order(spec));

        // character table + orthogonality + primitive multiset (even r)
        CharacterTable T = character_table(G);
        report("character table row orthogonality", row_orthogonality_ok(T));
        report("character table column orthogonality", column_orthogonality_ok(T));
        auto fast = primitive_dimension_multiset_fast(G, T);
        if (sl2_order(spec) <= 4096) {
            auto slow = primitive_dimension_multiset(G, T);
            report("primitive multiset: K^ell scan vs K^{r-1} test", slow == fast);
        }
        if (r % 2 == 0) {
            ZetaPolynomial z = primitive_zeta(spec, r);
            report("primitive dimensions: construction vs character table",
                   z == ZetaPolynomial(fast.begin(), fast.end()));
        }

        // direct extension-search oracle vs brute characterization
        if (sl2_order(spec) <= 4096) {
            bool agree = true;
            for (auto& oc : orbit_representatives(L)) {
                ExtensionContext ctx(level_spec, oc.rep, r);
                for (Ring::code_t lam : h_coset_reps(h_set(ctx, ctx.ell), ctx.R, ctx.ell))
                    if (e_contains_brute(ctx, lam) != extension_oracle(G, ctx, lam)) agree = false;
            }
            report("extension sets: sweep vs subgroup extension search", agree);
        }
    } else {
        std::printf("  (|SL2| = %llu exceeds the cap %llu; skipping group-level checks)\n",
                    (unsigned long long)sl2_order(spec), (unsigned long long)opt.cap);
    }

    // orbit oracle
    if (sl2_order(level_spec) <= opt.cap && L.size() <= 64) {
        OrbitOracleResult oo = orbit_oracle(L, opt.cap);
        auto reps = orbit_representatives(L);
        bool agree = oo.orbit_sizes.size() == reps.size();
        std::map<uint32_t, int> hit;
        for (auto& oc : reps) {
            uint64_t key = scalar_class_key(oc.rep.matrix());
            auto it = oo.orbit_of.find(key);
            if (it == oo.orbit_of.end())
                agree = false;
            else
                hit[it->second] += 1;
        }
        for (auto& [oid, n] : hit)
            if (n != 1) agree = false;
        report("orbit representatives vs conjugation sweep", agree);
        // stabilizer orders via the general formula vs oracle orbit sizes
        bool stab_ok = true;
        for (auto& oc : reps) {
            uint64_t stab = stabilizer_order_general(level_spec, oc.rep, r);
            uint64_t size = sl2_order(spec) / stab;
            uint64_t key = scalar_class_key(oc.rep.matrix());
            auto it = oo.orbit_of.find(key);
            if (it == oo.orbit_of.end() || oo.orbit_sizes[it->second] != size) stab_ok = false;
        }
        report("stabilizer orders vs oracle orbit sizes", stab_ok);
    }

    // fast vs brute extension sets on all representatives
    {
        bool agree = true;
        for (auto& oc : orbit_representatives(L)) {
            ExtensionContext ctx(level_spec, oc.rep, r);
            auto fast = e_fast(ctx);
            if (fast && fast->reps != e_brute(ctx).reps) agree = false;
        }
        report("extension sets: fast characterization vs brute", agree);
    }

    // seeded random sweep over arbitrary triples
    {
        std::mt19937_64 rng(opt.seed);
        bool agree = true;
        for (int i = 0; i < 50; ++i) {
            Ring::code_t a;
            do {
                a = (Ring::code_t)(rng() % L.size());
            } while (!L.is_unit_code(a));
            CyclicTriple t{L.element(a), L.element((Ring::code_t)(rng() % L.size())),
                           L.element((Ring::code_t)(rng() % L.size()))};
            ExtensionContext ctx(level_spec, t, r);
            auto fast = e_fast(ctx);
            if (fast && fast->reps != e_brute(ctx).reps) agree = false;
        }
        report("extension sets: seeded random triple sweep", agree);
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact primitive representation data for SL2 over finite chain rings"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool ring_needed = true) {
        if (ring_needed) cmd->add_option("--ring", opt.ring, "ring spec, e.g. Z/2^4")->required();
        cmd->add_option("--level", opt.level, "quotient level r (defaults to the ring spec's)");
        cmd->add_flag("--json", opt.as_json, "machine-readable output");
        cmd->add_flag("--csv", opt.as_csv, "CSV output (tables)");
        cmd->add_flag("--brute", opt.brute, "force/allow brute-force paths");
        cmd->add_option("--cap", opt.cap, "group enumeration cap");
        cmd->add_option("--seed", opt.seed, "seed for randomized sweeps");
    };

    add_common(app.add_subcommand("ring-info", "ring parameters and basic counts"));
    add_common(app.add_subcommand("orbits", "orbit representatives of cyclic characters"));
    auto* ext = app.add_subcommand("extension-set", "extension sets E_A~");
    add_common(ext);
    ext->add_option("--triple", opt.triple, "companion triple a;alpha;beta (digit vectors)");
    add_common(app.add_subcommand("table", "primitive representation table"));
    add_common(app.add_subcommand("zeta", "primitive representation zeta polynomial"));
    add_common(app.add_subcommand("nmax", "largest dimension and its multiplicity"));
    auto* cmp = app.add_subcommand("compare", "group-algebra comparison of two rings");
    cmp->add_option("--a", opt.ring, "first ring spec")->required();
    cmp->add_option("--b", opt.ring_b, "second ring spec")->required();
    cmp->add_option("--level", opt.level, "quotient level r");
    cmp->add_flag("--json", opt.as_json, "machine-readable output");
    cmp->add_option("--cap", opt.cap, "group enumeration cap");
    add_common(app.add_subcommand("verify", "oracle cross-checks; nonzero exit on mismatch"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("ring-info")) return cmd_ring_info(opt);
        if (app.got_subcommand("orbits")) return cmd_orbits(opt);
        if (app.got_subcommand("extension-set")) return cmd_extension_set(opt);
        if (app.got_subcommand("table")) return cmd_table(opt);
        if (app.got_subcommand("zeta")) return cmd_zeta(opt);
        if (app.got_subcommand("nmax")) return cmd_nmax(opt);
        if (app.got_subcommand("compare")) return cmd_compare(opt);
        if (app.got_subcommand("verify")) return cmd_verify(opt);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "regime error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 2;
}
