#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sl2rep/chain_ring.hpp"

using namespace sl2rep;

namespace {
Ring ring(const std::string& s) { return Ring(RingSpec::parse(s)); }

// independent oracle: the set of squares by exhaustive squaring
std::set<Ring::code_t> squares_by_enumeration(const Ring& R) {
    std::set<Ring::code_t> out;
    for (Ring::code_t x = 0; x < R.size(); ++x) out.insert(R.mul_code(x, x));
    return out;
}
}  // namespace

TEST_CASE("ring construction and basic counts") {
    Ring z4 = ring("Z/2^2");
    CHECK(z4.size() == 4);
    CHECK(z4.unit_count() == 2);

    Ring f16 = ring("F2[t]/t^4");
    CHECK(f16.size() == 16);
    CHECK(f16.pi_pow(1).digits() == std::vector<unsigned>{0, 1, 0, 0});

    Ring gr = ring("GR(2^2,2)");
    CHECK(gr.size() == 16);
    std::set<unsigned> residues;
    for (Ring::code_t c = 0; c < gr.size(); ++c) residues.insert(gr.residue_code(c));
    CHECK(residues.size() == 4);  // residue field F_4, by enumeration
}

TEST_CASE("ring spec parsing rejects bad input") {
    CHECK_THROWS_AS(RingSpec::parse("F3[t]/t^2"), std::invalid_argument);
    CHECK_THROWS_AS(RingSpec::parse("F6[t]/t^2"), std::invalid_argument);
    CHECK_THROWS_AS(RingSpec::parse("Z/3^2"), std::invalid_argument);
    CHECK_THROWS_AS(RingSpec::parse("nonsense"), std::invalid_argument);
    CHECK(RingSpec::parse("GR(2^4,2)").q == 4);
    CHECK(RingSpec::parse("F4[t]/t^5").n == 2);
    CHECK(RingSpec::parse("Z/2^12").str() == "Z/2^12");
}

TEST_CASE("valuation") {
    Ring z8 = ring("Z/2^3");
    CHECK(z8.from_int(2).val() == 1);
    CHECK(z8.zero().val() == 3);
    Ring f6 = ring("F2[t]/t^6");
    CHECK(f6.pi_pow(3).val() == 3);
    CHECK(f6.zero().val() == 6);

    for (const char* s : {"Z/2^4", "F2[t]/t^4", "F4[t]/t^3", "GR(2^3,2)"}) {
        Ring R = ring(s);
        for (Ring::code_t a = 0; a < R.size(); ++a)
            for (Ring::code_t b = 0; b < R.size(); ++b) {
                unsigned va = R.val_code(a), vb = R.val_code(b);
                CHECK(R.val_code(R.mul_code(a, b)) == std::min(va + vb, R.r()));
                CHECK(R.val_code(R.add_code(a, b)) >= std::min(va, vb));
            }
    }
}

TEST_CASE("squares and square roots") {
    Ring z16 = ring("Z/2^4");
    auto sq16 = squares_by_enumeration(z16);
    CHECK(sq16.count(9) == 1);
    CHECK(z16.element(9).is_square());
    CHECK(z16.element(9).sqrt().code() == 3);

    Ring z8 = ring("Z/2^3");
    CHECK(squares_by_enumeration(z8) == std::set<Ring::code_t>{0, 1, 4});
    CHECK_FALSE(z8.from_int(3).is_square());
    CHECK_THROWS_AS(z8.from_int(3).sqrt(), std::domain_error);

    Ring f4 = ring("F2[t]/t^4");
    RingElem x = f4.from_digits({1, 0, 1, 0});  // 1 + t^2 = (1 + t)^2
    CHECK(x.is_square());
    CHECK(x.sqrt() == f4.from_digits({1, 1, 0, 0}));

    // is_square matches exhaustive squaring, and sqrt returns the least root
    for (const char* s : {"Z/2^5", "GR(2^3,2)", "F2[t]/t^8", "F4[t]/t^4"}) {
        Ring R = ring(s);
        auto sq = squares_by_enumeration(R);
        for (Ring::code_t a = 0; a < R.size(); ++a) {
            CHECK(R.is_square_code(a) == (sq.count(a) == 1));
            if (sq.count(a)) {
                Ring::code_t least = UINT32_MAX;
                for (Ring::code_t y = 0; y < R.size(); ++y)
                    if (R.mul_code(y, y) == a) least = std::min(least, y);
                CHECK(R.sqrt_code(a) == least);
            }
        }
    }
    // char 2: square iff every odd digit vanishes
    for (const char* s : {"F2[t]/t^8", "F4[t]/t^4"}) {
        Ring R = ring(s);
        for (Ring::code_t a = 0; a < R.size(); ++a) {
            bool odd_free = true;
            for (unsigned i = 1; i < R.r(); i += 2)
                if (R.digit_code(a, i)) odd_free = false;
            CHECK(R.is_square_code(a) == odd_free);
        }
    }
}

TEST_CASE("digit expansions determine elements") {
    for (const char* s : {"Z/2^4", "F4[t]/t^3", "GR(2^3,2)"}) {
        Ring R = ring(s);
        std::set<std::vector<unsigned>> seen;
        for (Ring::code_t a = 0; a < R.size(); ++a) {
            auto ds = R.digits_code(a);
            CHECK(R.from_digits_code(ds) == a);
            seen.insert(ds);
        }
        CHECK(seen.size() == R.size());
    }
}

TEST_CASE("solve u y + v y^2 = z") {
    Ring z8 = ring("Z/2^3");
    RingElem y = solve_linear_quadratic(z8.one(), z8.one(), z8.from_int(2));
    CHECK(y + y * y == z8.from_int(2));  // e.g. y = 6: 6 + 36 = 42 = 2 (mod 8)

    RingElem yp = solve_linear_quadratic(z8.one(), z8.zero(), z8.pi_pow(1));
    CHECK(yp == z8.pi_pow(1));

    Ring z16 = ring("Z/2^4");
    CHECK(solve_linear_quadratic(z16.from_int(3), z16.one(), z16.zero()).is_zero());

    CHECK_THROWS_AS(solve_linear_quadratic(z8.one(), z8.one(), z8.one()), std::domain_error);
    CHECK_THROWS_AS(solve_linear_quadratic(z8.from_int(2), z8.one(), z8.from_int(2)),
                    std::domain_error);

    // pi o_m is contained in { u y + v y^2 }: constructive check, r <= 5
    for (const char* s : {"Z/2^5", "F2[t]/t^5"}) {
        Ring R = ring(s);
        for (Ring::code_t u = 0; u < R.size(); ++u) {
            if (!R.is_unit_code(u)) continue;
            for (Ring::code_t v = 0; v < R.size(); ++v)
                for (Ring::code_t z = 0; z < R.size(); ++z) {
                    if (R.val_code(z) < 1) continue;
                    RingElem ue = R.element(u), ve = R.element(v), ze = R.element(z);
                    RingElem y0 = solve_linear_quadratic(ue, ve, ze);
                    CHECK(ue * y0 + ve * y0 * y0 == ze);
                }
        }
    }
}

TEST_CASE("represent units by x^2 + u x y + v y^2") {
    Ring z8 = ring("Z/2^3");
    auto [x1, y1] = represent_unit(z8.one(), z8.zero(), z8.one());
    CHECK(x1 * x1 + x1 * y1 * z8.one() * z8.zero() + y1 * y1 * z8.zero() == z8.one());

    auto [x2, y2] = represent_unit(z8.one(), z8.one(), z8.from_int(3));
    CHECK(x2 * x2 + x2 * y2 + y2 * y2 == z8.from_int(3));

    Ring z16 = ring("Z/2^4");
    RingElem w = z16.from_int(9);  // a square unit
    auto [x3, y3] = represent_unit(z16.zero(), z16.one(), w);
    CHECK(x3 * x3 + y3 * y3 == w);

    // o_m^x is contained in { x^2 + u x y + v y^2 } for a unit u: constructive
    for (const char* s : {"Z/2^5", "F2[t]/t^5"}) {
        Ring R = ring(s);
        for (Ring::code_t u = 0; u < R.size(); ++u) {
            if (!R.is_unit_code(u)) continue;
            for (Ring::code_t w_ = 0; w_ < R.size(); ++w_) {
                if (!R.is_unit_code(w_)) continue;
                RingElem ue = R.element(u), ve = R.element(R.size() - 1 - u), we = R.element(w_);
                auto [xs, ys] = represent_unit(ue, ve, we);
                CHECK(xs * xs + ue * xs * ys + ve * ys * ys == we);
            }
        }
    }
}

TEST_CASE("additive character as exact exponents") {
    Ring z8 = ring("Z/2^3");
    CHECK(z8.psi_modulus() == 8);
    CHECK(z8.psi_exp_code(z8.pi_pow_code(2)) == 4);  // psi(2^{r-1}) has exponent 2^{r-1}
    CHECK(z8.psi_exp_code(0) == 0);

    Ring f5 = ring("F2[t]/t^5");
    CHECK(f5.psi_modulus() == 2);
    CHECK(f5.psi_exp_code(f5.pi_pow_code(4)) == 1);  // psi(t^{r-1}) = -1
    CHECK(f5.psi_exp_code(0) == 0);

    for (const char* s : {"Z/2^6", "F2[t]/t^6", "F4[t]/t^3", "GR(2^3,2)"}) {
        Ring R = ring(s);
        uint64_t m = R.psi_modulus();
        CHECK(R.psi_exp_code(R.pi_pow_code(R.r() - 1)) != 0);
        for (Ring::code_t a = 0; a < R.size(); ++a)
            for (Ring::code_t b = 0; b < R.size(); ++b)
                CHECK((R.psi_exp_code(a) + R.psi_exp_code(b)) % m ==
                      R.psi_exp_code(R.add_code(a, b)));
    }
}

TEST_CASE("xi is the unique kernel parameter of bold psi") {
    CHECK(ring("Z/2^3").xi() == 1);  // xi = 1 over the 2-adics
    for (const char* s : {"Z/2^4", "F2[t]/t^4", "F4[t]/t^3", "GR(2^3,2)"}) {
        Ring R = ring(s);
        unsigned xi = R.xi();
        // defining property and the q/2 image size, exhaustively over F_q
        std::set<unsigned> img;
        for (unsigned z = 0; z < R.q(); ++z) {
            unsigned v = R.fq_add(R.fq_mul(xi, R.fq_mul(z, z)), z);
            CHECK(R.psi_residue_exp(v) == 0);
            img.insert(v);
        }
        CHECK(img.size() == R.q() / 2);
        // uniqueness
        unsigned count = 0;
        for (unsigned eta = 1; eta < R.q(); ++eta) {
            bool all_in_kernel = true;
            for (unsigned z = 0; z < R.q(); ++z)
                if (R.psi_residue_exp(R.fq_add(R.fq_mul(eta, R.fq_mul(z, z)), z)) != 0)
                    all_in_kernel = false;
            if (all_in_kernel) ++count;
        }
        CHECK(count == 1);
    }
}

TEST_CASE("twisted psi variants are admissible") {
    RingSpec spec = RingSpec::parse("F2[t]/t^4");
    spec.psi_twist = 7;  // 1 + t + t^2
    Ring R(spec);
    CHECK(R.psi_exp_code(R.pi_pow_code(3)) != 0);
    RingSpec bad = RingSpec::parse("Z/2^3");
    bad.psi_twist = 2;  // not a unit
    CHECK_THROWS_AS(Ring{bad}, std::invalid_argument);
}
