#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "sl2rep/chain_ring.hpp"

namespace sl2rep {

// 2x2 matrices over a finite chain ring, companion reduction of cyclic
// matrices, congruence subgroups and the trace-pairing characters psi_A.

struct Mat2 {
    RingElem a, b, c, d;  // [[a, b], [c, d]]

    const Ring& ring() const { return a.ring(); }

    static Mat2 identity(const Ring& R) { return {R.one(), R.zero(), R.zero(), R.one()}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    RingElem det() const { return a * d - b * c; }
    RingElem trace() const { return a + d; }

    Mat2 inverse() const {
        RingElem dt = det();
        if (!dt.is_unit()) throw std::domain_error("Mat2::inverse: determinant is not a unit");
        RingElem di = dt.inv();
        return {d * di, -b * di, -c * di, a * di};
    }

    Mat2 conj_by(const Mat2& g) const { return g * (*this) * g.inverse(); }

    Mat2 scalar_plus(const RingElem& x) const {  // this + x*I
        return {a + x, b, c, d + x};
    }

    Mat2 project_to(const Ring& target) const {
        return {a.project_to(target), b.project_to(target), c.project_to(target),
                d.project_to(target)};
    }
    Mat2 lift_to(const Ring& target) const {
        return {a.lift_to(target), b.lift_to(target), c.lift_to(target), d.lift_to(target)};
    }

    // packed code, for hashing; requires element codes < 2^16
    uint64_t key() const {
        return (uint64_t)a.code() | ((uint64_t)b.code() << 16) | ((uint64_t)c.code() << 32) |
               ((uint64_t)d.code() << 48);
    }
    static Mat2 from_key(const Ring& R, uint64_t k) {
        return {R.element((Ring::code_t)(k & 0xffff)), R.element((Ring::code_t)((k >> 16) & 0xffff)),
                R.element((Ring::code_t)((k >> 32) & 0xffff)),
                R.element((Ring::code_t)((k >> 48) & 0xffff))};
    }
};

// (a, alpha, beta) encodes the companion form [[0, a^{-1} alpha], [a, beta]];
// trace = beta and det = -alpha.  Every such matrix is cyclic.
struct CyclicTriple {
    RingElem a, alpha, beta;

    const Ring& ring() const { return a.ring(); }

    Mat2 matrix() const {
        const Ring& R = a.ring();
        return {R.zero(), a.inv() * alpha, a, beta};
    }

    uint64_t key() const {
        return (uint64_t)a.code() | ((uint64_t)alpha.code() << 20) | ((uint64_t)beta.code() << 40);
    }
    bool operator==(const CyclicTriple& o) const {
        return a == o.a && alpha == o.alpha && beta == o.beta;
    }
    bool operator<(const CyclicTriple& o) const { return key() < o.key(); }
};

// cyclic iff the reduction mod pi is non-scalar
inline bool is_cyclic(const Mat2& A) {
    return A.b.residue() != 0 || A.c.residue() != 0 || A.a.residue() != A.d.residue();
}

// g in SL2 with g A g^{-1} = [[0, a^{-1} alpha], [a, beta]]; probes the cyclic
// vector among e1, e2, e1+e2 in that order
inline std::pair<Mat2, CyclicTriple> companion_reduce(const Mat2& A) {
    const Ring& R = A.ring();
    if (!is_cyclic(A)) throw std::domain_error("companion_reduce: matrix is not cyclic");
    RingElem v1 = R.zero(), v2 = R.zero();
    RingElem w1 = R.zero(), w2 = R.zero();
    bool found = false;
    const std::pair<int, int> probes[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (auto [p, q] : probes) {
        v1 = p ? R.one() : R.zero();
        v2 = q ? R.one() : R.zero();
        w1 = A.a * v1 + A.b * v2;
        w2 = A.c * v1 + A.d * v2;
        if ((v1 * w2 - v2 * w1).is_unit()) {
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("companion_reduce: no cyclic basis vector found");
    Mat2 h{v1, w1, v2, w2};  // columns v, Av
    RingElem dh = h.det();
    Mat2 g0 = h.inverse();
    // fix determinant: g = diag(det(g0)^{-1}, 1) * g0 has det 1
    Mat2 g{g0.a * dh, g0.b * dh, g0.c, g0.d};
    CyclicTriple t{dh.inv(), -A.det(), A.trace()};
    return {g, t};
}

// |SL2(o_r)| = (q^2-1) q^{3r-2},  |GL2(o_r)| = (q^2-1)(q^2-q) q^{4(r-1)}
inline uint64_t sl2_order(const RingSpec& spec) {
    uint64_t q = spec.q, o = (q * q - 1);
    for (unsigned i = 0; i < 3 * spec.r - 2; ++i) o *= q;
    return o;
}
inline uint64_t gl2_order(const RingSpec& spec) {
    uint64_t q = spec.q, o = (q * q - 1) * (q * q - q);
    for (unsigned i = 0; i < 4 * (spec.r - 1); ++i) o *= q;
    return o;
}

// The GL2 centralizer of a cyclic matrix is { xI + yA : det a unit }.  The
// quadratic form det(xI + yA) in companion coordinates:
inline RingElem centralizer_det_form(const CyclicTriple& t, const RingElem& x, const RingElem& y) {
    return x * x + t.beta * x * y - t.alpha * y * y;
}

inline std::vector<std::pair<RingElem, RingElem>> centralizer_gl_pairs(const CyclicTriple& t,
                                                                       const Ring& R) {
    std::vector<std::pair<RingElem, RingElem>> out;
    for (Ring::code_t x = 0; x < R.size(); ++x)
        for (Ring::code_t y = 0; y < R.size(); ++y) {
            RingElem xe = R.element(x), ye = R.element(y);
            if (centralizer_det_form(t, xe, ye).is_unit()) out.emplace_back(xe, ye);
        }
    return out;
}

inline uint64_t centralizer_gl_order(const CyclicTriple& t, const Ring& R) {
    uint64_t cnt = 0;
    for (Ring::code_t x = 0; x < R.size(); ++x)
        for (Ring::code_t y = 0; y < R.size(); ++y)
            if (centralizer_det_form(t, R.element(x), R.element(y)).is_unit()) ++cnt;
    return cnt;
}

inline uint64_t centralizer_sl_order(const CyclicTriple& t, const Ring& R) {
    uint64_t cnt = 0;
    for (Ring::code_t x = 0; x < R.size(); ++x)
        for (Ring::code_t y = 0; y < R.size(); ++y) {
            RingElem f = centralizer_det_form(t, R.element(x), R.element(y));
            if (f == R.one()) ++cnt;
        }
    return cnt;
}

// image of det on the centralizer: { x^2 + beta x y - alpha y^2 } among units
inline std::vector<Ring::code_t> det_image(const CyclicTriple& t, const Ring& R) {
    std::set<Ring::code_t> vals;
    for (Ring::code_t x = 0; x < R.size(); ++x)
        for (Ring::code_t y = 0; y < R.size(); ++y) {
            RingElem f = centralizer_det_form(t, R.element(x), R.element(y));
            if (f.is_unit()) vals.insert(f.code());
        }
    return {vals.begin(), vals.end()};
}

// ---- congruence subgroups -------------------------------------------------

// M^i = I + pi^i M2(o_r); for i >= r/2 it is abelian, iso to (M2(o_{r-i}), +)
inline std::vector<Mat2> enumerate_M(const Ring& R, unsigned i) {
    Ring sub(R.spec().with_length(R.r() - i));
    RingElem p = R.pi_pow(i);
    std::vector<Mat2> out;
    out.reserve((size_t)sub.size() * sub.size() * sub.size() * sub.size());
    for (Ring::code_t a = 0; a < sub.size(); ++a)
        for (Ring::code_t b = 0; b < sub.size(); ++b)
            for (Ring::code_t c = 0; c < sub.size(); ++c)
                for (Ring::code_t d = 0; d < sub.size(); ++d) {
                    Mat2 B{sub.element(a).lift_to(R), sub.element(b).lift_to(R),
                           sub.element(c).lift_to(R), sub.element(d).lift_to(R)};
                    out.push_back(Mat2::identity(R) + Mat2{p * B.a, p * B.b, p * B.c, p * B.d});
                }
    return out;
}

// K^i = M^i intersected with SL2
inline std::vector<Mat2> enumerate_K(const Ring& R, unsigned i) {
    std::vector<Mat2> out;
    for (Mat2& X : enumerate_M(R, i))
        if (X.det() == R.one()) out.push_back(X);
    return out;
}

// psi_A(X) for X in M^{r-i} and a lift Ahat over o_r:
//   psi_A(I + pi^{r-i} B) = psi(pi^{r-i} trace(Ahat B)) = psi(trace(Ahat (X - I)))
inline uint64_t psi_A_exp(const Mat2& Ahat, const Mat2& X) {
    const Ring& R = Ahat.ring();
    Mat2 Y = X - Mat2::identity(R);
    RingElem tr = Ahat.a * Y.a + Ahat.b * Y.c + Ahat.c * Y.b + Ahat.d * Y.d;
    return R.psi_exp_code(tr.code());
}

}  // namespace sl2rep
