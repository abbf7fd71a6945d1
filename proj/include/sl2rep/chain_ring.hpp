#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2rep {

// Finite chain rings o_r of even residue characteristic:
//   CharZero : Galois rings GR(2^r, n) = Z[x]/(2^r, f), f a monic lift of an
//              irreducible polynomial over F_2 (n = 1 gives Z/2^r); e = 1.
//   CharTwo  : truncated polynomial rings F_q[t]/(t^r), q = 2^n.
// Elements are 32-bit canonical codes; all arithmetic is exact.

enum class RingKind { CharZero, CharTwo };

struct RingSpec {
    RingKind kind = RingKind::CharZero;
    unsigned q = 2;  // residue field cardinality, a power of two
    unsigned r = 1;  // nilpotency length, pi^r = 0
    unsigned n = 1;  // residue degree, q = 2^n
    // unit twist of the additive character: psi'(x) = psi(u x); any admissible
    // psi arises this way, and orbit-level outputs must not depend on it
    uint32_t psi_twist = 1;

    bool char_two() const { return kind == RingKind::CharTwo; }
    // ramification index of 2; meaningful in characteristic zero only
    unsigned e() const { return 1; }

    RingSpec with_length(unsigned new_r) const {
        RingSpec s = *this;
        s.r = new_r;
        return s;
    }

    bool operator==(const RingSpec& o) const {
        return kind == o.kind && q == o.q && r == o.r && n == o.n;
    }

    // Accepted forms: "Z/2^r", "F2[t]/t^r", "F4[t]/t^r", "GR(2^r,n)"
    static RingSpec parse(const std::string& s);
    std::string str() const;
};

inline RingSpec RingSpec::parse(const std::string& s) {
    auto fail = [&]() -> unsigned {
        throw std::invalid_argument("unrecognized ring spec: \"" + s + "\"");
    };
    auto num = [&](size_t pos, size_t* end) -> unsigned {
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail();
        unsigned v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = 10 * v + unsigned(s[pos] - '0');
            ++pos;
        }
        *end = pos;
        return v;
    };
    RingSpec spec;
    size_t end = 0;
    if (s.rfind("Z/2^", 0) == 0) {
        spec.kind = RingKind::CharZero;
        spec.q = 2;
        spec.n = 1;
        spec.r = num(4, &end);
        if (end != s.size() || spec.r < 1) fail();
        return spec;
    }
    if (s.rfind("GR(2^", 0) == 0) {
        spec.kind = RingKind::CharZero;
        spec.r = num(5, &end);
        if (end >= s.size() || s[end] != ',') fail();
        spec.n = num(end + 1, &end);
        if (end + 1 != s.size() || s[end] != ')') fail();
        if (spec.r < 1 || spec.n < 1 || spec.n > 3) fail();
        spec.q = 1u << spec.n;
        return spec;
    }
    if (!s.empty() && s[0] == 'F') {
        unsigned q = num(1, &end);
        if (q < 2 || (q & (q - 1)) != 0) fail();
        if (s.compare(end, 6, "[t]/t^") != 0) fail();
        spec.kind = RingKind::CharTwo;
        spec.q = q;
        spec.n = 0;
        for (unsigned m = q; m > 1; m >>= 1) ++spec.n;
        spec.r = num(end + 6, &end);
        if (end != s.size() || spec.r < 1) fail();
        return spec;
    }
    fail();
    return spec;
}

inline std::string RingSpec::str() const {
    if (kind == RingKind::CharTwo)
        return "F" + std::to_string(q) + "[t]/t^" + std::to_string(r);
    if (n == 1) return "Z/2^" + std::to_string(r);
    return "GR(2^" + std::to_string(r) + "," + std::to_string(n) + ")";
}

class RingElem;

class Ring {
public:
    using code_t = uint32_t;

    explicit Ring(RingSpec spec) : spec_(spec) {
        if (spec_.q < 2 || (spec_.q & (spec_.q - 1)) != 0)
            throw std::invalid_argument("residue cardinality must be a power of two");
        if (spec_.r < 1 || spec_.r > 16) throw std::invalid_argument("unsupported length r");
        if (spec_.n < 1 || spec_.n > 3) throw std::invalid_argument("unsupported residue degree");
        if (spec_.n * spec_.r > 30) throw std::invalid_argument("ring too large for element codes");
        q_count_ = 1;
        for (unsigned i = 0; i < spec_.r; ++i) q_count_ *= spec_.q;
        build_fq_tables();
        psi_mu_ = 1;
        while (fq_trace(psi_mu_) != 1) ++psi_mu_;  // least trace-one twist for bold psi
        psi_unit_ = (code_t)(spec.psi_twist % (code_t)q_count_);
        if (!is_unit_code(psi_unit_)) throw std::invalid_argument("psi twist must be a unit");
        if (psi_exp_code(pi_pow_code(spec_.r - 1)) == 0)
            throw std::invalid_argument("psi twist kills pi^{r-1}");
    }

    const RingSpec& spec() const { return spec_; }
    unsigned q() const { return spec_.q; }
    unsigned r() const { return spec_.r; }
    unsigned n() const { return spec_.n; }
    bool char_two() const { return spec_.char_two(); }
    unsigned e() const { return spec_.e(); }
    uint64_t size() const { return q_count_; }
    uint64_t unit_count() const { return q_count_ / spec_.q * (spec_.q - 1); }

    bool same_as(const Ring& o) const { return this == &o || spec_ == o.spec_; }

    // ---- element codes -------------------------------------------------

    code_t add_code(code_t a, code_t b) const {
        if (char_two()) return a ^ b;
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)(((comp(a, j) + comp(b, j)) & rmask()) << (j * spec_.r));
        return out;
    }

    code_t neg_code(code_t a) const {
        if (char_two()) return a;
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)(((rmask() + 1 - comp(a, j)) & rmask()) << (j * spec_.r));
        return out;
    }

    code_t sub_code(code_t a, code_t b) const { return add_code(a, neg_code(b)); }

    code_t mul_code(code_t a, code_t b) const {
        if (char_two()) {
            if (spec_.n == 1) {
                code_t acc = 0;
                for (code_t x = a, i = 0; x; x >>= 1, ++i)
                    if (x & 1u) acc ^= (b << i);
                return acc & (code_t)(q_count_ - 1);
            }
            code_t acc = 0;
            for (unsigned i = 0; i < spec_.r; ++i) {
                unsigned ai = (a >> (i * spec_.n)) & (spec_.q - 1);
                if (!ai) continue;
                for (unsigned k = i; k < spec_.r; ++k) {
                    unsigned bk = (b >> ((k - i) * spec_.n)) & (spec_.q - 1);
                    if (bk) acc ^= (code_t)fq_mul(ai, bk) << (k * spec_.n);
                }
            }
            return acc;
        }
        // Galois ring: polynomial product reduced by f, coefficients mod 2^r;
        // f = x^2+x+1 (n=2), x^3+x+1 (n=3): x^n = -(x + 1) * x^{n-2..}
        uint64_t prod[5] = {0, 0, 0, 0, 0};
        for (unsigned i = 0; i < spec_.n; ++i)
            for (unsigned j = 0; j < spec_.n; ++j)
                prod[i + j] += (uint64_t)comp(a, i) * comp(b, j);
        for (unsigned d = 2 * spec_.n - 2; d >= spec_.n; --d) {
            uint64_t c = prod[d] & rmask();
            prod[d] = 0;
            uint64_t minus_c = (rmask() + 1 - c) & rmask();
            prod[d - spec_.n + 1] += minus_c;  // x^d -> -x^{d-n+1} - x^{d-n}
            prod[d - spec_.n] += minus_c;
        }
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)((prod[j] & rmask()) << (j * spec_.r));
        return out;
    }

    code_t pow_code(code_t a, uint64_t k) const {
        code_t acc = 1, base = a;
        while (k) {
            if (k & 1) acc = mul_code(acc, base);
            base = mul_code(base, base);
            k >>= 1;
        }
        return acc;
    }

    unsigned val_code(code_t a) const {
        if (a == 0) return spec_.r;
        if (char_two()) {
            unsigned i = (unsigned)__builtin_ctz(a) / spec_.n;
            while (((a >> (i * spec_.n)) & (spec_.q - 1)) == 0) ++i;
            return i;
        }
        unsigned v = spec_.r;
        for (unsigned j = 0; j < spec_.n; ++j) {
            code_t c = comp(a, j);
            if (c) v = std::min(v, (unsigned)__builtin_ctz(c));
        }
        return v;
    }

    bool is_unit_code(code_t a) const { return val_code(a) == 0; }

    code_t inv_code(code_t a) const {
        if (!is_unit_code(a)) throw std::domain_error("inverse of a non-unit");
        return pow_code(a, unit_count() - 1);
    }

    code_t pi_pow_code(unsigned i) const {
        if (i >= spec_.r) return 0;
        return char_two() ? (code_t)1u << (i * spec_.n) : (code_t)1u << i;
    }

    // exact division by pi^k of an element of (pi^k), zero-extended
    code_t div_pi_pow_code(code_t a, unsigned k) const {
        if (a == 0) return 0;
        assert(val_code(a) >= k);
        if (char_two()) return a >> (k * spec_.n);
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)((comp(a, j) >> k) << (j * spec_.r));
        return out;
    }

    // i-th digit of the canonical expansion v = (v)_0 + (v)_1 pi + ...
    unsigned digit_code(code_t a, unsigned i) const {
        if (char_two()) return (a >> (i * spec_.n)) & (spec_.q - 1);
        for (unsigned step = 0; step < i; ++step) a = half(a, low_bits(a));
        return low_bits(a);
    }

    std::vector<unsigned> digits_code(code_t a) const {
        std::vector<unsigned> out(spec_.r);
        for (unsigned i = 0; i < spec_.r; ++i) {
            if (char_two()) {
                out[i] = (a >> (i * spec_.n)) & (spec_.q - 1);
            } else {
                out[i] = low_bits(a);
                a = half(a, out[i]);
            }
        }
        return out;
    }

    code_t from_digits_code(const std::vector<unsigned>& ds) const {
        code_t acc = 0;
        for (unsigned i = std::min<unsigned>((unsigned)ds.size(), spec_.r); i-- > 0;) {
            unsigned d = ds[i] & (spec_.q - 1);
            if (char_two()) {
                acc |= (code_t)d << (i * spec_.n);
            } else {
                acc = double_code(acc);
                acc = add_code(acc, fq_section(d));
            }
        }
        return acc;
    }

    // canonical (0/1-coefficient) section of the residue field
    code_t fq_section(unsigned d) const {
        d &= spec_.q - 1;
        if (char_two()) return d;
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)(((d >> j) & 1u) << (j * spec_.r));
        return out;
    }

    unsigned residue_code(code_t a) const {
        return char_two() ? (a & (spec_.q - 1)) : low_bits(a);
    }

    code_t project_code(code_t a, const Ring& target) const {
        assert(target.spec_.kind == spec_.kind && target.q() == q() && target.r() <= r());
        if (char_two()) return a & (code_t)(target.q_count_ - 1);
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)((comp(a, j) & target.rmask()) << (j * target.spec_.r));
        return out;
    }

    // zero-extension of the canonical representative from a shorter ring
    code_t lift_code(code_t a, const Ring& source) const {
        assert(source.spec_.kind == spec_.kind && source.q() == q() && source.r() <= r());
        if (char_two()) return a;
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)(source.comp(a, j) << (j * spec_.r));
        return out;
    }

    // ---- squares ---------------------------------------------------------

    // char 2: square iff every odd digit vanishes; char 0: Hensel digit lifting
    bool is_square_code(code_t a) const {
        if (a == 0) return true;
        if (char_two()) {
            for (unsigned i = 1; i < spec_.r; i += 2)
                if (digit_code(a, i)) return false;
            return true;
        }
        unsigned v = val_code(a);
        if (v & 1) return false;
        return !unit_sqrts_mod(div_pi_pow_code(a, v), spec_.r - v).empty();
    }

    // least square root in the canonical digit order
    code_t sqrt_code(code_t a) const {
        if (a == 0) return 0;
        if (char_two()) {
            std::vector<unsigned> out(spec_.r, 0);
            for (unsigned i = 0; i < spec_.r; ++i) {
                unsigned d = digit_code(a, i);
                if (i & 1) {
                    if (d) throw std::domain_error("sqrt of a non-square");
                } else {
                    out[i / 2] = fq_sqrt(d);
                }
            }
            return from_digits_code(out);
        }
        unsigned v = val_code(a);
        if (v & 1) throw std::domain_error("sqrt of a non-square");
        auto roots = unit_sqrts_mod(div_pi_pow_code(a, v), spec_.r - v);
        if (roots.empty()) throw std::domain_error("sqrt of a non-square");
        code_t best = 0;
        bool first = true;
        for (code_t w : roots) {
            code_t cand = mul_code(pi_pow_code(v / 2), w);
            if (first || cand < best) best = cand, first = false;
        }
        return best;
    }

    // ---- additive character (values as exponents in mu_m) ----------------

    uint64_t psi_modulus() const { return char_two() ? 2 : (uint64_t)rmask() + 1; }

    uint64_t psi_exp_code(code_t x) const {
        code_t t = mul_code(psi_unit_, x);
        if (char_two()) return fq_trace(fq_mul(psi_mu_, digit_code(t, spec_.r - 1)));
        return comp(t, 0);
    }

    // residue-level character: z in F_q -> exponent of psi(pi^{r-1} z)
    uint64_t psi_residue_exp(unsigned z) const {
        return psi_exp_code(mul_code(pi_pow_code(spec_.r - 1), fq_section(z)));
    }

    // the unique xi in F_q^x with Ker(bold psi) = { xi z^2 + z : z in F_q }
    unsigned xi() const {
        std::vector<char> ker(spec_.q, 0);
        for (unsigned z = 0; z < spec_.q; ++z) ker[z] = psi_residue_exp(z) == 0;
        for (unsigned eta = 1; eta < spec_.q; ++eta) {
            std::vector<char> img(spec_.q, 0);
            for (unsigned z = 0; z < spec_.q; ++z)
                img[fq_add(fq_mul(eta, fq_mul(z, z)), z)] = 1;
            if (img == ker) return eta;
        }
        throw std::logic_error("no xi: psi is not an admissible residue character");
    }

    // ---- residue field helpers --------------------------------------------

    unsigned fq_add(unsigned a, unsigned b) const { return a ^ b; }
    unsigned fq_mul(unsigned a, unsigned b) const { return fq_mul_[a * spec_.q + b]; }
    unsigned fq_inv(unsigned a) const {
        if (!a) throw std::domain_error("F_q inverse of zero");
        unsigned acc = 1;
        for (unsigned k = 0; k + 2 < spec_.q; ++k) acc = fq_mul(acc, a);
        return acc;
    }
    unsigned fq_sqrt(unsigned a) const {
        unsigned acc = a;
        for (unsigned i = 1; i < spec_.n; ++i) acc = fq_mul(acc, acc);
        return acc;
    }
    unsigned fq_trace(unsigned a) const {
        unsigned t = 0, p = a;
        for (unsigned i = 0; i < spec_.n; ++i) {
            t ^= p;
            p = fq_mul(p, p);
        }
        return t & 1u;
    }

    RingElem element(code_t code) const;
    RingElem zero() const;
    RingElem one() const;
    RingElem pi_pow(unsigned i) const;
    RingElem from_int(long long v) const;
    RingElem from_digits(const std::vector<unsigned>& ds) const;

private:
    RingSpec spec_;
    uint64_t q_count_ = 0;
    code_t psi_unit_ = 1;
    unsigned psi_mu_ = 1;
    std::vector<uint8_t> fq_mul_;

    code_t rmask() const { return (code_t)((1u << spec_.r) - 1); }
    code_t comp(code_t a, unsigned j) const { return (a >> (j * spec_.r)) & rmask(); }

    unsigned low_bits(code_t a) const {
        unsigned d = 0;
        for (unsigned j = 0; j < spec_.n; ++j) d |= ((comp(a, j) & 1u) << j);
        return d;
    }
    code_t half(code_t a, unsigned low) const {
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j) {
            code_t c = comp(a, j);
            c = (code_t)((c - ((low >> j) & 1u)) & rmask()) >> 1;
            out |= c << (j * spec_.r);
        }
        return out;
    }
    code_t double_code(code_t a) const {
        code_t out = 0;
        for (unsigned j = 0; j < spec_.n; ++j)
            out |= (code_t)(((comp(a, j) << 1) & rmask()) << (j * spec_.r));
        return out;
    }

    // all unit solutions of w^2 = u (mod pi^prec), zero-extended to this ring
    std::vector<code_t> unit_sqrts_mod(code_t u, unsigned prec) const {
        unsigned top = std::min(prec, spec_.r);
        std::vector<code_t> sols;  // codes in the ring of the current level
        {
            Ring l1(spec_.with_length(1));
            code_t u1 = project_code(u, l1);
            for (unsigned d = 1; d < spec_.q; ++d)
                if (l1.mul_code(l1.fq_section(d), l1.fq_section(d)) == u1)
                    sols.push_back(l1.fq_section(d));
        }
        for (unsigned level = 2; level <= top && !sols.empty(); ++level) {
            Ring lv(spec_.with_length(level));
            Ring prev(spec_.with_length(level - 1));
            code_t ul = project_code(u, lv);
            std::vector<code_t> next;
            for (code_t w : sols) {
                code_t wl = lv.lift_code(w, prev);
                for (unsigned d = 0; d < spec_.q; ++d) {
                    code_t cand =
                        lv.add_code(wl, lv.mul_code(lv.pi_pow_code(level - 1), lv.fq_section(d)));
                    if (lv.mul_code(cand, cand) == ul) next.push_back(cand);
                }
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            sols = std::move(next);
        }
        if (sols.empty()) return sols;
        Ring fin(spec_.with_length(top));
        std::vector<code_t> out;
        out.reserve(sols.size());
        for (code_t w : sols) out.push_back(lift_code(w, fin));
        return out;
    }

    void build_fq_tables() {
        unsigned q = spec_.q, nn = spec_.n;
        fq_mul_.assign(q * q, 0);
        unsigned fullpoly = (nn == 2) ? 0b111u : 0b1011u;  // x^2+x+1, x^3+x+1
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b) {
                unsigned p = 0;
                for (unsigned i = 0; i < nn; ++i)
                    if ((b >> i) & 1u) p ^= a << i;
                if (nn > 1)
                    for (int bit = (int)(2 * nn - 2); bit >= (int)nn; --bit)
                        if (p & (1u << bit)) p ^= fullpoly << (bit - nn);
                fq_mul_[a * q + b] = (uint8_t)(p & (q - 1));
            }
    }
};

class RingElem {
public:
    RingElem() : ring_(nullptr), code_(0) {}
    RingElem(const Ring& ring, Ring::code_t code) : ring_(&ring), code_(code) {}

    const Ring& ring() const { return *ring_; }
    Ring::code_t code() const { return code_; }

    bool is_zero() const { return code_ == 0; }
    bool is_unit() const { return ring_->is_unit_code(code_); }
    unsigned val() const { return ring_->val_code(code_); }
    unsigned digit(unsigned i) const { return ring_->digit_code(code_, i); }
    std::vector<unsigned> digits() const { return ring_->digits_code(code_); }
    unsigned residue() const { return ring_->residue_code(code_); }

    RingElem operator+(const RingElem& o) const { return {*ring_, ring_->add_code(code_, o.code_)}; }
    RingElem operator-(const RingElem& o) const { return {*ring_, ring_->sub_code(code_, o.code_)}; }
    RingElem operator*(const RingElem& o) const { return {*ring_, ring_->mul_code(code_, o.code_)}; }
    RingElem operator-() const { return {*ring_, ring_->neg_code(code_)}; }
    RingElem inv() const { return {*ring_, ring_->inv_code(code_)}; }
    RingElem pow(uint64_t k) const { return {*ring_, ring_->pow_code(code_, k)}; }

    bool operator==(const RingElem& o) const { return code_ == o.code_; }
    bool operator!=(const RingElem& o) const { return code_ != o.code_; }
    bool operator<(const RingElem& o) const { return code_ < o.code_; }

    bool is_square() const { return ring_->is_square_code(code_); }
    RingElem sqrt() const { return {*ring_, ring_->sqrt_code(code_)}; }

    RingElem project_to(const Ring& target) const {
        return {target, ring_->project_code(code_, target)};
    }
    RingElem lift_to(const Ring& target) const { return {target, target.lift_code(code_, *ring_)}; }

private:
    const Ring* ring_;
    Ring::code_t code_;
};

inline RingElem Ring::element(code_t code) const { return RingElem(*this, code); }
inline RingElem Ring::zero() const { return element(0); }
inline RingElem Ring::one() const { return element(1); }
inline RingElem Ring::pi_pow(unsigned i) const { return element(pi_pow_code(i)); }
inline RingElem Ring::from_digits(const std::vector<unsigned>& ds) const {
    return element(from_digits_code(ds));
}
inline RingElem Ring::from_int(long long v) const {
    bool negate = v < 0;
    uint64_t m = negate ? (uint64_t)(-v) : (uint64_t)v;
    code_t acc = 0, base = 1;
    while (m) {
        if (m & 1) acc = add_code(acc, base);
        base = add_code(base, base);
        m >>= 1;
    }
    return element(negate ? neg_code(acc) : acc);
}

// one solution y of u*y + v*y^2 = z for a unit u and z in (pi), by Newton iteration
inline RingElem solve_linear_quadratic(const RingElem& u, const RingElem& v, const RingElem& z) {
    const Ring& R = u.ring();
    if (!u.is_unit()) throw std::domain_error("solve_linear_quadratic: u must be a unit");
    if (z.val() < 1) throw std::domain_error("solve_linear_quadratic: z must lie in (pi)");
    RingElem y = R.zero();
    RingElem two = R.from_int(2);
    for (unsigned it = 0; it <= R.r() + 1; ++it) {
        RingElem f = u * y + v * y * y - z;
        if (f.is_zero()) return y;
        RingElem fp = u + two * v * y;  // a unit: val(2vy) >= 1
        y = y - f * fp.inv();
    }
    throw std::logic_error("solve_linear_quadratic: Newton iteration failed");
}

// one solution (x, y) of x^2 + u*x*y + v*y^2 = w for a unit w; needs u a
// unit (the Hensel route), or w a square (then (sqrt w, 0) works)
inline std::pair<RingElem, RingElem> represent_unit(const RingElem& u, const RingElem& v,
                                                    const RingElem& w) {
    const Ring& R = u.ring();
    if (!w.is_unit()) throw std::domain_error("represent_unit: w must be a unit");
    if (!u.is_unit()) {
        if (w.is_square()) return {w.sqrt(), R.zero()};
        throw std::domain_error("represent_unit: needs a unit u or a square w");
    }
    RingElem wp = R.element(R.fq_section(R.fq_sqrt(w.residue())));
    RingElem z = w * (wp * wp).inv() - R.one();
    RingElem yz = solve_linear_quadratic(u, v, z);
    return {wp, wp * yz};
}

}  // namespace sl2rep
