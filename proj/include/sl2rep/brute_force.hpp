#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sl2rep/extension.hpp"

namespace sl2rep {

// Independent verification oracle: SL2(o_r) as a concretely enumerated finite
// group, conjugacy classes, the exact character table via the Dixon-Schneider
// modular method (values lifted to cyclotomic-integer coefficient vectors),
// primitive dimension multisets by restriction to K^ell, a conjugation-sweep
// orbit oracle, and a direct extension-search oracle.

class FiniteGroup {
public:
    Ring R;
    std::vector<uint64_t> keys;
    std::unordered_map<uint64_t, uint32_t> index;
    std::vector<uint32_t> gens;

    explicit FiniteGroup(const Ring& ring) : R(ring.spec()) {}

    uint32_t size() const { return (uint32_t)keys.size(); }
    Mat2 mat(uint32_t i) const { return Mat2::from_key(R, keys[i]); }
    uint32_t id_of(const Mat2& m) const { return index.at(m.key()); }

    uint32_t mul(uint32_t i, uint32_t j) const { return id_of(mat(i) * mat(j)); }
    uint32_t inv(uint32_t i) const { return id_of(mat(i).inverse()); }
    uint32_t identity() const { return 0; }

    uint64_t element_order(uint32_t i) const {
        uint64_t n = 1;
        uint32_t x = i;
        while (x != identity()) {
            x = mul(x, i);
            ++n;
        }
        return n;
    }
};

// complete enumeration of SL2(o_r) by closure of elementary generators
inline FiniteGroup enumerate_sl2(const Ring& R, uint64_t cap = 200000) {
    uint64_t expected = sl2_order(R.spec());
    if (expected > cap)
        throw std::domain_error("enumerate_sl2: |SL2(o_r)| = " + std::to_string(expected) +
                                " exceeds the cap " + std::to_string(cap));
    if (R.size() > 0xffffu) throw std::domain_error("enumerate_sl2: element codes too wide");
    FiniteGroup G(R);
    std::vector<Mat2> gen_mats;
    for (unsigned i = 0; i < R.r(); ++i)
        for (unsigned b = 0; b < R.n(); ++b) {
            RingElem c = R.pi_pow(i) * R.element(R.fq_section(1u << b));
            gen_mats.push_back({R.one(), c, R.zero(), R.one()});
            gen_mats.push_back({R.one(), R.zero(), c, R.one()});
        }
    Mat2 I = Mat2::identity(R);
    G.keys.push_back(I.key());
    G.index.emplace(I.key(), 0);
    for (const Mat2& g : gen_mats) {
        auto [it, fresh] = G.index.emplace(g.key(), (uint32_t)G.keys.size());
        if (fresh) G.keys.push_back(g.key());
        G.gens.push_back(it->second);
    }
    for (uint32_t head = 0; head < G.keys.size(); ++head) {
        Mat2 x = G.mat(head);
        for (const Mat2& g : gen_mats) {
            Mat2 y = x * g;
            auto [it, fresh] = G.index.emplace(y.key(), (uint32_t)G.keys.size());
            if (fresh) G.keys.push_back(y.key());
        }
    }
    if (G.keys.size() != expected)
        throw std::logic_error("enumerate_sl2: generator closure has wrong order");
    return G;
}

struct ConjClasses {
    std::vector<uint32_t> class_of;       // element -> class id
    std::vector<uint32_t> reps;           // class -> representative element
    std::vector<uint32_t> sizes;          // class -> cardinality
    std::vector<uint32_t> inverse_class;  // class of the inverses
    uint32_t count() const { return (uint32_t)reps.size(); }
};

inline ConjClasses conjugacy_classes(const FiniteGroup& G) {
    ConjClasses C;
    C.class_of.assign(G.size(), UINT32_MAX);
    std::vector<Mat2> gen_mats, gen_invs;
    for (uint32_t g : G.gens) {
        gen_mats.push_back(G.mat(g));
        gen_invs.push_back(G.mat(g).inverse());
    }
    std::vector<uint32_t> stack;
    for (uint32_t e = 0; e < G.size(); ++e) {
        if (C.class_of[e] != UINT32_MAX) continue;
        uint32_t cid = C.count();
        C.reps.push_back(e);
        C.sizes.push_back(0);
        C.class_of[e] = cid;
        stack.assign(1, e);
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            ++C.sizes[cid];
            Mat2 xm = G.mat(x);
            for (size_t gi = 0; gi < gen_mats.size(); ++gi) {
                uint32_t y = G.id_of(gen_mats[gi] * xm * gen_invs[gi]);
                if (C.class_of[y] == UINT32_MAX) {
                    C.class_of[y] = cid;
                    stack.push_back(y);
                }
            }
        }
    }
    C.inverse_class.resize(C.count());
    for (uint32_t c = 0; c < C.count(); ++c) C.inverse_class[c] = C.class_of[G.inv(C.reps[c])];
    return C;
}

namespace detail {

inline uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t acc = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return acc;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// cyclotomic polynomial by the recursive exact division
inline std::vector<int64_t> cyclotomic(unsigned m) {
    std::vector<std::vector<int64_t>> phi(m + 1);
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        std::vector<int64_t> num(d + 1, 0);  // X^d - 1
        num[0] = -1;
        num[d] = 1;
        for (unsigned e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            // exact division by phi[e] (monic)
            const std::vector<int64_t>& den = phi[e];
            std::vector<int64_t> quo(num.size() - den.size() + 1, 0);
            for (int i = (int)quo.size() - 1; i >= 0; --i) {
                int64_t c = num[i + den.size() - 1];
                quo[i] = c;
                for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
            }
            num = quo;
            while (num.size() > 1 && num.back() == 0) num.pop_back();
        }
        phi[d] = num;
    }
    return phi[m];
}

// remainder of a coefficient vector modulo the (monic) cyclotomic polynomial
inline std::vector<int64_t> mod_cyclotomic(std::vector<int64_t> v,
                                           const std::vector<int64_t>& phi) {
    size_t d = phi.size() - 1;
    for (size_t i = v.size(); i-- > d;) {
        int64_t c = v[i];
        if (!c) continue;
        for (size_t j = 0; j < phi.size(); ++j) v[i - d + j] -= c * phi[j];
    }
    v.resize(d);
    return v;
}

struct Fp {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b % p) % p; }
    uint64_t mul(uint64_t a, uint64_t b) const { return a * b % p; }
    uint64_t inv(uint64_t a) const { return mod_pow(a, p - 2, p); }
};

// characteristic polynomial of a small matrix over F_p (Hessenberg method)
inline std::vector<uint64_t> charpoly_fp(std::vector<std::vector<uint64_t>> A, const Fp& F) {
    size_t n = A.size();
    // similarity-reduce to upper Hessenberg form
    for (size_t c = 0; c + 2 < n; ++c) {
        size_t piv = c + 1;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            std::swap(A[piv], A[c + 1]);
            for (size_t r = 0; r < n; ++r) std::swap(A[r][piv], A[r][c + 1]);
        }
        uint64_t d = F.inv(A[c + 1][c]);
        for (size_t r = c + 2; r < n; ++r) {
            uint64_t f = F.mul(A[r][c], d);
            if (!f) continue;
            for (size_t k = 0; k < n; ++k) A[r][k] = F.sub(A[r][k], F.mul(f, A[c + 1][k]));
            for (size_t k = 0; k < n; ++k) A[k][c + 1] = F.add(A[k][c + 1], F.mul(f, A[k][r]));
        }
    }
    // p_k(x) = (x - H[k-1][k-1]) p_{k-1}
    //          - sum_i H[i][k-1] (prod_{j=i+1..k-1} H[j][j-1]) p_i
    std::vector<std::vector<uint64_t>> pk(n + 1);
    pk[0] = {1};
    for (size_t k = 1; k <= n; ++k) {
        pk[k].assign(k + 1, 0);
        for (size_t i = 0; i < pk[k - 1].size(); ++i)
            pk[k][i + 1] = F.add(pk[k][i + 1], pk[k - 1][i]);
        uint64_t akk = A[k - 1][k - 1];
        for (size_t i = 0; i < pk[k - 1].size(); ++i)
            pk[k][i] = F.sub(pk[k][i], F.mul(akk, pk[k - 1][i]));
        uint64_t prod = 1;
        for (size_t i = k - 1; i-- > 0;) {
            prod = F.mul(prod, A[i + 1][i]);
            uint64_t coef = F.mul(A[i][k - 1], prod);
            if (coef)
                for (size_t t = 0; t < pk[i].size(); ++t)
                    pk[k][t] = F.sub(pk[k][t], F.mul(coef, pk[i][t]));
        }
    }
    return pk[n];
}

inline uint64_t poly_eval_fp(const std::vector<uint64_t>& c, uint64_t x, const Fp& F) {
    uint64_t acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
    return acc;
}

}  // namespace detail

class CharacterTable {
public:
    ConjClasses classes;
    unsigned m = 1;        // exponent of the group; values live in Z[e^{2 pi i / m}]
    uint64_t p = 0;        // Dixon prime
    uint64_t group_order = 0;
    std::vector<uint64_t> dims;
    // values[i][j]: coefficient vector of chi_i(g_j) over the basis eps^t
    std::vector<std::vector<std::vector<int64_t>>> values;
    bool values_lifted = false;

    uint32_t irr_count() const { return (uint32_t)dims.size(); }
};

// Exact character table.  With lift_values = false only the dimensions are
// produced (enough for zeta polynomials of odd-level groups).
inline CharacterTable character_table(const FiniteGroup& G, bool lift_values = true) {
    CharacterTable T;
    T.classes = conjugacy_classes(G);
    T.group_order = G.size();
    const ConjClasses& C = T.classes;
    uint32_t k = C.count();

    // exponent and the Dixon prime p = 1 (mod m), p > 2 sqrt(|G|)
    uint64_t m = 1;
    for (uint32_t c = 0; c < k; ++c) m = std::lcm(m, G.element_order(C.reps[c]));
    T.m = (unsigned)m;
    uint64_t bound = 1;
    while (bound * bound <= 4 * T.group_order) ++bound;
    uint64_t p = m + 1;
    while (p <= bound || !detail::is_prime(p)) p += m;
    T.p = p;
    detail::Fp F{p};

    // class multiplication matrices (A_i)_{jk} = #{ x in C_i : x^{-1} z_k in C_j }
    std::vector<std::vector<uint32_t>> members(k);
    for (uint32_t e = 0; e < G.size(); ++e) members[C.class_of[e]].push_back(e);
    auto class_matrix = [&](uint32_t i) {
        std::vector<std::vector<uint64_t>> A(k, std::vector<uint64_t>(k, 0));
        for (uint32_t kk = 0; kk < k; ++kk) {
            Mat2 zk = G.mat(C.reps[kk]);
            for (uint32_t x : members[i]) {
                uint32_t y = G.id_of(G.mat(x).inverse() * zk);
                A[C.class_of[y]][kk] += 1;
            }
        }
        return A;
    };

    // split F_p^k into the common eigenvector lines of the class matrices
    std::vector<std::vector<std::vector<uint64_t>>> spaces;  // list of bases (rows)
    {
        std::vector<std::vector<uint64_t>> full(k, std::vector<uint64_t>(k, 0));
        for (uint32_t i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(full);
    }
    for (uint32_t i = 1; i < k; ++i) {
        bool all_lines = true;
        for (auto& V : spaces)
            if (V.size() > 1) all_lines = false;
        if (all_lines) break;
        std::vector<std::vector<uint64_t>> A = class_matrix(i);
        std::vector<std::vector<std::vector<uint64_t>>> next;
        for (auto& V : spaces) {
            size_t d = V.size();
            if (d == 1) {
                next.push_back(V);
                continue;
            }
            // action of A on V in V-coordinates, via an echelon form of V
            // images
            std::vector<std::vector<uint64_t>> img(d, std::vector<uint64_t>(k, 0));
            for (size_t t = 0; t < d; ++t)
                for (size_t c = 0; c < k; ++c) {
                    uint64_t acc = 0;
                    for (size_t j = 0; j < k; ++j)
                        if (V[t][j]) acc = F.add(acc, F.mul(A[c][j] % p, V[t][j]));
                    // note: (A v)_c = sum_j A[c][j] v_j
                    img[t][c] = acc;
                }
            // coordinates: gaussian elimination on [B^T | img^T] columns
            // solve M (d x d) with img[t] = sum_s M[t][s] V[s]
            std::vector<std::vector<uint64_t>> aug = V;  // copy to echelon
            std::vector<std::vector<uint64_t>> coord(d, std::vector<uint64_t>(d, 0));
            for (size_t t = 0; t < d; ++t) coord[t][t] = 1;  // tracks row ops applied to V
            // echelonize aug, applying the same ops to coord
            std::vector<int> pivcol(d, -1);
            size_t row = 0;
            for (size_t col = 0; col < k && row < d; ++col) {
                size_t sel = row;
                while (sel < d && aug[sel][col] == 0) ++sel;
                if (sel == d) continue;
                std::swap(aug[sel], aug[row]);
                std::swap(coord[sel], coord[row]);
                uint64_t dv = F.inv(aug[row][col]);
                for (size_t c = 0; c < k; ++c) aug[row][c] = F.mul(aug[row][c], dv);
                for (size_t c = 0; c < d; ++c) coord[row][c] = F.mul(coord[row][c], dv);
                for (size_t rr = 0; rr < d; ++rr) {
                    if (rr == row || aug[rr][col] == 0) continue;
                    uint64_t f = aug[rr][col];
                    for (size_t c = 0; c < k; ++c)
                        aug[rr][c] = F.sub(aug[rr][c], F.mul(f, aug[row][c]));
                    for (size_t c = 0; c < d; ++c)
                        coord[rr][c] = F.sub(coord[rr][c], F.mul(f, coord[row][c]));
                }
                pivcol[row] = (int)col;
                ++row;
            }
            // express img rows: coords w.r.t. V = coord-transform of echelon coords
            std::vector<std::vector<uint64_t>> M(d, std::vector<uint64_t>(d, 0));
            for (size_t t = 0; t < d; ++t) {
                std::vector<uint64_t> v = img[t];
                for (size_t rr = 0; rr < d; ++rr) {
                    uint64_t c = pivcol[rr] >= 0 ? v[pivcol[rr]] : 0;
                    if (!c) continue;
                    for (size_t cc = 0; cc < k; ++cc)
                        v[cc] = F.sub(v[cc], F.mul(c, aug[rr][cc]));
                    for (size_t cc = 0; cc < d; ++cc)
                        M[t][cc] = F.add(M[t][cc], F.mul(c, coord[rr][cc]));
                }
            }
            // eigen split of M
            std::vector<uint64_t> cp = detail::charpoly_fp(M, F);
            std::vector<uint64_t> roots;
            for (uint64_t lam = 0; lam < p; ++lam)
                if (detail::poly_eval_fp(cp, lam, F) == 0) roots.push_back(lam);
            for (uint64_t lam : roots) {
                // nullspace of (M - lam I)^T acting on coordinate rows:
                // rows w with w M = lam w  <=>  (M^T - lam I) w^T = 0
                std::vector<std::vector<uint64_t>> N(d, std::vector<uint64_t>(d, 0));
                for (size_t a = 0; a < d; ++a)
                    for (size_t b = 0; b < d; ++b) N[a][b] = M[b][a];
                for (size_t a = 0; a < d; ++a) N[a][a] = F.sub(N[a][a], lam);
                // gaussian elimination for the nullspace
                std::vector<int> piv(d, -1);
                size_t rr = 0;
                for (size_t col = 0; col < d && rr < d; ++col) {
                    size_t sel = rr;
                    while (sel < d && N[sel][col] == 0) ++sel;
                    if (sel == d) continue;
                    std::swap(N[sel], N[rr]);
                    uint64_t dv = F.inv(N[rr][col]);
                    for (size_t c = 0; c < d; ++c) N[rr][c] = F.mul(N[rr][c], dv);
                    for (size_t r2 = 0; r2 < d; ++r2) {
                        if (r2 == rr || N[r2][col] == 0) continue;
                        uint64_t f = N[r2][col];
                        for (size_t c = 0; c < d; ++c)
                            N[r2][c] = F.sub(N[r2][c], F.mul(f, N[rr][c]));
                    }
                    piv[rr] = (int)col;
                    ++rr;
                }
                std::vector<char> is_pivot(d, 0);
                for (size_t a = 0; a < rr; ++a)
                    if (piv[a] >= 0) is_pivot[piv[a]] = 1;
                std::vector<std::vector<uint64_t>> basis;
                for (size_t freec = 0; freec < d; ++freec) {
                    if (is_pivot[freec]) continue;
                    std::vector<uint64_t> w(d, 0);
                    w[freec] = 1;
                    for (size_t a = 0; a < rr; ++a)
                        if (piv[a] >= 0) w[piv[a]] = F.sub(0, N[a][freec]);
                    // lift to k-coordinates
                    std::vector<uint64_t> wk(k, 0);
                    for (size_t s = 0; s < d; ++s)
                        if (w[s])
                            for (size_t c = 0; c < k; ++c)
                                wk[c] = F.add(wk[c], F.mul(w[s], V[s][c]));
                    basis.push_back(wk);
                }
                if (!basis.empty()) next.push_back(basis);
            }
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) throw std::logic_error("character_table: eigenspace split failed");

    // central character vectors, normalized at the identity class
    uint32_t id_class = C.class_of[G.identity()];
    std::vector<std::vector<uint64_t>> omega;
    for (auto& V : spaces) {
        if (V.size() != 1) throw std::logic_error("character_table: non-line eigenspace");
        std::vector<uint64_t> w = V[0];
        if (w[id_class] == 0) throw std::logic_error("character_table: omega(1) = 0");
        uint64_t s = F.inv(w[id_class]);
        for (auto& x : w) x = F.mul(x, s);
        omega.push_back(w);
    }

    // dimensions: chi(1)^2 = |G| / sum_j omega_j omega_{j*} / |C_j|
    std::vector<uint64_t> chi_p(k);
    for (auto& w : omega) {
        uint64_t S = 0;
        for (uint32_t j = 0; j < k; ++j)
            S = F.add(S, F.mul(F.mul(w[j], w[C.inverse_class[j]]), F.inv(C.sizes[j] % p)));
        uint64_t d2 = F.mul(T.group_order % p, F.inv(S));
        uint64_t dim = 0;
        for (uint64_t d = 1; d * d <= T.group_order; ++d)
            if (F.mul(d % p, d % p) == d2) {
                dim = d;
                break;
            }
        if (!dim) throw std::logic_error("character_table: dimension not recovered");
        T.dims.push_back(dim);
    }
    // sanity: sum of dim^2 = |G|
    {
        uint64_t mass = 0;
        for (uint64_t d : T.dims) mass += d * d;
        if (mass != T.group_order) throw std::logic_error("character_table: sum dim^2 != |G|");
    }
    if (!lift_values) return T;

    // power maps on classes and the cyclotomic lift
    std::vector<std::vector<uint32_t>> pow_class(m, std::vector<uint32_t>(k));
    for (uint32_t j = 0; j < k; ++j) {
        uint32_t x = G.identity();
        for (uint64_t u = 0; u < m; ++u) {
            pow_class[u][j] = C.class_of[x];
            x = G.mul(x, C.reps[j]);
        }
    }
    uint64_t gen = 2;
    for (;; ++gen) {
        bool ok = detail::mod_pow(gen, (p - 1) / 2, p) == p - 1;
        if (!ok) continue;
        // require exact order p-1: check all prime factors
        uint64_t n = p - 1;
        bool prim = true;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                while (n % d == 0) n /= d;
                if (detail::mod_pow(gen, (p - 1) / d, p) == 1) prim = false;
            }
        if (n > 1 && detail::mod_pow(gen, (p - 1) / n, p) == 1) prim = false;
        if (prim) break;
    }
    uint64_t z = detail::mod_pow(gen, (p - 1) / m, p);
    uint64_t zinv = F.inv(z), minv = F.inv(m % p);
    T.values.resize(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) {
        T.values[i].resize(k);
        std::vector<uint64_t> chi(k);
        for (uint32_t j = 0; j < k; ++j)
            chi[j] = F.mul(F.mul(T.dims[i] % p, omega[i][j]), F.inv(C.sizes[j] % p));
        for (uint32_t j = 0; j < k; ++j) {
            std::vector<int64_t> coeffs(m, 0);
            for (uint64_t t = 0; t < m; ++t) {
                uint64_t acc = 0, zz = 1;  // zz = z^{-ut}
                uint64_t step = detail::mod_pow(zinv, t, p);
                for (uint64_t u = 0; u < m; ++u) {
                    acc = F.add(acc, F.mul(chi[pow_class[u][j]], zz));
                    zz = F.mul(zz, step);
                }
                uint64_t c = F.mul(acc, minv);
                if (c > T.dims[i])
                    throw std::logic_error("character_table: cyclotomic coefficient out of range");
                coeffs[t] = (int64_t)c;
            }
            T.values[i][j] = std::move(coeffs);
        }
    }
    T.values_lifted = true;
    return T;
}

// ---- exact cyclotomic helpers on coefficient vectors -----------------------

// cyclic convolution modulo X^m - 1
inline std::vector<int64_t> cyc_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    size_t m = a.size();
    std::vector<int64_t> out(m, 0);
    for (size_t i = 0; i < m; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < m; ++j) {
            if (!b[j]) continue;
            out[(i + j) % m] += a[i] * b[j];
        }
    }
    return out;
}

// is the value represented by v equal to the rational integer c?
inline bool cyc_equals_int(const std::vector<int64_t>& v, int64_t c,
                           const std::vector<int64_t>& phi) {
    std::vector<int64_t> w = v;
    w[0] -= c;
    for (int64_t x : detail::mod_cyclotomic(w, phi))
        if (x) return false;
    return true;
}

// the rational integer represented by v, if it is one
inline std::optional<int64_t> cyc_to_int(const std::vector<int64_t>& v,
                                         const std::vector<int64_t>& phi) {
    std::vector<int64_t> w = detail::mod_cyclotomic(v, phi);
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i]) return std::nullopt;
    return w[0];
}

// exact row orthogonality: sum_j |C_j| chi_a(g_j) chi_b(g_j^{-1}) = delta |G|
inline bool row_orthogonality_ok(const CharacterTable& T) {
    if (!T.values_lifted) throw std::domain_error("row_orthogonality_ok: values not lifted");
    std::vector<int64_t> phi = detail::cyclotomic(T.m);
    uint32_t k = T.classes.count();
    for (uint32_t a = 0; a < T.irr_count(); ++a)
        for (uint32_t b = a; b < T.irr_count(); ++b) {
            std::vector<int64_t> acc(T.m, 0);
            for (uint32_t j = 0; j < k; ++j) {
                std::vector<int64_t> prod =
                    cyc_mul(T.values[a][j], T.values[b][T.classes.inverse_class[j]]);
                for (size_t t = 0; t < T.m; ++t) acc[t] += (int64_t)T.classes.sizes[j] * prod[t];
            }
            int64_t want = (a == b) ? (int64_t)T.group_order : 0;
            if (!cyc_equals_int(acc, want, phi)) return false;
        }
    return true;
}

// exact column orthogonality: sum_i chi_i(g_a) chi_i(g_b^{-1}) = delta |C_G(g_a)|
inline bool column_orthogonality_ok(const CharacterTable& T) {
    if (!T.values_lifted) throw std::domain_error("column_orthogonality_ok: values not lifted");
    std::vector<int64_t> phi = detail::cyclotomic(T.m);
    uint32_t k = T.classes.count();
    for (uint32_t a = 0; a < k; ++a)
        for (uint32_t b = a; b < k; ++b) {
            std::vector<int64_t> acc(T.m, 0);
            for (uint32_t i = 0; i < T.irr_count(); ++i) {
                std::vector<int64_t> prod =
                    cyc_mul(T.values[i][a], T.values[i][T.classes.inverse_class[b]]);
                for (size_t t = 0; t < T.m; ++t) acc[t] += prod[t];
            }
            int64_t want = (a == b) ? (int64_t)(T.group_order / T.classes.sizes[a]) : 0;
            if (!cyc_equals_int(acc, want, phi)) return false;
        }
    return true;
}

// ---- primitive irreducibles by restriction to K^ell ------------------------

struct ScalarClass {
    uint64_t key = 0;    // canonical representative matrix key over o_{ell'}
    bool cyclic = false;
};

// canonical representative of [A] (A modulo scalars), by key minimization
inline uint64_t scalar_class_key(const Mat2& A) {
    const Ring& L = A.ring();
    uint64_t best = UINT64_MAX;
    for (Ring::code_t x = 0; x < L.size(); ++x) {
        uint64_t key = A.scalar_plus(L.element(x)).key();
        if (key < best) best = key;
    }
    return best;
}

// dimension multiset of the primitive irreducibles: those whose restriction to
// K^ell contains psi_[A] with A cyclic
inline std::map<uint64_t, uint64_t> primitive_dimension_multiset(const FiniteGroup& G,
                                                                 const CharacterTable& T) {
    if (!T.values_lifted)
        throw std::domain_error("primitive_dimension_multiset: values not lifted");
    const Ring& R = G.R;
    unsigned r = R.r(), ell = (r + 1) / 2, ellp = r / 2;
    if (r < 2) throw std::domain_error("primitive_dimension_multiset: needs r >= 2");
    Ring L(R.spec().with_length(ellp));
    std::vector<int64_t> phi = detail::cyclotomic(T.m);

    // K^ell and psi exponents need the character scale m / m_psi
    uint64_t mpsi = R.psi_modulus();
    if (T.m % mpsi) throw std::logic_error("psi values do not embed in mu_m");
    uint64_t scale = T.m / mpsi;

    std::vector<uint32_t> K;  // element ids of K^ell
    for (uint32_t e = 0; e < G.size(); ++e) {
        Mat2 X = G.mat(e);
        if ((X.a - R.one()).val() >= ell && X.b.val() >= ell && X.c.val() >= ell &&
            (X.d - R.one()).val() >= ell)
            K.push_back(e);
    }

    // scalar classes [A] over o_{ell'}, one representative each
    std::vector<std::pair<Mat2, bool>> reps;  // (lift A^ to o_r, cyclic?)
    {
        std::map<uint64_t, Mat2> seen;
        for (Ring::code_t a = 0; a < L.size(); ++a)
            for (Ring::code_t b = 0; b < L.size(); ++b)
                for (Ring::code_t c = 0; c < L.size(); ++c)
                    for (Ring::code_t d = 0; d < L.size(); ++d) {
                        Mat2 A{L.element(a), L.element(b), L.element(c), L.element(d)};
                        uint64_t key = scalar_class_key(A);
                        if (!seen.count(key)) seen.emplace(key, A);
                    }
        for (auto& [key, A] : seen) reps.push_back({A.lift_to(R), is_cyclic(A)});
    }

    // psi_[A] exponents on K, scaled into mu_m
    std::map<uint64_t, uint64_t> out;
    std::vector<uint32_t> kclass(K.size());
    for (size_t t = 0; t < K.size(); ++t) kclass[t] = T.classes.class_of[K[t]];
    for (uint32_t i = 0; i < T.irr_count(); ++i) {
        bool decided = false, primitive = false;
        for (auto& [Ahat, cyc] : reps) {
            // multiplicity <chi|_K, psi_[A]> = (1/|K|) sum chi(x) psi(x)^{-1}
            std::vector<int64_t> acc(T.m, 0);
            for (size_t t = 0; t < K.size(); ++t) {
                uint64_t e = psi_A_exp(Ahat, G.mat(K[t])) * scale % T.m;
                uint64_t rot = (T.m - e) % T.m;
                const std::vector<int64_t>& val = T.values[i][kclass[t]];
                for (size_t u = 0; u < T.m; ++u) acc[(u + rot) % T.m] += val[u];
            }
            auto mult = cyc_to_int(acc, phi);
            if (!mult) throw std::logic_error("restriction multiplicity is not an integer");
            if (*mult % (int64_t)K.size()) throw std::logic_error("non-integral multiplicity");
            if (*mult != 0) {
                decided = true;
                primitive = cyc;
                break;
            }
        }
        if (!decided) throw std::logic_error("no K^ell constituent found");
        if (primitive) out[T.dims[i]] += 1;
    }
    return out;
}

// Equivalent fast criterion: a character lies above only non-cyclic psi_[A]
// exactly when it restricts trivially to the last congruence subgroup K^{r-1},
// i.e. factors through SL2(o_{r-1}).  Needs dimensions and values only on the
// handful of K^{r-1} classes.
inline std::map<uint64_t, uint64_t> primitive_dimension_multiset_fast(
    const FiniteGroup& G, const CharacterTable& T) {
    if (!T.values_lifted)
        throw std::domain_error("primitive_dimension_multiset_fast: values not lifted");
    const Ring& R = G.R;
    unsigned r = R.r();
    if (r < 2) throw std::domain_error("primitive_dimension_multiset_fast: needs r >= 2");
    std::vector<int64_t> phi = detail::cyclotomic(T.m);
    std::vector<uint32_t> K;
    for (uint32_t e = 0; e < G.size(); ++e) {
        Mat2 X = G.mat(e);
        if ((X.a - R.one()).val() >= r - 1 && X.b.val() >= r - 1 && X.c.val() >= r - 1 &&
            (X.d - R.one()).val() >= r - 1)
            K.push_back(e);
    }
    std::map<uint64_t, uint64_t> out;
    for (uint32_t i = 0; i < T.irr_count(); ++i) {
        std::vector<int64_t> acc(T.m, 0);
        for (uint32_t e : K) {
            const std::vector<int64_t>& val = T.values[i][T.classes.class_of[e]];
            for (size_t u = 0; u < T.m; ++u) acc[u] += val[u];
        }
        auto triv_mult = cyc_to_int(acc, phi);
        if (!triv_mult) throw std::logic_error("trivial multiplicity is not an integer");
        if (*triv_mult == 0) out[T.dims[i]] += 1;  // no trivial constituent: primitive
    }
    return out;
}

// ---- orbit oracle -----------------------------------------------------------

struct OrbitOracleResult {
    // canonical [A] key -> orbit id, for cyclic classes only
    std::map<uint64_t, uint32_t> orbit_of;
    std::vector<uint64_t> orbit_sizes;  // number of [A]-classes per orbit
};

// direct conjugation sweep of SL2(o_{ell'}) on cyclic scalar classes
inline OrbitOracleResult orbit_oracle(const Ring& L, uint64_t cap = 200000) {
    FiniteGroup S = enumerate_sl2(L, cap);
    std::vector<Mat2> gen_mats, gen_invs;
    for (uint32_t g : S.gens) {
        gen_mats.push_back(S.mat(g));
        gen_invs.push_back(S.mat(g).inverse());
    }
    OrbitOracleResult res;
    std::map<uint64_t, Mat2> classes;  // canonical key -> some member
    for (Ring::code_t a = 0; a < L.size(); ++a)
        for (Ring::code_t b = 0; b < L.size(); ++b)
            for (Ring::code_t c = 0; c < L.size(); ++c)
                for (Ring::code_t d = 0; d < L.size(); ++d) {
                    Mat2 A{L.element(a), L.element(b), L.element(c), L.element(d)};
                    if (!is_cyclic(A)) continue;
                    classes.emplace(scalar_class_key(A), A);
                }
    for (auto& [key, A0] : classes) {
        if (res.orbit_of.count(key)) continue;
        uint32_t oid = (uint32_t)res.orbit_sizes.size();
        res.orbit_sizes.push_back(0);
        std::vector<Mat2> stack{A0};
        res.orbit_of[key] = oid;
        while (!stack.empty()) {
            Mat2 A = stack.back();
            stack.pop_back();
            ++res.orbit_sizes[oid];
            for (size_t gi = 0; gi < gen_mats.size(); ++gi) {
                Mat2 B = gen_mats[gi] * A * gen_invs[gi];
                uint64_t bk = scalar_class_key(B);
                if (!res.orbit_of.count(bk)) {
                    res.orbit_of[bk] = oid;
                    stack.push_back(B);
                }
            }
        }
    }
    return res;
}

// ---- direct extension-search oracle ------------------------------------------

// does psi_[A] extend to the concretely enumerated subgroup C_S^ell(A~)<e_lambda>?
inline bool extension_oracle(const FiniteGroup& G, const ExtensionContext& ctx,
                             Ring::code_t lambda) {
    const Ring& R = G.R;
    unsigned ell = ctx.ell;
    Mat2 Ahat = ctx.lifted_triple().matrix();
    // members of C_S^ell(A~): X with X mod pi^ell in the pencil x I + y A
    std::vector<uint32_t> H;
    Ring Lsub(R.spec().with_length(ell));
    Mat2 Abar = Ahat.project_to(Lsub);
    for (uint32_t e = 0; e < G.size(); ++e) {
        Mat2 X = G.mat(e).project_to(Lsub);
        RingElem y = X.c * Abar.c.inv();
        RingElem x = X.a - y * Abar.a;
        Mat2 P{x + y * Abar.a, y * Abar.b, y * Abar.c, x + y * Abar.d};
        if (P == X) H.push_back(e);
    }
    // close with e_lambda
    RingElem lam = R.element(lambda);
    Mat2 elam{R.one(), ctx.a_lift().inv() * lam, R.zero(), R.one()};
    std::vector<uint32_t> group = H;
    std::vector<char> in_group(G.size(), 0);
    for (uint32_t e : H) in_group[e] = 1;
    uint32_t el = G.id_of(elam);
    if (!in_group[el]) {
        group.push_back(el);
        in_group[el] = 1;
    }
    for (size_t head = 0; head < group.size(); ++head)
        for (size_t g2 = 0; g2 < group.size(); ++g2) {
            uint32_t y = G.mul(group[head], group[g2]);
            if (!in_group[y]) {
                in_group[y] = 1;
                group.push_back(y);
            }
        }
    // commutator subgroup of the closure
    std::vector<char> in_comm(G.size(), 0);
    std::vector<uint32_t> comm;
    for (size_t a = 0; a < group.size(); ++a)
        for (size_t b = a + 1; b < group.size(); ++b) {
            Mat2 xm = G.mat(group[a]), ym = G.mat(group[b]);
            uint32_t c = G.id_of(xm * ym * xm.inverse() * ym.inverse());
            if (!in_comm[c]) {
                in_comm[c] = 1;
                comm.push_back(c);
            }
        }
    for (size_t head = 0; head < comm.size(); ++head)
        for (size_t g2 = 0; g2 < comm.size(); ++g2) {
            uint32_t y = G.mul(comm[head], comm[g2]);
            if (!in_comm[y]) {
                in_comm[y] = 1;
                comm.push_back(y);
            }
        }
    // psi_[A] must vanish on [H, H] intersect K^ell
    for (uint32_t e : comm) {
        Mat2 X = G.mat(e);
        bool in_K = (X.a - R.one()).val() >= ell && X.b.val() >= ell && X.c.val() >= ell &&
                    (X.d - R.one()).val() >= ell;
        if (in_K && psi_A_exp(Ahat, X) != 0) return false;
    }
    return true;
}

}  // namespace sl2rep
