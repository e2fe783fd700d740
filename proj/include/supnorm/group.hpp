#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "supnorm/arith.hpp"
#include "supnorm/uhp.hpp"

namespace supnorm {

/// Integral 2x2 matrix with positive determinant, acting on the upper
/// half plane by fractional linear transformations.
struct GroupElement {
    i64 a = 1, b = 0, c = 0, d = 1;

    GroupElement() = default;
    GroupElement(i64 a_, i64 b_, i64 c_, i64 d_) : a(a_), b(b_), c(c_), d(d_) {}

    i64 det() const { return a * d - b * c; }
    GroupElement adjugate() const { return {d, -b, -c, a}; }
    i64 content() const { return gcd_i64(gcd_i64(a, b), gcd_i64(c, d)); }

    GroupElement primitive() const {
        i64 g = content();
        if (g == 0) throw std::invalid_argument("primitive: zero matrix");
        return {a / g, b / g, c / g, d / g};
    }

    bool in_gamma0(i64 M) const { return det() == 1 && mod_floor(c, M) == 0; }

    friend GroupElement operator*(const GroupElement& l, const GroupElement& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend bool operator==(const GroupElement& l, const GroupElement& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
    }

    std::string str() const {
        return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
               std::to_string(c) + "," + std::to_string(d) + "]]";
    }
};

inline GroupElement identity_element() { return {1, 0, 0, 1}; }

inline UHPoint mobius_apply(const GroupElement& g, const UHPoint& z) {
    i64 det = g.det();
    if (det <= 0) throw std::invalid_argument("mobius_apply: determinant must be positive");
    cplx num = cplx(double(g.a)) * z.as_complex() + cplx(double(g.b));
    cplx den = cplx(double(g.c)) * z.as_complex() + cplx(double(g.d));
    double n2 = std::norm(den);
    double xx = (num * std::conj(den)).real() / n2;
    double yy = double(det) * z.y / n2;
    return UHPoint(xx, yy);
}

/// Principal-branch square root with the argument cut on the negative
/// real axis, i.e. sqrt(-1) = +i.  std::sqrt already does this.
inline cplx principal_sqrt(cplx w) { return std::sqrt(w); }

/// theta multiplier j(gamma, z) = eps_d^{-1} (c|d) (cz+d)^{1/2} for
/// gamma in Gamma_0(4).  Satisfies theta(gamma z) = j(gamma,z) theta(z).
inline cplx theta_j(const GroupElement& g, const UHPoint& z) {
    if (!g.in_gamma0(4)) throw std::invalid_argument("theta_j: gamma not in Gamma_0(4)");
    int kr = kronecker(g.c, g.d);
    // eps_d^{-1} = i^{-e} = conj(i^e)
    cplx eps_inv = eps_exponent(g.d) == 0 ? cplx(1, 0) : cplx(0, -1);
    cplx czd = cplx(double(g.c)) * z.as_complex() + cplx(double(g.d));
    return eps_inv * double(kr) * principal_sqrt(czd);
}

/// Unimodular half integer weight cocycle
/// J(gamma,z) = eps_d^{-1} (c|d) (cz+d)^{1/2} / |cz+d|^{1/2}.
inline cplx cocycle_J(const GroupElement& g, const UHPoint& z) {
    cplx j = theta_j(g, z);
    return j / std::abs(j);
}

/// Unimodular slash phase phi(z) = ((cz+d)/|cz+d|)^{1/2}, principal branch.
/// The metaplectic lift is tracked only up to this unimodular factor.
inline cplx slash_phi(const GroupElement& g, const UHPoint& z) {
    if (g.det() <= 0) throw std::invalid_argument("slash_phi: determinant must be positive");
    cplx czd = cplx(double(g.c)) * z.as_complex() + cplx(double(g.d));
    return principal_sqrt(czd / std::abs(czd));
}

/// Integer power of a unimodular complex number; negative powers via conjugation.
inline cplx unit_pow(cplx u, int e) {
    cplx base = e < 0 ? std::conj(u) : u;
    unsigned n = e < 0 ? unsigned(-(long long)(e)) : unsigned(e);
    cplx r(1, 0);
    while (n--) r *= base;
    return r;
}

/// F|_k/2 [A] (z) = phi(z)^{-k} F(Az) with the unimodular phi above.
/// weight_num is k, the numerator of the half integral weight k/2.
template <typename F>
cplx slash(F&& f, int weight_num, const GroupElement& g, const UHPoint& z) {
    cplx phi = slash_phi(g, z);
    cplx phik(1, 0);
    for (int i = 0; i < weight_num; ++i) phik *= phi;
    return f(mobius_apply(g, z)) / phik;
}

/// Atkin-Lehner matrix for Gamma_0(4N) (odd Q | N) or Gamma_0(2N) (Q = 2).
/// N must be odd and squarefree.
inline GroupElement atkin_lehner_matrix(i64 Q, i64 N) {
    if (N < 1 || (N & 1) == 0 || !is_squarefree_i64(N))
        throw std::invalid_argument("atkin_lehner_matrix: N must be odd squarefree");
    if (Q == 2) {
        // Search a small integral [[2a, b],[2N c, 2d]] with determinant 2,
        // i.e. 2ad - Nbc = 1.  The displayed Bezout condition in the source
        // material does not pin this down, so take the least such matrix.
        for (i64 B = 1; B <= 64; ++B) {
            for (i64 al = -B; al <= B; ++al)
                for (i64 de = -B; de <= B; ++de)
                    for (i64 be = -B; be <= B; ++be)
                        for (i64 ga = -B; ga <= B; ++ga) {
                            if (std::max({std::abs(al), std::abs(de), std::abs(be), std::abs(ga)}) != B)
                                continue;  // only new shell
                            if (2 * al * de - N * be * ga == 1)
                                return {2 * al, be, 2 * N * ga, 2 * de};
                        }
        }
        throw std::runtime_error("atkin_lehner_matrix: no W(2) found (unreachable)");
    }
    if (Q < 1 || (Q & 1) == 0 || N % Q != 0)
        throw std::invalid_argument("atkin_lehner_matrix: need odd Q | N or Q = 2");
    if (Q == 1) return identity_element();
    i64 m = 4 * N / Q;
    // Q^2 beta - m^2 gamma = 1, solvable since gcd(Q, m) = 1
    ExtGcd eg = ext_gcd(Q * Q, m * m);
    if (eg.g != 1) throw std::runtime_error("atkin_lehner_matrix: gcd(Q^2,(4N/Q)^2) != 1");
    i64 beta = mod_floor(eg.x, m * m);
    i64 gamma = (Q * Q * beta - 1) / (m * m);
    GroupElement W{Q * Q * beta, m, 4 * N * gamma, Q};
    if (W.det() != Q) throw std::runtime_error("atkin_lehner_matrix: determinant check failed");
    return W;
}

/// A = [[1,0],[2N,1]], in Gamma_0(2N) but not Gamma_0(4N).
inline GroupElement deeper_level_shift(i64 N) { return {1, 0, 2 * N, 1}; }

struct NormalizerDecomposition {
    GroupElement gamma;  // in Gamma_0(4N)
    i64 Q = 1;
    int i = 0;  // exponent of A = [[1,0],[2N,1]]
    int j = 0;  // exponent of W(2)
};

/// Decompose delta in A_0(2N) as gamma W(Q) A^i W(2)^j, up to a positive
/// scalar.  Returns nullopt when delta is not a member.
inline std::optional<NormalizerDecomposition> normalizer_decompose(const GroupElement& delta, i64 N) {
    if (delta.det() <= 0 || delta.content() == 0) return std::nullopt;
    GroupElement cur = delta.primitive();
    i64 D = cur.det();
    int j = v2_i64(D);
    if (j > 1) return std::nullopt;
    i64 Q = odd_part(D);
    if (Q < 1 || N % Q != 0) return std::nullopt;

    if (j == 1) {
        GroupElement w2 = atkin_lehner_matrix(2, N);
        GroupElement t = cur * w2.adjugate();  // = cur * W(2)^{-1} * 2
        if (t.content() % 2 != 0) return std::nullopt;
        cur = {t.a / 2, t.b / 2, t.c / 2, t.d / 2};
        if (cur.det() != Q) return std::nullopt;
    }

    int i = 0;
    i64 cmod = mod_floor(cur.c, 4 * N);
    if (cmod == 0) {
        i = 0;
    } else if (cmod == mod_floor(2 * N, 4 * N)) {
        i = 1;
        cur = cur * deeper_level_shift(N).adjugate();
    } else {
        return std::nullopt;
    }

    GroupElement wq = atkin_lehner_matrix(Q, N);
    GroupElement t = cur * wq.adjugate();  // = cur * W(Q)^{-1} * Q
    if (mod_floor(t.a, Q) || mod_floor(t.b, Q) || mod_floor(t.c, Q) || mod_floor(t.d, Q))
        return std::nullopt;
    GroupElement gamma{t.a / Q, t.b / Q, t.c / Q, t.d / Q};
    if (!gamma.in_gamma0(4 * N)) return std::nullopt;
    return NormalizerDecomposition{gamma, Q, i, j};
}

inline GroupElement normalizer_compose(const NormalizerDecomposition& dec, i64 N) {
    GroupElement r = dec.gamma * atkin_lehner_matrix(dec.Q, N);
    if (dec.i) r = r * deeper_level_shift(N);
    if (dec.j) r = r * atkin_lehner_matrix(2, N);
    return r;
}

/// psi(M) = [PSL_2(Z) : Gamma_0(M)] = M prod_{p|M} (1 + 1/p).
inline i64 gamma0_index(i64 M) {
    if (M < 1) throw std::invalid_argument("gamma0_index: M >= 1 required");
    i64 psi = M;
    for (i64 p : prime_factors(M)) psi = psi / p * (p + 1);
    return psi;
}

inline double gamma0_volume(i64 M) {
    return M_PI / 3.0 * double(gamma0_index(M));
}

/// Coset representatives for Gamma_0(M) \ SL_2(Z), one per class of
/// P^1(Z/M).  Deterministic order; cached per M.
inline const std::vector<GroupElement>& gamma0_coset_reps(i64 M) {
    static std::map<i64, std::vector<GroupElement>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    std::vector<GroupElement> reps;
    if (M == 1) {
        reps.push_back(identity_element());
    } else {
        std::vector<i64> units;
        for (i64 u = 1; u < M; ++u)
            if (gcd_i64(u, M) == 1) units.push_back(u);
        std::vector<char> visited(size_t(M) * size_t(M), 0);
        for (i64 c = 0; c < M; ++c) {
            for (i64 d = 0; d < M; ++d) {
                if (gcd_i64(gcd_i64(c, d), M) != 1) continue;
                if (visited[size_t(c) * size_t(M) + size_t(d)]) continue;
                for (i64 u : units)
                    visited[size_t(mod_floor(u * c, M)) * size_t(M) + size_t(mod_floor(u * d, M))] = 1;
                // lift (c,d) to a coprime pair, then complete to SL_2(Z)
                i64 c0 = c, d0 = d;
                if (c0 == 0) { d0 = 1; }
                else { while (gcd_i64(c0, d0) != 1) d0 += M; }
                ExtGcd eg = ext_gcd(d0, c0);  // a*d0 + t*c0 = 1
                GroupElement g{eg.x, -eg.y, c0, d0};
                if (g.det() != 1) throw std::runtime_error("gamma0_coset_reps: lift failed");
                reps.push_back(g);
            }
        }
        if (i64(reps.size()) != gamma0_index(M))
            throw std::runtime_error("gamma0_coset_reps: count != psi(M)");
    }
    return cache.emplace(M, std::move(reps)).first->second;
}

/// Random element of Gamma_0(M) with entries bounded by `bound`.
template <typename Rng>
GroupElement random_gamma0(i64 M, i64 bound, Rng& rng) {
    std::uniform_int_distribution<i64> dist(-bound, bound);
    for (int tries = 0; tries < 100000; ++tries) {
        i64 c = dist(rng), d = dist(rng);
        if (mod_floor(c, M) != 0) continue;
        if (gcd_i64(c, d) != 1) continue;
        ExtGcd eg = ext_gcd(d, c);  // a*d + t*c = 1 -> a = eg.x, b = -eg.y
        i64 a = eg.x, b = -eg.y;
        if (c != 0) {
            // shift a by multiples of c to shrink it (b shifts by d)
            i64 q = (2 * a + c) / (2 * c);
            a -= q * c;
            b -= q * d;
        }
        if (std::abs(a) <= bound && std::abs(b) <= bound) return {a, b, c, d};
    }
    throw std::runtime_error("random_gamma0: sampling failed");
}

}  // namespace supnorm
