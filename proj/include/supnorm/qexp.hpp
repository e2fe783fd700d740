#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "supnorm/character.hpp"

namespace supnorm {

using Rat = mpq_class;

inline Rat make_rat(i64 num, i64 den) {
    Rat q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

/// Exact q-expansion sum_{n<P} a(n) q^{n+offset} with rational offset
/// (denominator dividing 24).  Coefficients are exact rationals and are
/// valid for total exponent < offset + P.
struct QExpansion {
    Rat offset = 0;
    std::vector<Rat> coeffs;
    int weight_num = 1;  // weight kappa = weight_num / 2
    i64 level = 4;
    DirichletCharacter character = DirichletCharacter::trivial(4);

    i64 precision() const { return i64(coeffs.size()); }

    void validate() const {
        if (offset < 0) throw std::invalid_argument("QExpansion: negative offset");
        if (24 % offset.get_den().get_si() != 0)
            throw std::invalid_argument("QExpansion: offset denominator must divide 24");
        if (level < 1) throw std::invalid_argument("QExpansion: level must be positive");
        if (weight_num < 0) throw std::invalid_argument("QExpansion: negative weight");
    }

    bool is_zero() const {
        for (const Rat& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    /// Leading total exponent, or -1 when the stored range is all zero.
    Rat leading_exponent() const {
        for (size_t n = 0; n < coeffs.size(); ++n)
            if (coeffs[n] != 0) return Rat(long(n)) + offset;
        return Rat(-1);
    }

    bool is_cuspidal_at_infinity() const {
        Rat lead = leading_exponent();
        return lead > 0 || lead == -1;
    }

    /// Coefficient at integer total exponent n (requires integer offset).
    Rat coeff_at_exponent(i64 n) const {
        if (offset.get_den() != 1)
            throw std::invalid_argument("coeff_at_exponent: non-integer offset");
        i64 idx = n - offset.get_num().get_si();
        if (idx < 0 || idx >= precision()) return Rat(0);
        return coeffs[size_t(idx)];
    }
};

inline QExpansion theta_series(i64 P) {
    if (P < 1) throw std::invalid_argument("theta_series: P >= 1 required");
    QExpansion f;
    f.offset = 0;
    f.weight_num = 1;
    f.level = 4;
    f.character = DirichletCharacter::trivial(4);
    f.coeffs.assign(size_t(P), Rat(0));
    f.coeffs[0] = 1;
    for (i64 x = 1; x * x < P; ++x) f.coeffs[size_t(x * x)] = 2;
    return f;
}

namespace detail {

/// prod_{n>=1} (1 - q^{mn}) truncated below P, as a sparse list of
/// (exponent, +-1) from the pentagonal number theorem.
inline std::vector<std::pair<i64, i64>> pentagonal_factor(i64 m, i64 P) {
    std::vector<std::pair<i64, i64>> terms;
    terms.emplace_back(0, 1);
    for (i64 k = 1;; ++k) {
        i64 e1 = m * k * (3 * k - 1) / 2;
        i64 e2 = m * k * (3 * k + 1) / 2;
        i64 sign = (k & 1) ? -1 : 1;
        if (e1 >= P && e2 >= P) break;
        if (e1 < P) terms.emplace_back(e1, sign);
        if (e2 < P) terms.emplace_back(e2, sign);
    }
    std::sort(terms.begin(), terms.end());
    return terms;
}

/// prod_{n>=1} (1 - q^{mn})^3 truncated below P (Jacobi's identity),
/// much sparser than applying the pentagonal factor three times.
inline std::vector<std::pair<i64, i64>> jacobi_cube_factor(i64 m, i64 P) {
    std::vector<std::pair<i64, i64>> terms;
    for (i64 k = 0;; ++k) {
        i64 e = m * k * (k + 1) / 2;
        if (e >= P) break;
        terms.emplace_back(e, (k & 1) ? -(2 * k + 1) : (2 * k + 1));
    }
    return terms;
}

inline void mul_sparse_inplace(std::vector<Rat>& a, const std::vector<std::pair<i64, i64>>& s) {
    i64 P = i64(a.size());
    std::vector<Rat> out(a.size(), Rat(0));
    for (auto& [e, w] : s) {
        for (i64 n = 0; n + e < P; ++n) {
            if (a[size_t(n)] == 0) continue;
            out[size_t(n + e)] += w * a[size_t(n)];
        }
    }
    a.swap(out);
}

/// Division by a sparse series with constant term 1.
inline void div_sparse_inplace(std::vector<Rat>& a, const std::vector<std::pair<i64, i64>>& s) {
    i64 P = i64(a.size());
    for (i64 n = 0; n < P; ++n) {
        Rat acc = a[size_t(n)];
        for (auto& [e, w] : s) {
            if (e == 0 || e > n) continue;
            acc -= w * a[size_t(n - e)];
        }
        a[size_t(n)] = acc;
    }
}

/// Aligns two expansions on a common exponent lattice; throws when the
/// offsets differ by a non-integer.
inline i64 offset_shift(const QExpansion& lo, const QExpansion& hi) {
    Rat diff = hi.offset - lo.offset;
    if (diff.get_den() != 1)
        throw std::invalid_argument("qexp add: offset misalignment not representable");
    return diff.get_num().get_si();
}

inline DirichletCharacter character_product(const DirichletCharacter& a, const DirichletCharacter& b) {
    i64 m = a.modulus() / gcd_i64(a.modulus(), b.modulus()) * b.modulus();
    DirichletCharacter ea = a.extend_to(m), eb = b.extend_to(m);
    std::vector<std::pair<i64, RootOfUnity>> vals;
    for (i64 r = 0; r < m; ++r) {
        auto va = ea.value_exact(r);
        if (!va) continue;
        vals.emplace_back(r, *va * *eb.value_exact(r));
    }
    return DirichletCharacter::from_table(m, vals);
}

inline DirichletCharacter character_common(const DirichletCharacter& a, const DirichletCharacter& b) {
    i64 m = a.modulus() / gcd_i64(a.modulus(), b.modulus()) * b.modulus();
    DirichletCharacter ea = a.extend_to(m), eb = b.extend_to(m);
    if (!(ea == eb)) throw std::invalid_argument("qexp add: characters differ");
    return ea;
}

}  // namespace detail

/// Product of eta(m_i z)^{r_i} to precision P.  The level and character
/// are claims supplied by the caller; they are checked empirically via
/// verify_modularity, not derived symbolically.
inline QExpansion eta_product(const std::vector<std::pair<i64, int>>& spec, i64 P,
                              i64 level, const DirichletCharacter& character) {
    if (P < 1) throw std::invalid_argument("eta_product: P >= 1 required");
    Rat offset(0);
    int wnum = 0;
    for (auto& [m, r] : spec) {
        if (m < 1) throw std::invalid_argument("eta_product: scales must be >= 1");
        offset += make_rat(m * r, 24);
        wnum += r;
    }
    if (offset < 0)
        throw std::invalid_argument("eta_product: negative leading exponent (not holomorphic at infinity)");
    QExpansion f;
    f.offset = offset;
    f.weight_num = wnum;
    f.level = level;
    f.character = character;
    f.coeffs.assign(size_t(P), Rat(0));
    f.coeffs[0] = 1;
    for (auto& [m, r] : spec) {
        int cubes = std::abs(r) / 3, rest = std::abs(r) % 3;
        if (cubes) {
            auto cube = detail::jacobi_cube_factor(m, P);
            for (int i = 0; i < cubes; ++i) {
                if (r > 0)
                    detail::mul_sparse_inplace(f.coeffs, cube);
                else
                    detail::div_sparse_inplace(f.coeffs, cube);
            }
        }
        if (rest) {
            auto factor = detail::pentagonal_factor(m, P);
            for (int i = 0; i < rest; ++i) {
                if (r > 0)
                    detail::mul_sparse_inplace(f.coeffs, factor);
                else
                    detail::div_sparse_inplace(f.coeffs, factor);
            }
        }
    }
    return f;
}

inline QExpansion eta_product(const std::vector<std::pair<i64, int>>& spec, i64 P) {
    i64 l = 1;
    for (auto& [m, r] : spec) { (void)r; l = l / gcd_i64(l, m) * m; }
    i64 level = 24 * l;
    return eta_product(spec, P, level, DirichletCharacter::trivial(level));
}

/// Dilation f(z) -> f(dz): exponents and level scale by d, and the
/// nebentypus picks up the real twist (d|.).
inline QExpansion dilate(const QExpansion& f, i64 d) {
    if (d < 1) throw std::invalid_argument("dilate: d >= 1 required");
    QExpansion g;
    g.offset = Rat(d) * f.offset;
    g.weight_num = f.weight_num;
    g.level = f.level * d;
    i64 m = f.character.modulus();
    i64 M = m / gcd_i64(m, 4 * d * g.level) * (4 * d * g.level);
    g.character = detail::character_product(f.character.extend_to(M),
                                            DirichletCharacter::kronecker_character(d, M));
    g.coeffs.assign(size_t(f.precision() * d), Rat(0));
    for (i64 n = 0; n < f.precision(); ++n) g.coeffs[size_t(n * d)] = f.coeffs[size_t(n)];
    return g;
}

inline QExpansion qexp_add(const QExpansion& f, const QExpansion& g) {
    if (f.weight_num != g.weight_num) throw std::invalid_argument("qexp add: weights differ");
    const QExpansion& lo = (f.offset <= g.offset) ? f : g;
    const QExpansion& hi = (f.offset <= g.offset) ? g : f;
    i64 s = detail::offset_shift(lo, hi);
    QExpansion r;
    r.offset = lo.offset;
    r.weight_num = lo.weight_num;
    r.level = f.level / gcd_i64(f.level, g.level) * g.level;
    r.character = detail::character_common(f.character, g.character);
    i64 P = std::min(lo.precision(), s + hi.precision());
    r.coeffs.assign(size_t(P), Rat(0));
    for (i64 n = 0; n < P; ++n) {
        Rat v = n < lo.precision() ? lo.coeffs[size_t(n)] : Rat(0);
        if (n >= s && n - s < hi.precision()) v += hi.coeffs[size_t(n - s)];
        r.coeffs[size_t(n)] = v;
    }
    return r;
}

inline QExpansion qexp_mul(const QExpansion& f, const QExpansion& g) {
    QExpansion r;
    r.offset = f.offset + g.offset;
    if (24 % r.offset.get_den().get_si() != 0)
        throw std::invalid_argument("qexp mul: offset leaves the 1/24 lattice");
    r.weight_num = f.weight_num + g.weight_num;
    r.level = f.level / gcd_i64(f.level, g.level) * g.level;
    r.character = detail::character_product(f.character, g.character);
    i64 P = std::min(f.precision(), g.precision());
    r.coeffs.assign(size_t(P), Rat(0));
    for (i64 i = 0; i < P; ++i) {
        if (f.coeffs[size_t(i)] == 0) continue;
        for (i64 j = 0; i + j < P; ++j) {
            if (g.coeffs[size_t(j)] == 0) continue;
            r.coeffs[size_t(i + j)] += f.coeffs[size_t(i)] * g.coeffs[size_t(j)];
        }
    }
    return r;
}

inline QExpansion qexp_scalar(const Rat& s, const QExpansion& f) {
    QExpansion r = f;
    for (Rat& c : r.coeffs) c *= s;
    return r;
}

inline bool qexp_equal(const QExpansion& f, const QExpansion& g) {
    if (!(f.offset == g.offset) || f.precision() != g.precision()) return false;
    for (i64 n = 0; n < f.precision(); ++n)
        if (f.coeffs[size_t(n)] != g.coeffs[size_t(n)]) return false;
    return true;
}

}  // namespace supnorm
