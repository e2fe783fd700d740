#pragma once

#include <string>
#include <vector>

#include "supnorm/group.hpp"

namespace supnorm {

struct FundamentalSetCheck {
    bool ok = false;
    // violated constraint when !ok: "im" or "pair", with the witness (c,d)
    std::string constraint;
    i64 c = 0, d = 0;
    double value = 0;  // Im z resp. |cz+d|^2 of the witness
};

/// Membership in F(2N): Im z >= sqrt(3)/(4N) and |cz+d|^2 >= 1/(2N) for
/// every integer pair (c,d) != (0,0).  The pair condition reduces to a
/// finite check: c^2 y^2 alone exceeds the bound once |c| > 1/(y sqrt(2N)),
/// and for fixed c the minimum over d is attained next to -cx.
inline FundamentalSetCheck in_fundamental_set(const UHPoint& z, i64 N, double slack = 0.0) {
    FundamentalSetCheck r;
    double im_floor = std::sqrt(3.0) / (4.0 * double(N));
    if (z.y < im_floor - slack) {
        r.constraint = "im";
        r.c = 0;
        r.d = 1;
        r.value = z.y;
        return r;
    }
    double bound = 1.0 / (2.0 * double(N));
    // c = 0 gives |d|^2 >= 1 > 1/(2N), never a violation
    i64 cmax = i64(std::floor(std::sqrt(bound) / z.y)) + 1;
    for (i64 c = 1; c <= cmax; ++c) {
        double cy2 = double(c) * double(c) * z.y * z.y;
        if (cy2 >= bound - slack) continue;
        double center = -double(c) * z.x;
        for (i64 d = i64(std::floor(center)) - 1; d <= i64(std::ceil(center)) + 1; ++d) {
            double t = double(c) * z.x + double(d);
            double val = cy2 + t * t;
            if (val < bound - slack) {
                r.constraint = "pair";
                r.c = c;
                r.d = d;
                r.value = val;
                return r;
            }
        }
    }
    r.ok = true;
    return r;
}

namespace detail {

/// Minimizes |cz+d|^2 over coprime (c,d) with c = 0 mod M; ties to (0,1).
struct LatticeMin {
    i64 c = 0, d = 1;
    double value = 1.0;
};

inline LatticeMin lattice_min(const UHPoint& z, i64 M) {
    LatticeMin best;
    best.value = 1.0;  // (c,d) = (0,1)
    for (i64 cc = 1;; ++cc) {
        i64 c = cc * M;
        double cy2 = double(c) * double(c) * z.y * z.y;
        if (cy2 >= best.value) break;
        double center = -double(c) * z.x;
        double half = std::sqrt(best.value - cy2);
        i64 lo = i64(std::floor(center - half)), hi = i64(std::ceil(center + half));
        for (i64 d = lo; d <= hi; ++d) {
            double t = double(c) * z.x + double(d);
            double val = cy2 + t * t;
            if (val < best.value * (1.0 - 1e-15) && gcd_i64(c, d) == 1) best = {c, d, val};
        }
    }
    return best;
}

inline GroupElement complete_bottom_row(i64 c, i64 d) {
    ExtGcd eg = ext_gcd(d, c);  // a d + t c = 1
    if (eg.g != 1) throw std::invalid_argument("complete_bottom_row: gcd(c,d) != 1");
    return {eg.x, -eg.y, c, d};
}

/// Representative of the Atkin-Lehner class Q | 2N (N odd squarefree).
inline GroupElement al_class_representative(i64 Q, i64 N) {
    if (Q == 1) return identity_element();
    if (Q % 2 == 0) {
        GroupElement w2 = atkin_lehner_matrix(2, N);
        return Q == 2 ? w2 : w2 * atkin_lehner_matrix(Q / 2, N);
    }
    return atkin_lehner_matrix(Q, N);
}

}  // namespace detail

struct ReduceResult {
    UHPoint z{0, 1};
    GroupElement delta;
    std::vector<std::string> trace;
};

/// Moves z to the point of maximal imaginary part in its A_0(2N) orbit
/// (translation-normalized to |Re| <= 1/2).  A_0(2N) splits over the
/// Atkin-Lehner classes Q | 2N, and within each class the maximum is an
/// exact lattice minimization of |cw+d|^2 over Gamma_0(2N), so the result
/// is the true orbit maximum rather than a local one.
inline ReduceResult reduce_to_F(const UHPoint& z, i64 N) {
    if (N < 1 || N % 2 == 0 || !is_squarefree_i64(N))
        throw std::invalid_argument("reduce_to_F: N must be odd squarefree");

    ReduceResult best;
    best.z = z;
    best.delta = identity_element();
    double best_im = z.y;
    std::string best_label_q;
    GroupElement best_gamma = identity_element(), best_w = identity_element();

    for (i64 Q : divisors(2 * N)) {
        GroupElement W = detail::al_class_representative(Q, N);
        UHPoint w = Q == 1 ? z : mobius_apply(W, z);
        detail::LatticeMin lm = detail::lattice_min(w, 2 * N);
        GroupElement gamma = detail::complete_bottom_row(lm.c, lm.d);
        double im = w.y / lm.value;
        // strict improvement only, so the identity wins ties
        if (im > best_im * (1.0 + 1e-12)) {
            best_im = im;
            best_gamma = gamma;
            best_w = W;
            best_label_q = "W(" + std::to_string(Q) + ")";
        }
    }

    GroupElement delta = best_gamma * best_w;
    UHPoint moved = mobius_apply(delta, z);
    i64 k = i64(std::floor(moved.x + 0.5));
    if (k != 0) delta = GroupElement{1, -k, 0, 1} * delta;
    ReduceResult out;
    out.delta = delta;
    out.z = mobius_apply(delta, z);
    if (!best_label_q.empty()) out.trace.push_back(best_label_q);
    if (!(best_gamma == identity_element())) out.trace.push_back("gamma=" + best_gamma.str());
    if (k != 0) out.trace.push_back("T^" + std::to_string(-k));

    FundamentalSetCheck chk = in_fundamental_set(out.z, N, 1e-9);
    if (!chk.ok)
        throw std::runtime_error("reduce_to_F: output failed the F(2N) inequalities (" +
                                 chk.constraint + " witness c=" + std::to_string(chk.c) +
                                 " d=" + std::to_string(chk.d) + ")");
    return out;
}

}  // namespace supnorm
