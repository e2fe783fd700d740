#pragma once

#include <complex>
#include <string>
#include <vector>

#include "supnorm/group.hpp"
#include "supnorm/qexp.hpp"

namespace supnorm {

/// Upper triangular representatives of Gamma_0(M) \ {primitive integral
/// matrices of determinant ell with lower left = 0 mod M}, for gcd(ell,M)=1:
/// [[a,b],[0,d]] with ad = ell, 0 <= b < d, gcd(a,b,d) = 1.
inline std::vector<GroupElement> coset_reps(i64 ell, i64 M) {
    if (ell < 1) throw std::invalid_argument("coset_reps: ell must be positive");
    if (gcd_i64(ell, M) != 1)
        throw std::invalid_argument("coset_reps: gcd(ell, M) = 1 required");
    std::vector<GroupElement> reps;
    for (i64 a = 1; a <= ell; ++a) {
        if (ell % a != 0) continue;
        i64 d = ell / a;
        for (i64 b = 0; b < d; ++b)
            if (gcd_i64(gcd_i64(a, b), d) == 1) reps.push_back({a, b, 0, d});
    }
    return reps;
}

namespace detail {

inline int real_character_sign(const DirichletCharacter& chi, i64 n, const char* who) {
    auto v = chi.value_exact(n);
    if (!v) return 0;
    if (!v->is_real())
        throw std::invalid_argument(std::string(who) +
                                    ": complex nebentypus values are not supported on the exact path");
    return v->as_sign();
}

}  // namespace detail

/// Half integral weight Hecke operator T(p^2) on exact q-expansions
/// (kappa = lambda + 1/2, i.e. weight_num = 2 lambda + 1):
///   b(n) = a(p^2 n) + eta(p) ((-1)^lambda n | p) p^{lambda-1} a(n)
///        + eta(p^2) p^{2 lambda - 1} a(n / p^2).
inline QExpansion hecke_T(const QExpansion& f, i64 p) {
    if (!is_prime_i64(p)) throw std::invalid_argument("hecke_T: p must be prime");
    if (gcd_i64(p, f.level) != 1)
        throw std::invalid_argument("hecke_T: primes dividing the level are unsupported");
    if (f.weight_num % 2 == 0)
        throw std::invalid_argument("hecke_T: half integral weight required");
    if (f.offset.get_den() != 1)
        throw std::invalid_argument("hecke_T: integer offset (cuspidal normalization) required");

    i64 lambda = (f.weight_num - 1) / 2;
    int etap = detail::real_character_sign(f.character, p, "hecke_T");
    int etap2 = detail::real_character_sign(f.character, p * p, "hecke_T");
    // p^{lambda-1} and p^{2 lambda - 1} as exact rationals (lambda may be 0)
    Rat p_lm1 = make_rat(1, p);
    for (i64 i = 0; i < lambda; ++i) p_lm1 *= p;
    Rat p_2lm1 = make_rat(1, p);
    for (i64 i = 0; i < 2 * lambda; ++i) p_2lm1 *= p;

    i64 sign_lambda = (lambda % 2 == 0) ? 1 : -1;
    i64 P_out = f.precision() / (p * p);
    QExpansion g;
    g.offset = 0;
    g.weight_num = f.weight_num;
    g.level = f.level;
    g.character = f.character;
    g.coeffs.assign(size_t(std::max<i64>(P_out, 1)), Rat(0));
    for (i64 n = 0; n < i64(g.coeffs.size()); ++n) {
        Rat b = f.coeff_at_exponent(p * p * n);
        int kr = kronecker(sign_lambda * n, p);
        if (etap != 0 && kr != 0) b += (etap * kr) * p_lm1 * f.coeff_at_exponent(n);
        if (etap2 != 0 && n % (p * p) == 0)
            b += etap2 * p_2lm1 * f.coeff_at_exponent(n / (p * p));
        g.coeffs[size_t(n)] = b;
    }
    return g;
}

/// T(ell) for general index: identically zero unless ell is a square
/// (vanishing is the half integral weight phenomenon); ell = p^2 delegates
/// to hecke_T.
inline QExpansion hecke_T_index(const QExpansion& f, i64 ell) {
    if (!is_square_i64(ell)) {
        QExpansion g = f;
        g.offset = 0;
        g.coeffs.assign(size_t(std::max<i64>(f.precision(), 1)), Rat(0));
        return g;
    }
    i64 r = isqrt_i64(ell);
    if (r == 1) return f;
    if (is_prime_i64(r)) return hecke_T(f, r);
    throw std::invalid_argument("hecke_T_index: only prime square indices are implemented");
}

struct EigenvalueRecord {
    i64 p = 0;
    cplx tau_p2, tau_p4;           // normalized eigenvalues
    Rat lambda_p2, lambda_comp;    // exact lambda(p^2) and lambda of T(p^2)^2
    double residual_p2 = 0;        // relative proportionality residual of T(p^2) f vs f
    double residual_comp = 0;      // same for the composition
    int eta_p = 1, eta_p2 = 1;
    int weight_num = 1;
    bool eigen = false;
};

namespace detail {

/// Least squares proportionality of g against f over the shared exponent
/// range, exact rational arithmetic; second value is the relative residual.
inline std::pair<Rat, double> proportionality(const QExpansion& g, const QExpansion& f,
                                              i64 shared) {
    Rat num = 0, den = 0;
    for (i64 n = 0; n < shared; ++n) {
        Rat a = f.coeff_at_exponent(n), b = g.coeff_at_exponent(n);
        num += a * b;
        den += a * a;
    }
    if (den == 0) throw std::invalid_argument("proportionality: zero form");
    Rat lam = num / den;
    Rat err2 = 0;
    for (i64 n = 0; n < shared; ++n) {
        Rat a = f.coeff_at_exponent(n), b = g.coeff_at_exponent(n);
        Rat e = b - lam * a;
        err2 += e * e;
    }
    double rel = std::sqrt(err2.get_d() / den.get_d());
    return {lam, rel};
}

}  // namespace detail

/// Extracts the normalized eigenvalues tau(p^2) and tau(p^4).  tau(p^4)
/// comes from the composition T(p^2)^2 together with the quadratic Hecke
/// relation, which avoids a separate degree-p^4 coset decomposition:
/// lambda(p^4) = lambda(p^2)^2 - eta(p^2) p^{2 kappa - 2}.
inline EigenvalueRecord eigenvalue_tau(const QExpansion& f, i64 p, double eigen_tol = 1e-9) {
    if (f.is_zero()) throw std::invalid_argument("eigenvalue_tau: zero form");
    EigenvalueRecord rec;
    rec.p = p;
    rec.weight_num = f.weight_num;
    QExpansion g = hecke_T(f, p);
    QExpansion gg = hecke_T(g, p);
    i64 shared = i64(g.coeffs.size());
    i64 shared2 = i64(gg.coeffs.size());
    auto [lam, resid] = detail::proportionality(g, f, shared);
    auto [lam2, resid2] = detail::proportionality(gg, f, shared2);
    rec.lambda_p2 = lam;
    rec.lambda_comp = lam2;
    rec.residual_p2 = resid;
    rec.residual_comp = resid2;
    rec.eta_p = detail::real_character_sign(f.character, p, "eigenvalue_tau");
    rec.eta_p2 = detail::real_character_sign(f.character, p * p, "eigenvalue_tau");
    rec.eigen = resid <= eigen_tol && resid2 <= eigen_tol;

    int k = f.weight_num;
    double p_km1 = std::pow(double(p), double(k - 2) / 2.0);  // (p^2)^{(kappa-1)/2}
    rec.tau_p2 = lam.get_d() / p_km1;
    // lambda(p^4) = lambda_comp - eta(p^2) p^{k-2}
    double lam4 = lam2.get_d() - double(rec.eta_p2) * std::pow(double(p), double(k - 2));
    rec.tau_p4 = lam4 / std::pow(double(p), double(k - 2));
    return rec;
}

struct HeckeRelationsReport {
    bool pass = true;
    std::vector<std::string> failures;
    double worst = 0;

    void check(bool ok, double err, const std::string& what) {
        worst = std::max(worst, err);
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

/// Identity checks on a set of eigenvalue records:
///   (ii)  tau(p^2)^2 - tau(p^4) = eta(p^2),
///   (iii) max(|tau(p^2)|, |tau(p^4)|) >= 1/2,
///   adjoint symmetry conj(tau) = eta-bar twisted tau (real data: trivial).
inline HeckeRelationsReport check_relation_identities(const std::vector<EigenvalueRecord>& recs,
                                                      double tol = 1e-9) {
    HeckeRelationsReport rep;
    for (const auto& r : recs) {
        cplx lhs = r.tau_p2 * r.tau_p2 - r.tau_p4;
        double err = std::abs(lhs - cplx(double(r.eta_p2), 0));
        rep.check(err <= tol, err, "identity (ii) tau(p^2)^2 - tau(p^4) = eta(p^2) at p = " +
                                       std::to_string(r.p));
        double mx = std::max(std::abs(r.tau_p2), std::abs(r.tau_p4));
        rep.check(mx >= 0.5 - tol, 0.0,
                  "identity (iii) max(|tau(p^2)|,|tau(p^4)|) >= 1/2 at p = " + std::to_string(r.p));
        // conj(lambda) = eta-bar(p^2) lambda; everything here is real
        double adj = std::abs(std::conj(r.tau_p2) - double(r.eta_p2) * r.tau_p2);
        rep.check(adj <= tol, adj, "adjoint symmetry at p = " + std::to_string(r.p));
    }
    return rep;
}

/// Full relation check against a form: the identities above plus the
/// coprime multiplicativity row, with lambda(p^2 q^2) measured from the
/// operator composition rather than assumed.
inline HeckeRelationsReport verify_hecke_relations(const QExpansion& f,
                                                   const std::vector<i64>& primes,
                                                   double tol = 1e-9) {
    std::vector<EigenvalueRecord> recs;
    for (i64 p : primes) recs.push_back(eigenvalue_tau(f, p));
    HeckeRelationsReport rep = check_relation_identities(recs, tol);
    for (const auto& r : recs)
        rep.check(r.eigen, std::max(r.residual_p2, r.residual_comp),
                  "eigenform residual at p = " + std::to_string(r.p));
    int k = f.weight_num;
    for (size_t i = 0; i < primes.size(); ++i) {
        for (size_t j = i + 1; j < primes.size(); ++j) {
            i64 p = primes[i], q = primes[j];
            QExpansion comp = hecke_T(hecke_T(f, q), p);
            auto [lam_pq, resid] = detail::proportionality(comp, f, i64(comp.coeffs.size()));
            double tau_pq = lam_pq.get_d() / std::pow(double(p * q), double(k - 2) / 2.0);
            int eta_p2 = detail::real_character_sign(f.character, p * p, "verify_hecke_relations");
            cplx lhs = std::conj(recs[i].tau_p2) * recs[j].tau_p2;
            double err = std::abs(lhs - double(eta_p2) * tau_pq);
            rep.check(err <= tol && resid <= tol, std::max(err, resid),
                      "multiplicativity (i) at (p,q) = (" + std::to_string(p) + "," +
                          std::to_string(q) + ")");
        }
    }
    return rep;
}

}  // namespace supnorm
