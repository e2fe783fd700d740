#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "supnorm/group.hpp"
#include "supnorm/qexp.hpp"

namespace supnorm {

/// Flattened nonzero terms of a q-expansion for fast repeated numerical
/// evaluation, plus the data behind the certified tail bound.
struct PreparedForm {
    std::vector<double> expo;  // total exponents n + offset, nonzero terms only
    std::vector<double> coef;  // a(n) as binary64
    double s = 0.25;           // kappa/2 = weight_num/4, the tail exponent
    double first_unknown = 1;  // X = offset + P
    double c_f = 0;            // empirical coefficient constant, safety factor 2
    int weight_num = 1;
    i64 level = 4;
    DirichletCharacter character;
};

inline PreparedForm prepare(const QExpansion& f) {
    PreparedForm p;
    p.weight_num = f.weight_num;
    p.level = f.level;
    p.character = f.character;
    p.s = double(f.weight_num) / 4.0;
    double off = f.offset.get_d();
    p.first_unknown = off + double(f.precision());
    double ratio_max = 0.0;
    for (i64 n = 0; n < f.precision(); ++n) {
        if (f.coeffs[size_t(n)] == 0) continue;
        double e = off + double(n);
        double a = f.coeffs[size_t(n)].get_d();
        p.expo.push_back(e);
        p.coef.push_back(a);
        if (e > 0) ratio_max = std::max(ratio_max, std::abs(a) / std::pow(e, p.s));
    }
    p.c_f = 2.0 * ratio_max;
    return p;
}

/// f(z) = sum a(n) e((n+offset) z), from the stored head of the series.
inline cplx series_value(const PreparedForm& p, const UHPoint& z) {
    cplx acc(0, 0);
    for (size_t i = 0; i < p.expo.size(); ++i) {
        double e = p.expo[i];
        double damp = std::exp(-2.0 * M_PI * e * z.y);
        if (damp == 0.0) continue;
        double ph = 2.0 * M_PI * e * z.x;
        acc += p.coef[i] * damp * cplx(std::cos(ph), std::sin(ph));
    }
    return acc;
}

struct EvaluatedPoint {
    double value = 0;       // y^{kappa/2} |truncated series|
    double tail_bound = 0;  // certified bound on the truncation error of `value`
};

/// Minimal y at which the geometric tail majorant applies for this form.
inline double evaluation_floor(const PreparedForm& p) {
    return p.s / (M_PI * p.first_unknown);
}

/// Certified evaluation of F = y^{kappa/2} |f|.  The discarded terms are
/// bounded by c_f * sum_{m >= X} m^s e^{-2 pi m y}, which for y above the
/// floor is at most c_f X^s e^{-2 pi X y} / (1 - e^{-pi y}).
inline EvaluatedPoint evaluate_F(const PreparedForm& p, const UHPoint& z) {
    double ys = std::pow(z.y, p.s);
    if (p.c_f == 0.0) return {ys * std::abs(series_value(p, z)), 0.0};
    double floor = evaluation_floor(p);
    if (z.y < floor)
        throw std::domain_error("evaluate_F: y = " + std::to_string(z.y) +
                                " below certified floor " + std::to_string(floor) +
                                " for this precision");
    double X = p.first_unknown;
    double tail = p.c_f * std::pow(X, p.s) * std::exp(-2.0 * M_PI * z.y * X) /
                  (1.0 - std::exp(-M_PI * z.y));
    return {ys * std::abs(series_value(p, z)), ys * tail};
}

inline EvaluatedPoint evaluate_F(const QExpansion& f, const UHPoint& z) {
    return evaluate_F(prepare(f), z);
}

/// Transformation multiplier eta(d) eps_d^{-2 kappa} (c|d) (cz+d)^kappa
/// for gamma in Gamma_0(level), weight kappa = weight_num/2.
inline cplx half_integral_multiplier(const PreparedForm& p, const GroupElement& g, const UHPoint& z) {
    cplx eta = p.character.value(g.d);
    int e = eps_exponent(g.d);
    cplx eps_pow = unit_pow(cplx(0, 1), -e * p.weight_num);
    int kr = kronecker(g.c, g.d);
    cplx czd = cplx(double(g.c)) * z.as_complex() + cplx(double(g.d));
    cplx czd_pow = std::pow(czd, double(p.weight_num) / 2.0);
    return eta * eps_pow * double(kr) * czd_pow;
}

struct ModularityFailure {
    GroupElement gamma;
    UHPoint z;
    double residual;
};

struct ModularityReport {
    double max_residual = 0;
    bool pass = false;
    std::vector<ModularityFailure> failures;
};

/// Checks f(gamma z) = eta(d) eps_d^{-2k}(c|d)(cz+d)^k f(z) numerically at
/// random points with 0.3 <= Im z <= 2.
inline ModularityReport verify_modularity(const QExpansion& f,
                                          const std::vector<GroupElement>& generators,
                                          double tol, int points_per_gamma = 5,
                                          uint64_t seed = 12345) {
    PreparedForm p = prepare(f);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.3, 2.0);
    ModularityReport rep;
    for (const GroupElement& g : generators) {
        if (!g.in_gamma0(f.level))
            throw std::invalid_argument("verify_modularity: generator not in Gamma_0(level)");
        for (int i = 0; i < points_per_gamma; ++i) {
            UHPoint z(ux(rng), uy(rng));
            cplx lhs = series_value(p, mobius_apply(g, z));
            cplx base = series_value(p, z);
            cplx rhs = half_integral_multiplier(p, g, z) * base;
            double scale = std::max(std::abs(base), 1e-30);
            double rel = std::abs(lhs - rhs) / scale;
            rep.max_residual = std::max(rep.max_residual, rel);
            if (rel > tol) rep.failures.push_back({g, z, rel});
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

/// Picks the character from `candidates` under which f passes the
/// transformation law on random elements of Gamma_0(level).
inline std::optional<DirichletCharacter> determine_character(
    const QExpansion& f, const std::vector<DirichletCharacter>& candidates, double tol = 1e-4,
    int n_gamma = 8, uint64_t seed = 99) {
    std::mt19937_64 rng(seed);
    std::vector<GroupElement> gens;
    // modest entries keep Im(gamma z) evaluable at the form's precision
    for (int i = 0; i < n_gamma; ++i) gens.push_back(random_gamma0(f.level, f.level + 8, rng));
    for (const auto& chi : candidates) {
        QExpansion g = f;
        g.character = chi;
        if (verify_modularity(g, gens, tol).pass) return chi;
    }
    return std::nullopt;
}

/// Relative residual of Delta_kappa F - s(1-s) F at z, s = kappa/2, with
/// F = y^{kappa/2} f and second order finite differences of step h.
inline double laplacian_eigencheck(const PreparedForm& p, const UHPoint& z, double h = 1e-4) {
    auto F = [&](double x, double y) -> cplx {
        UHPoint w(x, y);
        return std::pow(y, p.s) * series_value(p, w);
    };
    double x = z.x, y = z.y;
    cplx f0 = F(x, y);
    cplx fxp = F(x + h, y), fxm = F(x - h, y);
    cplx fyp = F(x, y + h), fym = F(x, y - h);
    cplx fxx = (fxp - 2.0 * f0 + fxm) / (h * h);
    cplx fyy = (fyp - 2.0 * f0 + fym) / (h * h);
    cplx fx = (fxp - fxm) / (2.0 * h);
    double kappa = double(p.weight_num) / 2.0;
    cplx lap = -y * y * (fxx + fyy) + cplx(0, 1) * kappa * y * fx;
    double s = kappa / 2.0;
    cplx resid = lap - s * (1.0 - s) * f0;
    double denom = std::abs(f0);
    return denom > 1e-12 ? std::abs(resid) / denom : std::abs(resid);
}

}  // namespace supnorm
