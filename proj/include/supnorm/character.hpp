#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "supnorm/arith.hpp"

namespace supnorm {

/// Exact root of unity e^{2 pi i num/ord}, stored in lowest terms.
struct RootOfUnity {
    i64 num = 0;
    i64 ord = 1;

    RootOfUnity() = default;
    RootOfUnity(i64 n, i64 o) {
        if (o < 1) throw std::invalid_argument("RootOfUnity: order must be positive");
        n = mod_floor(n, o);
        i64 g = n == 0 ? o : gcd_i64(n, o);
        num = n / g;
        ord = o / g;
    }

    std::complex<double> value() const {
        return std::polar(1.0, 2.0 * M_PI * double(num) / double(ord));
    }
    RootOfUnity conj() const { return RootOfUnity(-num, ord); }
    RootOfUnity operator*(const RootOfUnity& o) const {
        return RootOfUnity(num * o.ord + o.num * ord, ord * o.ord);
    }
    bool is_one() const { return num == 0; }
    bool is_real() const { return ord <= 2; }
    /// +1 or -1 for real roots; throws otherwise.
    int as_sign() const {
        if (!is_real()) throw std::domain_error("RootOfUnity: not real");
        return ord == 1 ? 1 : -1;
    }
    bool operator==(const RootOfUnity& o) const { return num == o.num && ord == o.ord; }
};

/// Dirichlet character as an exact table of roots of unity on the
/// residues coprime to the modulus.
class DirichletCharacter {
public:
    DirichletCharacter() : DirichletCharacter(trivial(1)) {}

    static DirichletCharacter trivial(i64 modulus) {
        DirichletCharacter chi(modulus);
        for (i64 r = 0; r < modulus; ++r)
            if (gcd_i64(r, modulus) == 1) chi.table_[size_t(r)] = RootOfUnity(0, 1);
        return chi;
    }

    /// Real character r -> kronecker(t, r), restricted mod `modulus`.
    /// Well defined when the conductor of (t|.) divides the modulus; the
    /// caller should validate() if in doubt.
    static DirichletCharacter kronecker_character(i64 t, i64 modulus) {
        DirichletCharacter chi(modulus);
        for (i64 r = 0; r < modulus; ++r) {
            if (gcd_i64(r, modulus) != 1) continue;
            int v = kronecker(t, r);
            if (v == 0) throw std::invalid_argument("kronecker_character: vanishing on a unit");
            chi.table_[size_t(r)] = RootOfUnity(v == 1 ? 0 : 1, 2);
        }
        return chi;
    }

    static DirichletCharacter from_table(i64 modulus,
                                         const std::vector<std::pair<i64, RootOfUnity>>& values) {
        DirichletCharacter chi(modulus);
        for (auto& [r, w] : values) {
            i64 rm = mod_floor(r, modulus);
            if (gcd_i64(rm, modulus) != 1)
                throw std::invalid_argument("character table lists a non-unit residue");
            chi.table_[size_t(rm)] = w;
        }
        for (i64 r = 0; r < modulus; ++r)
            if (gcd_i64(r, modulus) == 1 && !chi.table_[size_t(r)])
                throw std::invalid_argument("character table misses a unit residue");
        return chi;
    }

    i64 modulus() const { return modulus_; }

    std::optional<RootOfUnity> value_exact(i64 n) const {
        i64 r = mod_floor(n, modulus_);
        return table_[size_t(r)];
    }

    std::complex<double> value(i64 n) const {
        auto v = value_exact(n);
        return v ? v->value() : std::complex<double>(0.0, 0.0);
    }

    /// +1/-1/0 for real characters; throws when a needed value is complex.
    int value_sign(i64 n) const {
        auto v = value_exact(n);
        if (!v) return 0;
        return v->as_sign();
    }

    bool is_real() const {
        for (auto& v : table_)
            if (v && !v->is_real()) return false;
        return true;
    }

    bool is_even() const { return value_sign_safe(-1) == 1; }

    /// chi(mn) = chi(m) chi(n) for all residues, chi(1) = 1.
    bool validate() const {
        auto one = value_exact(1);
        if (!one || !one->is_one()) return false;
        for (i64 m = 0; m < modulus_; ++m)
            for (i64 n = 0; n < modulus_; ++n) {
                auto vm = value_exact(m), vn = value_exact(n), vmn = value_exact(m * n);
                bool zero = !vm || !vn;
                if (zero != !vmn) return false;
                if (!zero && !(*vm * *vn == *vmn)) return false;
            }
        return true;
    }

    /// Same character composed with reduction mod a multiple of the modulus.
    DirichletCharacter extend_to(i64 new_modulus) const {
        if (new_modulus % modulus_ != 0)
            throw std::invalid_argument("extend_to: new modulus must be a multiple");
        DirichletCharacter chi(new_modulus);
        for (i64 r = 0; r < new_modulus; ++r)
            if (gcd_i64(r, new_modulus) == 1) chi.table_[size_t(r)] = *value_exact(r);
        return chi;
    }

    bool operator==(const DirichletCharacter& o) const {
        if (modulus_ != o.modulus_) return false;
        for (i64 r = 0; r < modulus_; ++r) {
            auto a = table_[size_t(r)], b = o.table_[size_t(r)];
            if (bool(a) != bool(b)) return false;
            if (a && !(*a == *b)) return false;
        }
        return true;
    }

    const std::vector<std::optional<RootOfUnity>>& table() const { return table_; }

private:
    explicit DirichletCharacter(i64 modulus) : modulus_(modulus) {
        if (modulus < 1) throw std::invalid_argument("character: modulus must be positive");
        table_.assign(size_t(modulus), std::nullopt);
    }

    int value_sign_safe(i64 n) const {
        auto v = value_exact(n);
        return v && v->is_real() ? v->as_sign() : 0;
    }

    i64 modulus_;
    std::vector<std::optional<RootOfUnity>> table_;
};

}  // namespace supnorm
