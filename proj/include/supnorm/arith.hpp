#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace supnorm {

using i64 = std::int64_t;

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

// g = gcd(a,b) >= 0 and a*x + b*y = g.
struct ExtGcd { i64 g, x, y; };

inline ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_x = 1, x = 0;
    i64 old_y = 0, y = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t;
        t = old_r - q * r;  old_r = r;  r = t;
        t = old_x - q * x;  old_x = x;  x = t;
        t = old_y - q * y;  old_y = y;  y = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    return {old_r, old_x, old_y};
}

inline i64 isqrt_i64(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt_i64: negative argument");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_i64(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt_i64(n);
    return r * r == n;
}

inline int v2_i64(i64 n) {
    if (n == 0) throw std::invalid_argument("v2_i64: zero argument");
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    return v;
}

inline i64 odd_part(i64 n) {
    if (n == 0) return 0;
    while ((n & 1) == 0) n >>= 1;
    return n;
}

/// Kronecker symbol (a|n), defined for all (a,n) != (0,0).
///
/// Extension convention (matches Shimura's on odd n, any sign):
///   (a|2)  = 0 if a even, +1 if a = +-1 mod 8, -1 if a = +-3 mod 8
///   (a|-1) = +1 if a >= 0, -1 if a < 0
///   (a|0)  = 1 if a = +-1, else 0
/// so for negative odd n, (a|n) = sgn-adjusted Jacobi symbol (a| |n|).
inline int kronecker(i64 a, i64 n) {
    if (a == 0 && n == 0) throw std::invalid_argument("kronecker(0,0) undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int k = 1;
    int v = 0;
    while ((n & 1) == 0) { n /= 2; ++v; }
    if (v & 1) {
        i64 m = mod_floor(a, 8);
        if (m == 1 || m == 7) { /* k *= 1 */ }
        else if (m == 3 || m == 5) k = -k;
        else return 0;  // a even
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // Jacobi on positive odd n by quadratic reciprocity flips
    a = mod_floor(a, n);
    while (a != 0) {
        while ((a & 1) == 0) {
            a /= 2;
            i64 m = n & 7;
            if (m == 3 || m == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

/// eps_d as a power of i: returns e in {0,1} with eps_d = i^e.
/// d must be odd; the same residue rule is applied to negative d.
inline int eps_exponent(i64 d) {
    if ((d & 1) == 0) throw std::invalid_argument("eps_d requires odd d");
    return mod_floor(d, 4) == 1 ? 0 : 1;
}

inline bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::vector<i64> primes_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 n = lo < 2 ? 2 : lo; n <= hi; ++n)
        if (is_prime_i64(n)) out.push_back(n);
    return out;
}

inline bool is_squarefree_i64(i64 n) {
    if (n <= 0) return false;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

inline std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::vector<i64> divisors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace supnorm
