#include <catch2/catch_amalgamated.hpp>

#include "supnorm/arith.hpp"

using namespace supnorm;

namespace {

// Euler criterion oracle: (c|p) = c^{(p-1)/2} mod p for odd primes p.
int euler_symbol(i64 c, i64 p) {
    i64 cm = mod_floor(c, p);
    if (cm == 0) return 0;
    i64 r = 1, base = cm, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
}

}  // namespace

TEST_CASE("kronecker agrees with the Euler criterion at odd primes") {
    for (i64 p : primes_in(3, 199))
        for (i64 c = -30; c <= 30; ++c) {
            CAPTURE(c, p);
            REQUIRE(kronecker(c, p) == euler_symbol(c, p));
        }
}

TEST_CASE("kronecker pinned values") {
    REQUIRE(kronecker(2, 7) == 1);    // 2^3 = 8 = 1 mod 7
    REQUIRE(kronecker(12, 7) == -1);  // 12^3 = 6 = -1 mod 7
    for (i64 d : {-9, -7, -5, -3, -1, 1, 3, 5, 7, 9}) REQUIRE(kronecker(1, d) == 1);
}

TEST_CASE("kronecker extension table for d in {-1, 0, 2}") {
    // (c|-1) = sign of c, with (0|-1) = 1
    REQUIRE(kronecker(5, -1) == 1);
    REQUIRE(kronecker(-5, -1) == -1);
    REQUIRE(kronecker(0, -1) == 1);
    // (c|0) nonzero only at c = +-1
    REQUIRE(kronecker(1, 0) == 1);
    REQUIRE(kronecker(-1, 0) == 1);
    REQUIRE(kronecker(5, 0) == 0);
    // (c|2) by c mod 8
    REQUIRE(kronecker(1, 2) == 1);
    REQUIRE(kronecker(7, 2) == 1);
    REQUIRE(kronecker(3, 2) == -1);
    REQUIRE(kronecker(5, 2) == -1);
    REQUIRE(kronecker(4, 2) == 0);
}

TEST_CASE("kronecker is multiplicative in the lower argument for odd positive d") {
    for (i64 d1 : {3, 5, 9, 15, 21})
        for (i64 d2 : {3, 7, 11, 25})
            for (i64 c : {-14, -5, 2, 9, 35})
                REQUIRE(kronecker(c, d1 * d2) == kronecker(c, d1) * kronecker(c, d2));
}

TEST_CASE("kronecker matches Shimura's sign rule for negative odd d") {
    for (i64 d : {3, 5, 7, 15, 21})
        for (i64 c : {-9, -2, 1, 5, 22}) {
            if (c == 0) continue;
            int expect = (c > 0 ? 1 : -1) * kronecker(c, d);
            REQUIRE(kronecker(c, -d) == expect);
        }
}

TEST_CASE("eps_d") {
    REQUIRE(eps_exponent(5) == 0);   // eps = 1
    REQUIRE(eps_exponent(7) == 1);   // eps = i
    REQUIRE(eps_exponent(1) == 0);
    REQUIRE(eps_exponent(-1) == 1);  // -1 = 3 mod 4
    REQUIRE(eps_exponent(-3) == 0);  // -3 = 1 mod 4
    REQUIRE_THROWS_AS(eps_exponent(4), std::invalid_argument);
}

TEST_CASE("ext_gcd identity") {
    for (i64 a : {0, 1, -7, 12, 270, -1001})
        for (i64 b : {1, -3, 8, 99, 1024}) {
            auto e = ext_gcd(a, b);
            REQUIRE(e.g == gcd_i64(a, b));
            REQUIRE(a * e.x + b * e.y == e.g);
        }
}

TEST_CASE("integer helpers") {
    REQUIRE(isqrt_i64(0) == 0);
    REQUIRE(isqrt_i64(15) == 3);
    REQUIRE(isqrt_i64(16) == 4);
    REQUIRE(is_square_i64(49));
    REQUIRE_FALSE(is_square_i64(48));
    REQUIRE(v2_i64(48) == 4);
    REQUIRE(odd_part(48) == 3);
    REQUIRE(primes_in(10, 20) == std::vector<i64>{11, 13, 17, 19});
    REQUIRE(is_squarefree_i64(15));
    REQUIRE_FALSE(is_squarefree_i64(12));
    REQUIRE(divisors(6) == std::vector<i64>{1, 2, 3, 6});
}
