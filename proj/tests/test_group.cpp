#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supnorm/group.hpp"

using namespace supnorm;

TEST_CASE("mobius action") {
    UHPoint i(0, 1);
    REQUIRE(u_distance(mobius_apply(identity_element(), i), i) == 0.0);
    // inversion fixes i
    GroupElement S{0, -1, 1, 0};
    REQUIRE(u_distance(mobius_apply(S, i), i) < 1e-30);
    GroupElement T{1, 1, 0, 1};
    UHPoint ti = mobius_apply(T, i);
    REQUIRE(ti.x == Catch::Approx(1.0));
    REQUIRE(ti.y == Catch::Approx(1.0));
    // Im(gz) = det y / |cz+d|^2
    GroupElement g{3, 1, 2, 1};
    UHPoint w = mobius_apply(g, UHPoint(0.3, 0.7));
    cplx den = cplx(2) * cplx(0.3, 0.7) + cplx(1);
    REQUIRE(w.y == Catch::Approx(double(g.det()) * 0.7 / std::norm(den)));
}

TEST_CASE("u_distance basics") {
    REQUIRE(u_distance(UHPoint(0, 1), UHPoint(0, 1)) == 0.0);
    REQUIRE(u_distance(UHPoint(0, 1), UHPoint(1, 1)) == Catch::Approx(0.25));
    REQUIRE(u_distance(UHPoint(0, 1), UHPoint(0, 2)) == Catch::Approx(0.125));
    // symmetry
    REQUIRE(u_distance(UHPoint(0.4, 0.3), UHPoint(-1, 2)) ==
            Catch::Approx(u_distance(UHPoint(-1, 2), UHPoint(0.4, 0.3))));
}

TEST_CASE("u_distance is Moebius invariant and matches the geodesic formula") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 4);
    for (int t = 0; t < 100; ++t) {
        UHPoint z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
        GroupElement g = random_gamma0(1, 12, rng);
        REQUIRE(u_distance(mobius_apply(g, z), mobius_apply(g, w)) ==
                Catch::Approx(u_distance(z, w)).margin(1e-12));
        // cosh d = 2u + 1 against d = 2 arcsinh(|z-w| / (2 sqrt(yy')))
        double chord = std::hypot(z.x - w.x, z.y - w.y);
        double d2 = 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.y * w.y)));
        REQUIRE(hyperbolic_distance(z, w) == Catch::Approx(d2).margin(1e-12));
    }
}

TEST_CASE("cocycle J basics") {
    UHPoint i(0, 1);
    REQUIRE(std::abs(cocycle_J(identity_element(), i) - cplx(1, 0)) < 1e-15);
    REQUIRE(std::abs(cocycle_J(GroupElement{1, 1, 0, 1}, i) - cplx(1, 0)) < 1e-15);
    REQUIRE_THROWS_AS(cocycle_J(GroupElement{1, 0, 1, 1}, i), std::invalid_argument);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        GroupElement g = random_gamma0(4, 20, rng);
        UHPoint z(0.2, 0.9);
        REQUIRE(std::abs(std::abs(cocycle_J(g, z)) - 1.0) < 1e-14);
    }
}

TEST_CASE("cocycle identity up to a level 4 root of unity independent of z") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-1, 1), uy(0.2, 2.5);
    for (int t = 0; t < 60; ++t) {
        GroupElement g1 = random_gamma0(4, 20, rng), g2 = random_gamma0(4, 20, rng);
        cplx sigma_first(0, 0);
        for (int k = 0; k < 4; ++k) {
            UHPoint z(ux(rng), uy(rng));
            cplx lhs = cocycle_J(g1 * g2, z);
            cplx rhs = cocycle_J(g1, mobius_apply(g2, z)) * cocycle_J(g2, z);
            cplx sigma = lhs / rhs;
            // sigma is a 4th root of unity
            REQUIRE(std::abs(unit_pow(sigma, 4) - cplx(1, 0)) < 1e-10);
            if (k == 0)
                sigma_first = sigma;
            else
                REQUIRE(std::abs(sigma - sigma_first) < 1e-10);
        }
    }
}

TEST_CASE("atkin_lehner_matrix pinned and structural checks") {
    GroupElement w33 = atkin_lehner_matrix(3, 3);
    REQUIRE(w33 == GroupElement{81, 4, 60, 3});
    REQUIRE(w33.det() == 3);

    // Fricke-type Q = N
    for (i64 N : {3, 5, 15, 21}) {
        GroupElement w = atkin_lehner_matrix(N, N);
        REQUIRE(w.det() == N);
        REQUIRE(mod_floor(w.c, 4 * N) == 0);
        REQUIRE(mod_floor(w.a, N) == 0);
        REQUIRE(mod_floor(w.d, N) == 0);
    }

    // W(2) for Gamma_0(2N): [[2a, b],[2Nc, 2d]] with det 2
    for (i64 N : {1, 3, 5, 15}) {
        GroupElement w2 = atkin_lehner_matrix(2, N);
        REQUIRE(w2.det() == 2);
        REQUIRE(mod_floor(w2.a, 2) == 0);
        REQUIRE(mod_floor(w2.d, 2) == 0);
        REQUIRE(mod_floor(w2.c, 2 * N) == 0);
    }

    REQUIRE_THROWS_AS(atkin_lehner_matrix(3, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(atkin_lehner_matrix(3, 9), std::invalid_argument);
}

TEST_CASE("atkin_lehner_matrix normalizes Gamma_0(2N)") {
    std::mt19937_64 rng(5);
    for (i64 N : {3, 15}) {
        for (i64 Q : divisors(N)) {
            GroupElement w = Q == 1 ? identity_element() : atkin_lehner_matrix(Q, N);
            for (int t = 0; t < 20; ++t) {
                GroupElement g = random_gamma0(2 * N, 40 * N, rng);
                GroupElement conj = w * g * w.adjugate();  // Q * (w g w^{-1})
                REQUIRE(conj.content() % w.det() == 0);
                GroupElement h{conj.a / w.det(), conj.b / w.det(), conj.c / w.det(), conj.d / w.det()};
                REQUIRE(h.in_gamma0(2 * N));
            }
        }
        GroupElement w2 = atkin_lehner_matrix(2, N);
        for (int t = 0; t < 20; ++t) {
            GroupElement g = random_gamma0(2 * N, 40 * N, rng);
            GroupElement conj = w2 * g * w2.adjugate();
            REQUIRE(conj.content() % 2 == 0);
            GroupElement h{conj.a / 2, conj.b / 2, conj.c / 2, conj.d / 2};
            REQUIRE(h.in_gamma0(2 * N));
        }
    }
}

TEST_CASE("normalizer_decompose trivial cases") {
    i64 N = 3;
    auto dec = normalizer_decompose(identity_element(), N);
    REQUIRE(dec);
    REQUIRE(dec->gamma == identity_element());
    REQUIRE(dec->Q == 1);
    REQUIRE(dec->i == 0);
    REQUIRE(dec->j == 0);

    auto decA = normalizer_decompose(deeper_level_shift(N), N);
    REQUIRE(decA);
    REQUIRE(decA->gamma == identity_element());
    REQUIRE(decA->Q == 1);
    REQUIRE(decA->i == 1);
    REQUIRE(decA->j == 0);
}

TEST_CASE("normalizer_decompose round trip") {
    std::mt19937_64 rng(17);
    for (i64 N : {1, 3, 15}) {
        std::vector<i64> qs = divisors(N);
        for (int t = 0; t < 40; ++t) {
            NormalizerDecomposition in;
            in.gamma = random_gamma0(4 * N, 60 * N, rng);
            in.Q = qs[size_t(rng() % qs.size())];
            in.i = int(rng() % 2);
            in.j = int(rng() % 2);
            GroupElement delta = normalizer_compose(in, N);
            auto out = normalizer_decompose(delta, N);
            CAPTURE(N, delta.str());
            REQUIRE(out);
            REQUIRE(out->Q == in.Q);
            REQUIRE(out->i == in.i);
            REQUIRE(out->j == in.j);
            REQUIRE(out->gamma == in.gamma);
        }
    }
    // gamma0 W(3) at N = 3 recovers Q = 3
    std::mt19937_64 rng2(23);
    GroupElement g0 = random_gamma0(12, 100, rng2);
    auto dec = normalizer_decompose(g0 * atkin_lehner_matrix(3, 3), 3);
    REQUIRE(dec);
    REQUIRE(dec->Q == 3);
    REQUIRE(dec->gamma.in_gamma0(12));
}

TEST_CASE("normalizer_decompose rejects non-members") {
    REQUIRE_FALSE(normalizer_decompose(GroupElement{1, 0, 1, 1}, 3).has_value());
    REQUIRE_FALSE(normalizer_decompose(GroupElement{1, 0, 0, 4}, 3).has_value());  // det 4
    REQUIRE_FALSE(normalizer_decompose(GroupElement{5, 0, 0, 1}, 3).has_value());  // det 5, 5 not | 3
}

TEST_CASE("gamma0_index and volume") {
    REQUIRE(gamma0_index(1) == 1);
    REQUIRE(gamma0_index(4) == 6);
    REQUIRE(gamma0_index(12) == 24);
    REQUIRE(gamma0_index(64) == 96);
    REQUIRE(gamma0_volume(1) == Catch::Approx(M_PI / 3.0));
}

TEST_CASE("gamma0_coset_reps are a genuine transversal") {
    for (i64 M : {4, 12, 15}) {
        const auto& reps = gamma0_coset_reps(M);
        REQUIRE(i64(reps.size()) == gamma0_index(M));
        for (const auto& g : reps) REQUIRE(g.det() == 1);
        // pairwise inequivalent: g1 g2^{-1} not in Gamma_0(M) (projectively)
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j) {
                GroupElement q = reps[i] * reps[j].adjugate();
                bool equiv = mod_floor(q.c, M) == 0;
                CAPTURE(M, i, j);
                REQUIRE_FALSE(equiv);
            }
    }
}
