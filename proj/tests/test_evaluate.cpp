#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supnorm/evaluate.hpp"

using namespace supnorm;

TEST_CASE("evaluate_F on theta at i") {
    // theta(i) = sum_x e^{-2 pi x^2} = 1.0037349...
    QExpansion th = theta_series(50);
    auto r = evaluate_F(th, UHPoint(0, 1));
    double direct = 1.0;
    for (i64 x = 1; x < 50; ++x) direct += 2.0 * std::exp(-2.0 * M_PI * double(x * x));
    REQUIRE(r.value == Catch::Approx(direct).epsilon(1e-12));
    REQUIRE(r.tail_bound < 1e-12);
}

TEST_CASE("evaluate_F is q-periodic and zero on the zero form") {
    QExpansion e83 = eta_product({{8, 3}}, 100, 64, DirichletCharacter::trivial(64));
    PreparedForm p = prepare(e83);
    UHPoint z(0.21, 0.6);
    REQUIRE(evaluate_F(p, z).value ==
            Catch::Approx(evaluate_F(p, UHPoint(z.x + 1.0, z.y)).value).epsilon(1e-13));

    QExpansion zero = qexp_scalar(Rat(0), e83);
    auto rz = evaluate_F(zero, z);
    REQUIRE(rz.value == 0.0);
    REQUIRE(rz.tail_bound == 0.0);
}

TEST_CASE("evaluate_F enforces the certification floor") {
    QExpansion th = theta_series(20);
    PreparedForm p = prepare(th);
    REQUIRE_THROWS_AS(evaluate_F(p, UHPoint(0, evaluation_floor(p) * 0.5)), std::domain_error);
}

TEST_CASE("doubling the precision moves the value by less than the tail bound") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.08, 2.0);
    QExpansion thP = theta_series(400), th2P = theta_series(800);
    QExpansion e83P = eta_product({{8, 3}}, 400, 64, DirichletCharacter::trivial(64));
    QExpansion e832P = eta_product({{8, 3}}, 800, 64, DirichletCharacter::trivial(64));
    PreparedForm a = prepare(thP), a2 = prepare(th2P);
    PreparedForm b = prepare(e83P), b2 = prepare(e832P);
    for (int t = 0; t < 100; ++t) {
        UHPoint z(ux(rng), uy(rng));
        auto ra = evaluate_F(a, z), ra2 = evaluate_F(a2, z);
        REQUIRE(std::abs(ra.value - ra2.value) <= ra.tail_bound + 1e-15);
        auto rb = evaluate_F(b, z), rb2 = evaluate_F(b2, z);
        REQUIRE(std::abs(rb.value - rb2.value) <= rb.tail_bound + 1e-15);
    }
}

TEST_CASE("theta multiplier consistency (operational convention check)") {
    // theta(gamma z) = eps_d^{-1} (c|d) (cz+d)^{1/2} theta(z) on Gamma_0(4),
    // including negative c and d entries.  Im(gamma z) can reach ~1e-4 here,
    // so the series needs a long head.
    QExpansion th = theta_series(100000);
    PreparedForm p = prepare(th);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.5, 1.5);
    for (int t = 0; t < 100; ++t) {
        GroupElement g = random_gamma0(4, 30, rng);
        UHPoint z(ux(rng), uy(rng));
        cplx lhs = series_value(p, mobius_apply(g, z));
        cplx rhs = theta_j(g, z) * series_value(p, z);
        CAPTURE(g.str(), z.x, z.y);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
    }
}

TEST_CASE("verify_modularity") {
    QExpansion th = theta_series(3000);

    SECTION("theta passes on [[1,0],[4,1]]") {
        auto rep = verify_modularity(th, {GroupElement{1, 0, 4, 1}}, 1e-8);
        REQUIRE(rep.pass);
        REQUIRE(rep.max_residual < 1e-8);
    }

    QExpansion e83 = eta_product({{8, 3}}, 500000, 64, DirichletCharacter::trivial(64));

    SECTION("eta(8z)^3 passes on the translation") {
        auto rep = verify_modularity(e83, {GroupElement{1, 1, 0, 1}}, 1e-10);
        REQUIRE(rep.pass);
    }

    SECTION("eta(8z)^3 with trivial character mod 64 passes on random elements") {
        std::mt19937_64 rng(51);
        std::vector<GroupElement> gens;
        for (int i = 0; i < 10; ++i) gens.push_back(random_gamma0(64, 70, rng));
        // double precision leaves ~1e-6 of cancellation noise relative to
        // |f(z)| when gamma pushes z near the real axis
        auto rep = verify_modularity(e83, gens, 3e-5);
        CAPTURE(rep.max_residual);
        REQUIRE(rep.pass);
    }

    SECTION("a matrix outside Gamma_0(64) fails the law") {
        QExpansion wrong = e83;
        wrong.level = 8;  // claim a smaller level so [[1,0],[8,1]] is accepted
        wrong.character = DirichletCharacter::trivial(8);
        auto rep = verify_modularity(wrong, {GroupElement{1, 0, 8, 1}}, 1e-8);
        REQUIRE_FALSE(rep.pass);
        REQUIRE(rep.failures.size() > 0);
    }

    SECTION("empirical character determination picks the trivial character") {
        std::vector<DirichletCharacter> candidates = {
            DirichletCharacter::kronecker_character(8, 64),
            DirichletCharacter::kronecker_character(-4, 64),
            DirichletCharacter::trivial(64),
        };
        auto chi = determine_character(e83, candidates);
        REQUIRE(chi);
        REQUIRE(*chi == DirichletCharacter::trivial(64));
    }
}

TEST_CASE("laplacian eigencheck") {
    QExpansion e83 = eta_product({{8, 3}}, 200, 64, DirichletCharacter::trivial(64));
    PreparedForm p = prepare(e83);
    // weight 3/2: eigenvalue s(1-s) with s = 3/4
    REQUIRE(laplacian_eigencheck(p, UHPoint(0.1, 0.8)) < 1e-5);

    QExpansion th = theta_series(200);
    PreparedForm pt = prepare(th);
    REQUIRE(laplacian_eigencheck(pt, UHPoint(0, 1)) < 1e-5);

    QExpansion zero = qexp_scalar(Rat(0), th);
    REQUIRE(laplacian_eigencheck(prepare(zero), UHPoint(0, 1)) == 0.0);
}
