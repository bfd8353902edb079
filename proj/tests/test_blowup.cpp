#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "singsurf/blowup.hpp"
#include "singsurf/corpus.hpp"

using namespace singsurf;

using TD = ThetaDirection<Rat>;

TEST_CASE("calA on fixtures and limit angles") {
    auto g1 = g1_coeffs();
    // G1: A(theta) = 2 for every theta
    for (Rat t : {ratio(0, 1), ratio(1, 3), ratio(-7, 2)}) {
        auto a2 = calA_squared(g1, 1, TD::from_tan(t));
        REQUIRE(a2.scaled == Rat(4));
    }
    CHECK(calA_squared(g1, 1, TD::pi_half()).scaled == Rat(4));
    // theta = 0: A = |a_{n+1,1}|; theta = pi/2: A = (n+1)!
    NormalFormCoeffs<Rat> c(7);
    c.set_a(2, 0, Rat(1));
    c.set_a(3, 1, Rat(-5));
    CHECK(calA_squared(c, 2, TD::from_tan(Rat(0))).scaled == Rat(25));
    CHECK(calA_squared(c, 2, TD::pi_half()).scaled == Rat(36));
}

TEST_CASE("leading normal: fixtures and unit length") {
    auto g1 = g1_coeffs();
    // G1 at theta: (0, -cos, sin)
    auto ln = leading_normal(g1, 1, TD::from_tan(Rat(1)));
    CHECK(ln.unit[0] == 0.0);
    CHECK(ln.unit[1] == Catch::Approx(-std::sqrt(0.5)));
    CHECK(ln.unit[2] == Catch::Approx(std::sqrt(0.5)));
    // theta = pi/2 -> (0, 0, 1), the principal normal direction
    auto lp = leading_normal(g1, 1, TD::pi_half());
    CHECK(is_zero(lp.scaled[1]));
    CHECK(lp.unit[2] == 1.0);
    // G2 at theta = 0 -> (0, -1, 0)
    auto g2 = g2_coeffs();
    auto l0 = leading_normal(g2, 1, TD::from_tan(Rat(0)));
    CHECK(l0.unit[1] == -1.0);
    CHECK(l0.unit[2] == 0.0);

    // unit length exactly: (a c)^2 + ((n+1)! s)^2 == A^2 rho^2
    std::mt19937_64 rng(33);
    for (int t = 0; t < 30; ++t) {
        NormalFormCoeffs<Rat> c(6);
        c.set_a(2, 0, rand_rat(rng));
        c.set_b(2, rand_rat(rng));
        c.set_a(2, 1, rand_rat(rng, 4, 3, false));
        TD th = TD::from_tan(rand_rat(rng));
        auto lnr = leading_normal(c, 1, th);
        Rat lhs = lnr.scaled[1] * lnr.scaled[1] + lnr.scaled[2] * lnr.scaled[2];
        Rat rho2 = th.c * th.c + th.s * th.s;
        REQUIRE(lhs == calA_squared(c, 1, th).scaled * rho2);
    }
}

TEST_CASE("k10: zeros and values on fixtures") {
    auto g1 = g1_coeffs();
    // k10 = sin - cos: zero at pi/4
    CHECK(k10(g1, 1, TD::from_tan(Rat(0))).value == Catch::Approx(-1.0));
    CHECK(is_zero(k10(g1, 1, TD::from_tan(Rat(1))).scaled));
    auto g2 = g2_coeffs();
    // k10 = sin: zero at 0
    CHECK(is_zero(k10(g2, 1, TD::from_tan(Rat(0))).scaled));
    CHECK(k10(g2, 1, TD::pi_half()).value == Catch::Approx(1.0));
    // inflection germ: a20 = 0, b2 = 1, a21 = 2 -> k10(pi/2) = 0
    NormalFormCoeffs<Rat> infl(6);
    infl.set_b(2, Rat(1));
    infl.set_a(2, 1, Rat(2));
    infl.set_a(0, 3, Rat(6));
    CHECK(is_zero(k10(infl, 1, TD::pi_half()).scaled));
}

TEST_CASE("k20: value, sign, pole") {
    auto g1 = g1_coeffs();
    CHECK(k20(g1, 1, TD::from_tan(Rat(0))) == Catch::Approx(-1.0));
    CHECK_THROWS_AS(k20(g1, 1, TD::pi_half()), std::domain_error);
    // sign(k20) = -sign(a_{n+1,1}) on cos > 0
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        NormalFormCoeffs<Rat> c(6);
        Rat a21 = rand_rat(rng, 5, 2, false);
        c.set_a(2, 1, a21);
        TD th = TD::from_tan(rand_rat(rng));
        REQUIRE(std::signbit(k20(c, 1, th)) == (sgn(a21) > 0));
    }
}

TEST_CASE("point type over the singularity: G1 sweep") {
    auto g1 = g1_coeffs();
    CHECK(point_type(g1, 1, TD::from_tan(Rat(0))) == PointType::elliptic);
    CHECK(point_type(g1, 1, TD::from_tan(Rat(1))) == PointType::parabolic);
    CHECK(point_type(g1, 1, TD::from_tan(Rat(2))) == PointType::hyperbolic);
    CHECK_THROWS_AS(point_type(g1, 1, TD::pi_half()), std::domain_error);
    // consistency: parabolic <=> k10 == 0 at sampled directions
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        NormalFormCoeffs<Rat> c(6);
        c.set_a(2, 0, rand_rat(rng));
        c.set_b(2, rand_rat(rng));
        c.set_a(2, 1, rand_rat(rng, 4, 2, false));
        TD th = TD::from_tan(rand_rat(rng));
        bool para = point_type(c, 1, th) == PointType::parabolic;
        REQUIRE(para == is_zero(k10(c, 1, th).scaled));
    }
}

TEST_CASE("deltas on fixtures") {
    auto g2 = g2_coeffs();
    auto d0 = deltas(g2, 1, TD::from_tan(Rat(0)));
    CHECK(d0.d1.scaled == Rat(0));
    CHECK(d0.d2.scaled == Rat(-2));
    CHECK(d0.d3.scaled == Rat(2));
    CHECK(ridge_order(g2, 1, TD::from_tan(Rat(0))) == RidgeOrder::first_order);
    CHECK(!subparabolic(g2, 1, TD::from_tan(Rat(0))));

    auto g1 = g1_coeffs();
    auto d1 = deltas(g1, 1, TD::from_tan(Rat(1)));
    CHECK(d1.d3.scaled == Rat(0));  // sub-parabolic at pi/4
    CHECK(subparabolic(g1, 1, TD::from_tan(Rat(1))));
    CHECK(d1.d1.scaled == Rat(0));  // b3 = a30 = 0: Delta_1 vanishes identically
    CHECK(d1.d2.scaled == Rat(24));  // scaled by rho^2 = 2: Delta_2(pi/4) = 12
    CHECK(d1.d2.value == Catch::Approx(12.0));

    // G2 with b3 = 1: not a ridge at theta = 0
    auto g2b = g2_coeffs();
    g2b.set_b(3, Rat(1));
    CHECK(deltas(g2b, 1, TD::from_tan(Rat(0))).d1.scaled == Rat(2));
    CHECK(ridge_order(g2b, 1, TD::from_tan(Rat(0))) == RidgeOrder::not_ridge);

    // G2 with b4 = 0: higher-order ridge at theta = 0
    auto g2c = g2_coeffs();
    g2c.set_b(4, Rat(0));
    CHECK(ridge_order(g2c, 1, TD::from_tan(Rat(0))) == RidgeOrder::higher_order);

    CHECK_THROWS_AS(deltas(g1, 1, TD::pi_half()), std::domain_error);
}

TEST_CASE("parabolic directions") {
    auto g1 = g1_coeffs();
    auto pd1 = parabolic_thetas(g1, 1);
    REQUIRE(pd1.thetas.size() == 1);
    // tan(theta0) = 2*1/(2*1) = 1
    CHECK(pd1.thetas[0].s / pd1.thetas[0].c == Rat(1));
    CHECK(point_type(g1, 1, pd1.thetas[0]) == PointType::parabolic);

    auto g2 = g2_coeffs();
    auto pd2 = parabolic_thetas(g2, 1);
    REQUIRE(pd2.thetas.size() == 1);
    CHECK(is_zero(pd2.thetas[0].s));  // theta = 0

    NormalFormCoeffs<Rat> infl(6);
    infl.set_b(2, Rat(1));
    infl.set_a(2, 1, Rat(2));
    auto pdi = parabolic_thetas(infl, 1);
    CHECK(pdi.thetas.empty());
    CHECK(pdi.pi_half_case);

    NormalFormCoeffs<Rat> degen(6);
    degen.set_a(2, 1, Rat(2));
    auto pdd = parabolic_thetas(degen, 1);
    CHECK(pdd.all_directions);
}

TEST_CASE("ThetaDirection normalization and pi/2 handling") {
    TD t(-Rat(2), Rat(3));  // c < 0 flips to the representative with c > 0
    CHECK(t.c == Rat(2));
    CHECK(t.s == Rat(-3));
    CHECK(TD::pi_half().is_pi_half());
    CHECK_THROWS_AS(TD(Rat(0), Rat(0)), std::invalid_argument);
    CHECK(TD::from_radians(M_PI / 2).is_pi_half());
    CHECK(TD::from_radians(0.0).radians() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("over_singularity bundles the per-direction record") {
    auto g2 = g2_coeffs();
    auto r = over_singularity(g2, 1, TD::from_tan(Rat(0)));
    REQUIRE(r.type.has_value());
    CHECK(*r.type == PointType::parabolic);
    CHECK(*r.ridge == RidgeOrder::first_order);
    CHECK(!*r.sub_parabolic);
    CHECK(r.k20_val.has_value());
    auto rp = over_singularity(g2, 1, TD::pi_half());
    CHECK(!rp.type.has_value());
    CHECK(!rp.k20_val.has_value());
}
