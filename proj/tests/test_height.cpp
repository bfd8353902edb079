#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "singsurf/corpus.hpp"
#include "singsurf/height.hpp"

using namespace singsurf;

using TD = ThetaDirection<Rat>;
using D3 = Direction3<Rat>;

TEST_CASE("height_jet examples") {
    auto g2 = g2_coeffs(6);
    // along (1,0,0): jet is u -> regular
    auto hx = height_jet(g2, D3(Rat(1), Rat(0), Rat(0)));
    CHECK(hx == Jet2Q::var_u(6));
    // G2 along (0,-1,0): -p = -v^2/2 - u^4/24
    auto hy = height_jet(g2, D3(Rat(0), Rat(-1), Rat(0)));
    Jet2Q want(6);
    want.set_coeff(0, 2, ratio(-1, 2));
    want.set_coeff(4, 0, ratio(-1, 24));
    CHECK(hy == want);
    // G1 along (0,0,1): jet of q
    auto g1 = g1_coeffs(6);
    CHECK(height_jet(g1, D3(Rat(0), Rat(0), Rat(1))) == g1.q_jet());
}

TEST_CASE("classify_height: fixture rows") {
    auto g2 = g2_coeffs();
    auto h = classify_height(g2, D3(Rat(0), Rat(-1), Rat(0)));
    CHECK(h.atype == HType::A3);
    CHECK(h.versal_H);
    CHECK(h.versal_Hext);
    CHECK(h.clause == "3a");

    auto g1 = g1_coeffs();
    auto h1 = classify_height(g1, D3(Rat(0), Rat(1), Rat(1)));
    CHECK(h1.atype == HType::A1);
    CHECK(h1.versal_H);

    // any table with a20 = 0 along (0,0,1) is D4-or-worse, never versal
    NormalFormCoeffs<Rat> infl(6);
    infl.set_b(2, Rat(1));
    infl.set_a(2, 1, Rat(2));
    auto hd = classify_height(infl, D3(Rat(0), Rat(0), Rat(1)));
    CHECK(hd.atype == HType::D4plus);
    CHECK(!hd.versal_H);

    // G1 at the principal normal: a03 = 6 != 0 -> A2, not versal (2b)
    auto h2 = classify_height(g1, D3(Rat(0), Rat(0), Rat(1)));
    CHECK(h2.atype == HType::A2);
    CHECK(!h2.versal_H);
    CHECK(h2.clause == "2b");

    // non-normal-plane direction is regular
    CHECK(classify_height(g1, D3(Rat(1), Rat(1), Rat(0))).atype == HType::regular);
}

TEST_CASE("classify_height_geometric matches the coefficient route on fixtures") {
    auto g2 = g2_coeffs();
    AType t2 = classify(g2);
    REQUIRE(t2.label() == "S1+");
    auto hg = classify_height_geometric(g2, t2, TD::from_tan(Rat(0)));
    CHECK(hg.atype == HType::A3);
    CHECK(hg.versal_H);
    CHECK(hg.clause == "1c");
    auto hc = classify_height(g2, D3::from_theta(g2, 1, TD::from_tan(Rat(0))));
    CHECK(hg == hc);

    auto g1 = g1_coeffs();
    AType t1 = classify(g1);
    CHECK(classify_height_geometric(g1, t1, TD::from_tan(Rat(0))).atype == HType::A1);
    auto hpi = classify_height_geometric(g1, t1, TD::pi_half());
    CHECK(hpi.atype == HType::A2);
    CHECK(!hpi.versal_H);
    CHECK(hpi.route == HeightRoute::combined);
}

TEST_CASE("ade_recognize: splitting lemma cases") {
    int K = 7;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    auto half = ratio(1, 2);

    auto a3 = half * (v * v) + ratio(1, 24) * (u * u * u * u);
    CHECK(to_string(ade_recognize(a3)) == "A3");

    auto a2 = half * (v * v) + ratio(1, 6) * (u * u * u) + ratio(1, 24) * (u * u * u * u);
    CHECK(to_string(ade_recognize(a2)) == "A2");

    // 1/2 v^2 + u^2 v = 1/2 (v+u^2)^2 - 1/2 u^4 -> A3
    auto mixed = half * (v * v) + u * u * v;
    CHECK(to_string(ade_recognize(mixed)) == "A3");

    // Morse
    CHECK(to_string(ade_recognize(u * v)) == "A1");
    CHECK(to_string(ade_recognize(u * u + v * v)) == "A1");
    // corank 2
    CHECK(to_string(ade_recognize(u * u * v - v * v * v)) == "D4plus");
    // regular
    CHECK(to_string(ade_recognize(u + v * v)) == "regular");
    // pure square with nothing else: undetermined within the jet
    CHECK(to_string(ade_recognize(half * (v * v))) == "needs_higher_jet");
    // swapped variables: u^2/2 + v^5
    auto swapped = half * (u * u) + v * v * v * v * v;
    CHECK(to_string(ade_recognize(swapped)) == "A4");
    CHECK_THROWS_AS(ade_recognize(Jet2Q::constant(K, Rat(1))), std::invalid_argument);
}

TEST_CASE("ade_recognize agrees with classify_height on fixture heights") {
    auto g2 = g2_coeffs();
    auto v = D3(Rat(0), Rat(-1), Rat(0));
    auto h = classify_height(g2, v);
    auto ade = ade_recognize(height_jet(g2, v));
    CHECK(ade.matches(h.atype));

    auto g1 = g1_coeffs();
    for (auto dir : {D3(Rat(0), Rat(1), Rat(1)), D3(Rat(0), Rat(-1), Rat(1)),
                     D3(Rat(0), Rat(0), Rat(1)), D3(Rat(0), Rat(1), Rat(0))}) {
        auto hc = classify_height(g1, dir);
        auto ad = ade_recognize(height_jet(g1, dir));
        INFO(to_string(ad) << " vs " << to_string(hc.atype));
        REQUIRE(ad.matches(hc.atype));
    }
}

TEST_CASE("versality matrix rank equals the versality verdict") {
    auto g2 = g2_coeffs();
    auto v = D3(Rat(0), Rat(-1), Rat(0));
    auto r = versality_matrix_rank(g2, v);
    CHECK(r.cols == 14);
    CHECK(r.full());

    // case (3b): v = (0,0,1), a20 != 0, a03 = 0, a20 a04 - 3 a12^2 != 0
    NormalFormCoeffs<Rat> c3b(6);
    c3b.set_a(2, 0, Rat(1));
    c3b.set_a(2, 1, Rat(2));
    c3b.set_a(0, 4, Rat(24));
    auto h3b = classify_height(c3b, D3(Rat(0), Rat(0), Rat(1)));
    REQUIRE(h3b.atype == HType::A3);
    REQUIRE(h3b.clause == "3b");
    auto r3b = versality_matrix_rank(c3b, D3(Rat(0), Rat(0), Rat(1)));
    CHECK(!r3b.full());

    // A1 at G1 with v = (0,1,1): full rank at degree 2
    auto g1 = g1_coeffs();
    auto r1 = versality_matrix_rank(g1, D3(Rat(0), Rat(1), Rat(1)));
    CHECK(r1.cols == 5);
    CHECK(r1.full());

    // 2b is never versal: rank deficient
    auto r2b = versality_matrix_rank(g1, D3(Rat(0), Rat(0), Rat(1)));
    CHECK(!r2b.full());

    CHECK_THROWS_AS(versality_matrix_rank(g1, D3(Rat(1), Rat(0), Rat(0))), std::domain_error);
}

TEST_CASE("route agreement on a random corpus slice") {
    std::mt19937_64 rng(555);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        NormalFormCoeffs<Rat> c(7);
        c.set_a(2, 0, rand_rat(rng, 3, 2, false));
        c.set_b(2, rand_rat(rng));
        c.set_b(3, rand_rat(rng));
        c.set_b(4, rand_rat(rng));
        c.set_a(2, 1, rand_rat(rng, 3, 2, false));
        c.set_a(0, 3, rand_rat(rng));
        c.set_a(3, 0, rand_rat(rng));
        c.set_a(4, 0, rand_rat(rng));
        c.set_a(1, 2, rand_rat(rng));
        c.set_a(0, 4, rand_rat(rng));
        AType ty = classify(c);
        if (!ty.in_family()) continue;
        std::vector<TD> dirs;
        auto pd = parabolic_thetas(c, ty.blowup_n);
        for (auto& th : pd.thetas) dirs.push_back(th);
        for (int s = -2; s <= 2; ++s) dirs.push_back(TD::from_tan(Rat(s)));
        dirs.push_back(TD::pi_half());
        for (const auto& th : dirs) {
            auto geo = classify_height_geometric(c, ty, th);
            auto coef = classify_height(c, D3::from_theta(c, ty.blowup_n, th));
            INFO("theta tan " << (th.is_pi_half() ? "inf" : to_str(th.s / th.c)));
            REQUIRE(geo == coef);
            ++checked;
        }
    }
    REQUIRE(checked > 200);
}
