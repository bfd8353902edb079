#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "singsurf/corpus.hpp"
#include "singsurf/parabolic.hpp"

using namespace singsurf;

namespace {

NormalFormCoeffs<Rat> random_low_table(std::mt19937_64& rng, int K = 8) {
    NormalFormCoeffs<Rat> c(K);
    c.set_a(2, 0, rand_rat(rng));
    for (int i = 2; i <= 4; ++i) c.set_b(i, rand_rat(rng));
    for (auto [i, j] : {std::pair{3, 0}, {2, 1}, {1, 2}, {0, 3}, {4, 0}, {3, 1}, {2, 2},
                        {1, 3}, {0, 4}})
        c.set_a(i, j, rand_rat(rng));
    return c;
}

}  // namespace

TEST_CASE("sigma_jet reproduces the printed low-order expansion") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 25; ++t) {
        auto c = random_low_table(rng);
        Jet2Q S = sigma_jet(c);
        Rat a20 = c.a(2, 0), a21 = c.a(2, 1), a03 = c.a(0, 3), a30 = c.a(3, 0),
            a12 = c.a(1, 2), a13 = c.a(1, 3), a31 = c.a(3, 1), a04 = c.a(0, 4), b2 = c.b(2);
        REQUIRE(S.coeff(2, 1) == -a20 * a21 / 2);
        REQUIRE(S.coeff(0, 3) == a20 * a03 / 2);
        REQUIRE(S.coeff(4, 0) == a21 * a21 * b2 / 4);
        REQUIRE(S.coeff(2, 2) == ratio(-3, 2) * a21 * a21);
        // u^3 v term (with a31, not the misprinted a13)
        REQUIRE(S.coeff(3, 1) ==
                -(a20 * a31 + Rat(3) * a21 * a30 - Rat(3) * a21 * a12 * b2) / 6);
        REQUIRE(S.coeff(1, 3) ==
                (a20 * a13 + a30 * a03 - Rat(4) * a21 * a12 - a12 * a03 * b2) / 2);
        REQUIRE(S.coeff(0, 4) == (Rat(4) * a20 * a04 + Rat(6) * a21 * a03 -
                                  Rat(12) * a12 * a12 - Rat(3) * a03 * a03 * b2) /
                                     12);
    }
}

TEST_CASE("sigma_jet boundary expansions for higher blow-up index") {
    // S2-shaped table, n = 2: Sigma|_{v=0} leading u^{2n+2} coefficient is
    // (a_{n+1,1}/(n+1)!)^2 b2; d_v Sigma|_{v=0} leading is -a20 a_{n+1,1}/(n+1)!.
    std::mt19937_64 rng(78);
    for (int t = 0; t < 10; ++t) {
        NormalFormCoeffs<Rat> c(9);
        Rat a20 = rand_rat(rng, 3, 2, false), b2 = rand_rat(rng, 3, 2, false);
        Rat a31 = rand_rat(rng, 3, 2, false), a03 = rand_rat(rng);
        c.set_a(2, 0, a20);
        c.set_b(2, b2);
        c.set_a(3, 1, a31);
        c.set_a(0, 3, a03);
        Jet2Q S = sigma_jet(c);
        REQUIRE(S.coeff(6, 0) == (a31 / Rat(6)) * (a31 / Rat(6)) * b2);
        for (int i = 0; i < 6; ++i) REQUIRE(is_zero(S.coeff(i, 0)));
        Jet2Q Sv = S.derivative(Jet2Q::Var::v);
        REQUIRE(Sv.coeff(3, 0) == -a20 * a31 / Rat(6));
        for (int i = 0; i < 3; ++i) REQUIRE(is_zero(Sv.coeff(i, 0)));
        // restriction to u = 0: a20 a03/2 v^3 + O(v^4)
        REQUIRE(S.coeff(0, 3) == a20 * a03 / 2);
        REQUIRE(is_zero(S.coeff(0, 2)));
    }
}

TEST_CASE("newton_polygon vertices") {
    // support {(2n+2,0),(n+1,1),(0,3)} with n=2 -> exactly those vertices
    Jet2Q s(7);
    s.set_coeff(6, 0, Rat(1));
    s.set_coeff(3, 1, Rat(-2));
    s.set_coeff(0, 3, Rat(1));
    auto hull = newton_polygon(s);
    REQUIRE(hull == std::vector<std::pair<int, int>>{{0, 3}, {3, 1}, {6, 0}});

    Jet2Q mono(5);
    mono.set_coeff(2, 2, Rat(3));
    CHECK(newton_polygon(mono) == std::vector<std::pair<int, int>>{{2, 2}});

    // interior points do not create vertices
    Jet2Q s2(7);
    s2.set_coeff(6, 0, Rat(1));
    s2.set_coeff(3, 1, Rat(1));
    s2.set_coeff(0, 3, Rat(1));
    s2.set_coeff(4, 2, Rat(5));
    s2.set_coeff(2, 2, Rat(5));  // on/above the chord (3,1)-(0,3)? (2,2) above chain
    CHECK(newton_polygon(s2) == std::vector<std::pair<int, int>>{{0, 3}, {3, 1}, {6, 0}});

    // G1's Sigma contains (0,3) and (n+1,1) = (2,1)
    auto S1 = sigma_jet(g1_coeffs());
    auto h1 = newton_polygon(S1);
    CHECK(std::find(h1.begin(), h1.end(), std::pair{0, 3}) != h1.end());
    CHECK(std::find(h1.begin(), h1.end(), std::pair{2, 1}) != h1.end());

    CHECK_THROWS_AS(newton_polygon(Jet2Q(4)), std::invalid_argument);
}

TEST_CASE("trace_branch on fixtures") {
    auto g1 = g1_coeffs();
    AType t1 = classify(g1);
    auto br1 = trace_branch(g1, t1);
    // leading coefficient a21 b2/(2 a20) = 1
    CHECK(br1.series.coeff(2) == Rat(1));
    CHECK(br1.contact == 2);

    auto g2 = g2_coeffs();
    AType t2 = classify(g2);
    auto br2 = trace_branch(g2, t2);
    CHECK(is_zero(br2.series.coeff(2)));  // b2 = 0
    CHECK(br2.contact >= 3);

    // inflection germ rejected
    NormalFormCoeffs<Rat> infl(9);
    infl.set_b(2, Rat(1));
    infl.set_a(2, 1, Rat(2));
    infl.set_a(0, 3, Rat(6));
    AType ti = classify(infl);
    CHECK_THROWS_AS(trace_branch(infl, ti), std::domain_error);
}

TEST_CASE("branch contact orders per family") {
    // S2 -> 3, B2 -> 2, C3 -> 3, F4 -> 3 (contact >= m, equality generic)
    auto make = [](Family fam) {
        NormalFormCoeffs<Rat> c(9);
        c.set_a(2, 0, Rat(1));
        c.set_b(2, Rat(1));
        switch (fam) {
            case Family::S:  // S2: a03 != 0, a21 = 0, a31 != 0
                c.set_a(0, 3, Rat(6));
                c.set_a(3, 1, Rat(6));
                break;
            case Family::B:  // B2
                c.set_a(2, 1, Rat(2));
                c.set_a(0, 5, Rat(120));
                break;
            case Family::C:  // C3
                c.set_a(1, 3, Rat(6));
                c.set_a(3, 1, Rat(6));
                break;
            default:  // F4
                c.set_a(3, 1, Rat(6));
                c.set_a(0, 5, Rat(120));
                break;
        }
        return c;
    };
    struct Want {
        Family fam;
        const char* label;
        int m;
    };
    for (auto [fam, label, m] :
         {Want{Family::S, "S2", 3}, Want{Family::B, "B2+", 2}, Want{Family::C, "C3+", 3},
          Want{Family::F, "F4", 3}}) {
        auto c = make(fam);
        AType t = classify(c);
        INFO(t.label());
        REQUIRE(t.label() == label);
        auto br = trace_branch(c, t);
        REQUIRE(br.contact >= m);
        REQUIRE(br.contact == m);  // b2 != 0 makes the leading term nonzero
        REQUIRE(br.guaranteed_order >= t.blowup_n + 1 + br.series.order());
    }
}

TEST_CASE("curve invariants: G2 torsion data") {
    auto g2 = g2_coeffs();
    AType t2 = classify(g2);
    auto br = trace_branch(g2, t2);
    auto inv = curve_invariants(g2, br);
    CHECK(inv.tau0 == Rat(0));
    CHECK(inv.tau0prime == Rat(-1));
    // binormal ~ (0, -a20, b2) = (0, -1, 0)
    CHECK(is_zero(inv.binormal_scaled[0]));
    CHECK(is_zero(inv.binormal_scaled[2]));
    CHECK(inv.binormal0[1] == Catch::Approx(-1.0));
    CHECK(classify_by_torsion(inv) == TorsionClass::A3);

    // G2 with b3 = 1: tau(0) = -1 -> A2
    auto g2b = g2_coeffs();
    g2b.set_b(3, Rat(1));
    auto invb = curve_invariants(g2b, trace_branch(g2b, t2));
    CHECK(invb.tau0 == Rat(-1));
    CHECK(classify_by_torsion(invb) == TorsionClass::A2);

    // G2 with b3 = b4 = 0: both vanish -> A4plus
    auto g2c = g2_coeffs();
    g2c.set_b(4, Rat(0));
    auto invc = curve_invariants(g2c, trace_branch(g2c, t2));
    CHECK(invc.tau0 == Rat(0));
    CHECK(invc.tau0prime == Rat(0));
    CHECK(classify_by_torsion(invc) == TorsionClass::A4plus);
}

TEST_CASE("closed-form torsion matches the jet computation on random germs") {
    std::mt19937_64 rng(91);
    int done = 0;
    while (done < 20) {
        NormalFormCoeffs<Rat> c(9);
        Rat a20 = rand_rat(rng, 3, 2, false);
        Rat b2 = rand_rat(rng), b3 = rand_rat(rng), b4 = rand_rat(rng);
        Rat a21 = rand_rat(rng, 3, 2, false);
        Rat a30 = rand_rat(rng), a40 = rand_rat(rng), a03 = rand_rat(rng, 3, 2, false);
        Rat a12 = rand_rat(rng), a31 = rand_rat(rng);
        c.set_a(2, 0, a20);
        c.set_b(2, b2);
        c.set_b(3, b3);
        c.set_b(4, b4);
        c.set_a(2, 1, a21);
        c.set_a(3, 0, a30);
        c.set_a(4, 0, a40);
        c.set_a(0, 3, a03);
        c.set_a(1, 2, a12);
        c.set_a(3, 1, a31);
        AType t = classify(c);
        if (!t.in_family()) continue;
        auto inv = curve_invariants(c, trace_branch(c, t));
        Rat d = a20 * a20 + b2 * b2;
        Rat tau0 = (a30 * b2 - a20 * b3) / d;
        Rat taup = Rat(-2) * (a30 * b2 - a20 * b3) * (a20 * a30 + b2 * b3) / (d * d) +
                   (a40 * a20 * b2 + Rat(3) * a21 * a21 * b2 * b2 - a20 * a20 * b4) / (a20 * d);
        REQUIRE(inv.tau0 == tau0);
        REQUIRE(inv.tau0prime == taup);
        // binormal line is (0, -a20, b2)
        REQUIRE(is_zero(inv.binormal_scaled[0]));
        REQUIRE(inv.binormal_scaled[1] * b2 + inv.binormal_scaled[2] * a20 == Rat(0));
        ++done;
    }
}

TEST_CASE("n >= 2: closed forms with a21 replaced by 0") {
    std::mt19937_64 rng(92);
    int done = 0;
    while (done < 10) {
        NormalFormCoeffs<Rat> c(9);
        Rat a20 = rand_rat(rng, 3, 2, false);
        Rat b2 = rand_rat(rng), b3 = rand_rat(rng), b4 = rand_rat(rng);
        Rat a30 = rand_rat(rng), a40 = rand_rat(rng);
        Rat a31 = rand_rat(rng, 3, 2, false), a03 = rand_rat(rng, 3, 2, false);
        c.set_a(2, 0, a20);
        c.set_b(2, b2);
        c.set_b(3, b3);
        c.set_b(4, b4);
        c.set_a(3, 0, a30);
        c.set_a(4, 0, a40);
        c.set_a(3, 1, a31);
        c.set_a(0, 3, a03);
        AType t = classify(c);
        if (!(t.family == AType::Family::S && t.k == 2)) continue;
        auto inv = curve_invariants(c, trace_branch(c, t));
        Rat d = a20 * a20 + b2 * b2;
        REQUIRE(inv.tau0 == (a30 * b2 - a20 * b3) / d);
        Rat taup = Rat(-2) * (a30 * b2 - a20 * b3) * (a20 * a30 + b2 * b3) / (d * d) +
                   (a40 * a20 * b2 - a20 * a20 * b4) / (a20 * d);
        REQUIRE(inv.tau0prime == taup);
        ++done;
    }
}

TEST_CASE("binormal coincides with the leading normal at the parabolic direction") {
    // both reduce to the line (0, -a20, b2); checked exactly on cross
    // products and numerically on the unit vectors
    std::mt19937_64 rng(96);
    int done = 0;
    while (done < 15) {
        NormalFormCoeffs<Rat> c(9);
        c.set_a(2, 0, rand_rat(rng, 3, 2, false));
        c.set_b(2, rand_rat(rng, 3, 2, false));
        c.set_b(3, rand_rat(rng));
        c.set_b(4, rand_rat(rng));
        c.set_a(3, 0, rand_rat(rng));
        if (rng() % 2 == 0) {
            c.set_a(2, 1, rand_rat(rng, 3, 2, false));
            c.set_a(0, 3, rand_rat(rng, 3, 2, false));
        } else {
            c.set_a(3, 1, rand_rat(rng, 3, 2, false));
            c.set_a(0, 3, rand_rat(rng, 3, 2, false));
        }
        AType t = classify(c);
        if (!t.in_family()) continue;
        ++done;
        auto pd = parabolic_thetas(c, t.blowup_n);
        REQUIRE(pd.thetas.size() == 1);
        auto inv = curve_invariants(c, trace_branch(c, t));
        auto ln = leading_normal(c, t.blowup_n, pd.thetas[0]);
        // exact: cross product of the two scaled directions vanishes
        REQUIRE(inv.binormal_scaled[1] * ln.scaled[2] - inv.binormal_scaled[2] * ln.scaled[1] ==
                Rat(0));
        REQUIRE(is_zero(inv.binormal_scaled[0]));
        // numeric: unit vectors agree up to overall sign within 1e-10
        double dotp = inv.binormal0[1] * ln.unit[1] + inv.binormal0[2] * ln.unit[2];
        double s = dotp >= 0 ? 1.0 : -1.0;
        REQUIRE(std::abs(s * inv.binormal0[1] - ln.unit[1]) < 1e-10);
        REQUIRE(std::abs(s * inv.binormal0[2] - ln.unit[2]) < 1e-10);
    }
}

TEST_CASE("torsion class agrees with the height class along the binormal") {
    std::mt19937_64 rng(93);
    int done = 0;
    while (done < 25) {
        auto c = random_low_table(rng, 9);
        if (is_zero(c.a(2, 0))) continue;
        AType t = classify(c);
        if (!t.in_family()) continue;
        BranchSeries<Rat> br(trace_branch(c, t));
        auto inv = curve_invariants(c, br);
        auto torsion_type = classify_by_torsion(inv);
        Direction3<Rat> b0(inv.binormal_scaled[0], inv.binormal_scaled[1],
                           inv.binormal_scaled[2]);
        auto h = classify_height(c, b0);
        INFO(t.label() << " torsion " << to_string(torsion_type) << " height "
                       << to_string(h.atype));
        REQUIRE(to_htype(torsion_type) == h.atype);
        ++done;
    }
}

TEST_CASE("regular surface counterpart: Prop-4.3-style report") {
    // a30 = 1 -> A2
    MongeForm<Rat> m1(7);
    m1.k2 = Rat(1);
    m1.a.set_coeff(3, 0, Rat(1));
    m1.a.set_coeff(2, 1, Rat(1));
    auto r1 = regular_parabolic_check(m1);
    CHECK(r1.label == HType::A2);
    CHECK(!r1.binormal_is_normal);

    // k2=1, a30=0, a21=1, a40=1 -> A3 with tau'(0) = 10
    MongeForm<Rat> m2(7);
    m2.k2 = Rat(1);
    m2.a.set_coeff(2, 1, Rat(1));
    m2.a.set_coeff(4, 0, Rat(1));
    auto r2 = regular_parabolic_check(m2);
    CHECK(r2.label == HType::A3);
    CHECK(r2.binormal_is_normal);
    REQUIRE(r2.invariants.has_value());
    CHECK(r2.invariants->tau0 == Rat(0));
    CHECK(r2.invariants->tau0prime == Rat(10));

    // k2=1, a30=0, a21=1, a40=3: a40 k2 - 3 a21^2 = 0 -> A4plus, tau' = 0
    MongeForm<Rat> m3(7);
    m3.k2 = Rat(1);
    m3.a.set_coeff(2, 1, Rat(1));
    m3.a.set_coeff(4, 0, Rat(3));
    auto r3 = regular_parabolic_check(m3);
    CHECK(r3.label == HType::A4plus);
    REQUIRE(r3.invariants.has_value());
    CHECK(r3.invariants->tau0prime == Rat(0));

    // curvature degenerate: 2 a21^2 - a40 k2 = 0 (with a30 = 0)
    MongeForm<Rat> m4(7);
    m4.k2 = Rat(1);
    m4.a.set_coeff(2, 1, Rat(1));
    m4.a.set_coeff(4, 0, Rat(2));
    CHECK_THROWS_AS(regular_parabolic_check(m4), std::domain_error);

    // parabolic set singular at 0
    MongeForm<Rat> m5(7);
    m5.k2 = Rat(1);
    m5.a.set_coeff(0, 3, Rat(1));
    CHECK_THROWS_AS(regular_parabolic_check(m5), std::domain_error);

    // printed tau'(0) formula on random instances
    std::mt19937_64 rng(94);
    int done = 0;
    while (done < 15) {
        MongeForm<Rat> m(7);
        m.k2 = rand_rat(rng, 3, 2, false);
        Rat a21 = rand_rat(rng, 3, 2, false), a40 = rand_rat(rng);
        m.a.set_coeff(2, 1, a21);
        m.a.set_coeff(4, 0, a40);
        m.a.set_coeff(1, 2, rand_rat(rng));
        m.a.set_coeff(3, 1, rand_rat(rng));
        m.a.set_coeff(0, 3, rand_rat(rng));
        m.a.set_coeff(0, 4, rand_rat(rng));
        m.a.set_coeff(5, 0, rand_rat(rng));
        if (is_zero(Rat(2) * a21 * a21 - a40 * m.k2)) continue;
        auto r = regular_parabolic_check(m);
        REQUIRE(r.invariants.has_value());
        REQUIRE(r.invariants->tau0 == Rat(0));
        Rat want = (Rat(8) * a21 * a21 - Rat(3) * a40 * m.k2) *
                   (Rat(3) * a21 * a21 - a40 * m.k2) /
                   (a21 * (Rat(2) * a21 * a21 - a40 * m.k2));
        REQUIRE(r.invariants->tau0prime == want);
        ++done;
    }
}

TEST_CASE("regular surface report label agrees with the height-jet oracle") {
    std::mt19937_64 rng(95);
    int done = 0;
    while (done < 25) {
        MongeForm<Rat> m(7);
        m.k2 = rand_rat(rng, 3, 2, false);
        std::uniform_int_distribution<int> coin(0, 2);
        Rat a30 = coin(rng) == 0 ? Rat(0) : rand_rat(rng);
        Rat a21 = rand_rat(rng, 3, 2, false);
        m.a.set_coeff(3, 0, a30);
        m.a.set_coeff(2, 1, a21);
        m.a.set_coeff(4, 0, rand_rat(rng));
        m.a.set_coeff(1, 2, rand_rat(rng));
        m.a.set_coeff(0, 3, rand_rat(rng));
        m.a.set_coeff(5, 0, rand_rat(rng));
        if (is_zero(a30) && is_zero(Rat(2) * a21 * a21 - m.a.coeff(4, 0) * m.k2)) continue;
        auto rep = regular_parabolic_check(m);
        // the height along +-n(0,0) = (0,0,1) is the graph function itself
        auto ade = ade_recognize(m.graph_jet());
        INFO(to_string(rep.label) << " vs " << to_string(ade));
        REQUIRE(ade.matches(rep.label));
        ++done;
    }
}
