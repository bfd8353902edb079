#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "singsurf/jet.hpp"

using namespace singsurf;

namespace {

Jet2Q random_jet(std::mt19937_64& rng, int order, int density_pct = 60) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4), pct(0, 99);
    Jet2Q j(order);
    for (int d = 0; d <= order; ++d)
        for (int jj = 0; jj <= d; ++jj)
            if (pct(rng) < density_pct) j.set_coeff(d - jj, jj, ratio(num(rng), den(rng)));
    return j;
}

Jet2Q random_substitution(std::mt19937_64& rng, int order) {
    Jet2Q j = random_jet(rng, order, 40);
    j.set_coeff(0, 0, Rat(0));
    return j;
}

// Independent evaluation oracle: plain monomial sum, no Horner.
double brute_force_eval(const Jet2Q& f, double u, double v) {
    double acc = 0;
    for (int d = 0; d <= f.order(); ++d)
        for (int j = 0; j <= d; ++j)
            acc += to_double(f.coeff(d - j, j)) * std::pow(u, d - j) * std::pow(v, j);
    return acc;
}

}  // namespace

TEST_CASE("jet add: inverses, doubling, identity") {
    int K = 4;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    Jet2Q vsq = v * v;
    CHECK((u + vsq) + (-u) == vsq);
    Jet2Q half_vsq = ratio(1, 2) * vsq;
    CHECK(half_vsq + half_vsq == vsq);
    std::mt19937_64 rng(7);
    Jet2Q p = random_jet(rng, K);
    CHECK(p + Jet2Q(K) == p);
    CHECK_THROWS_AS(p + Jet2Q(K + 1), std::invalid_argument);
}

TEST_CASE("jet mul: basic products and truncation") {
    int K = 2;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    CHECK(u * v == [&] { Jet2Q j(K); j.set_coeff(1, 1, Rat(1)); return j; }());
    Jet2Q s = u + v;
    Jet2Q sq = s * s;
    CHECK(sq.coeff(2, 0) == 1);
    CHECK(sq.coeff(1, 1) == 2);
    CHECK(sq.coeff(0, 2) == 1);
    CHECK((sq * s).is_zero_jet());  // (u+v)^3 truncates to 0 at K=2
}

TEST_CASE("compose2 examples") {
    int K = 4;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    Jet2Q f = v * v;
    Jet2Q sv = v + u * u;
    Jet2Q got = f.compose(u, sv);
    // v^2 + 2u^2 v + u^4
    Jet2Q want(K);
    want.set_coeff(0, 2, Rat(1));
    want.set_coeff(2, 1, Rat(2));
    want.set_coeff(4, 0, Rat(1));
    CHECK(got == want);

    std::mt19937_64 rng(3);
    Jet2Q g = random_jet(rng, K);
    CHECK(g.compose(u, v) == g);  // identity substitution
    Jet2Q uv = u * v;
    CHECK(uv.compose(v, u) == uv);  // swap symmetry

    Jet2Q bad = v + Jet2Q::constant(K, Rat(1));
    CHECK_THROWS_AS(f.compose(u, bad), std::invalid_argument);
}

TEST_CASE("diff examples and commutation") {
    int K = 4;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    CHECK((ratio(1, 2) * (v * v)).derivative(Jet2Q::Var::v) == v.truncated(K - 1));
    Jet2Q uv3 = u * v * v * v;
    CHECK(uv3.derivative(Jet2Q::Var::u) == (v * v * v).truncated(K - 1));
    CHECK((v * v).derivative(Jet2Q::Var::u).is_zero_jet());

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        Jet2Q f = random_jet(rng, 7);
        auto uv = f.derivative(Jet2Q::Var::u).derivative(Jet2Q::Var::v);
        auto vu = f.derivative(Jet2Q::Var::v).derivative(Jet2Q::Var::u);
        REQUIRE(uv == vu);
    }
}

TEST_CASE("ring laws up to truncation (randomized)") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 25; ++t) {
        int K = 3 + int(rng() % 5);
        Jet2Q a = random_jet(rng, K), b = random_jet(rng, K), c = random_jet(rng, K);
        REQUIRE(a + b == b + a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("compose2 associativity of substitution (randomized)") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
        int K = 5;
        Jet2Q f = random_jet(rng, K);
        Jet2Q a = random_substitution(rng, K), b = random_substitution(rng, K);
        Jet2Q c = random_substitution(rng, K), d = random_substitution(rng, K);
        Jet2Q lhs = f.compose(a, b).compose(c, d);
        Jet2Q rhs = f.compose(a.compose(c, d), b.compose(c, d));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("eval_numeric agrees with brute-force oracle and exact eval") {
    // 1/2 v^2 at (0,2) -> 2 ; u + uv at (1,1) -> 2
    int K = 3;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    CHECK((ratio(1, 2) * (v * v)).eval_d(0.0, 2.0) == Catch::Approx(2.0));
    CHECK((u + u * v).eval_d(1.0, 1.0) == Catch::Approx(2.0));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        Jet2Q f = random_jet(rng, 6);
        double uu = pt(rng), vv = pt(rng);
        double a = f.eval_d(uu, vv);
        double b = brute_force_eval(f, uu, vv);
        REQUIRE(a == Catch::Approx(b).margin(1e-12));
        // exact evaluation at rational points matches double eval closely
        Rat ru = ratio(int(uu * 64), 64), rv = ratio(int(vv * 64), 64);
        REQUIRE(f.eval_d(to_double(ru), to_double(rv)) ==
                Catch::Approx(to_double(f.eval_exact(ru, rv))).margin(1e-12));
    }
}

TEST_CASE("fixture G2 q-jet evaluates like the independent monomial sum") {
    // q = u^2/2 + u^2 v + v^3 at (0.1, 0.2)
    Jet2Q q(9);
    q.set_coeff(2, 0, ratio(1, 2));
    q.set_coeff(2, 1, Rat(1));
    q.set_coeff(0, 3, Rat(1));
    double direct = 0.5 * 0.01 + 0.01 * 0.2 + 0.008;
    CHECK(q.eval_d(0.1, 0.2) == Catch::Approx(direct).epsilon(1e-14));
    CHECK(q.eval_d(0.1, 0.2) == Catch::Approx(brute_force_eval(q, 0.1, 0.2)).epsilon(1e-14));
}

TEST_CASE("reciprocal of a unit") {
    int K = 6;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    Jet2Q f = Jet2Q::constant(K, Rat(2)) + u + u * v * v;
    Jet2Q g = f.reciprocal();
    CHECK(f * g == Jet2Q::constant(K, Rat(1)));
    CHECK_THROWS_AS((u + v).reciprocal(), std::domain_error);
}

TEST_CASE("Jet1 arithmetic, compose, reciprocal") {
    int N = 6;
    Jet1Q t = Jet1Q::var(N);
    Jet1Q f = t * t + Jet1Q::constant(N, Rat(1));
    CHECK(f.derivative() == (Rat(2) * t).truncated(N - 1));
    Jet1Q inner = t + t * t;
    Jet1Q comp = f.compose(inner);
    CHECK(comp.coeff(0) == 1);
    CHECK(comp.coeff(2) == 1);
    CHECK(comp.coeff(3) == 2);
    CHECK(comp.coeff(4) == 1);
    CHECK(f.reciprocal() * f == Jet1Q::constant(N, Rat(1)));
    CHECK(f.eval_d(0.5) == Catch::Approx(1.25));
}

TEST_CASE("compose_curve substitutes curves into surface jets") {
    int K = 5;
    Jet2Q u = Jet2Q::var_u(K), v = Jet2Q::var_v(K);
    Jet2Q f = u * u * v + v * v * v;
    Jet1Q t = Jet1Q::var(K);
    Jet1Q a = t, b = t * t;
    Jet1Q got = f.compose_curve(a, b);  // t^4 + t^6 -> truncated to t^4
    CHECK(got.coeff(4) == 1);
    CHECK(got.coeff(3) == 0);
    for (int d = 0; d <= 3; ++d) REQUIRE(is_zero(got.coeff(d)));
}
