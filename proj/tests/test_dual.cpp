#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singsurf/corpus.hpp"
#include "singsurf/dual.hpp"
#include "singsurf/oracle.hpp"

using namespace singsurf;

using TD = ThetaDirection<Rat>;

namespace {

// Independent dual-point evaluation: finite-difference normal, no jets.
Vec3<double> dual_point_oracle(const oracle::SurfaceFn& f, const Vec3<double>& p, double u,
                               double v) {
    using namespace oracle;
    LD h = 1e-5;
    V3 fu = scale(1 / (2 * h), sub(f(u + h, v), f(u - h, v)));
    V3 fv = scale(1 / (2 * h), sub(f(u, v + h), f(u, v - h)));
    V3 cr = cross(fu, fv);
    V3 n = scale(1 / norm(cr), cr);
    V3 g0 = f(u, v);
    LD w = (g0[0] + p[0]) * n[0] + (g0[1] + p[1]) * n[1] + (g0[2] + p[2]) * n[2];
    return {double(w * n[0]), double(w * n[1]), double(w * n[2])};
}

}  // namespace

TEST_CASE("dual_label on fixtures") {
    auto g2 = g2_coeffs();
    AType t2 = classify(g2);
    auto d0 = dual_label(g2, t2, TD::from_tan(Rat(0)));
    CHECK(d0.label == DualSingularity::swallowtail);

    auto g2b = g2_coeffs();
    g2b.set_b(3, Rat(1));
    // with b3 = 1 the parabolic direction theta = 0 is no longer a ridge
    auto db = dual_label(g2b, classify(g2b), TD::from_tan(Rat(0)));
    CHECK(db.label == DualSingularity::cuspidal_edge);

    auto g1 = g1_coeffs();
    auto d1 = dual_label(g1, classify(g1), TD::from_tan(Rat(1)));
    CHECK(d1.label == DualSingularity::unresolved);
    CHECK(d1.basis == "sub-parabolic");

    // non-parabolic direction: unresolved with the failing clause named
    auto dn = dual_label(g1, classify(g1), TD::from_tan(Rat(0)));
    CHECK(dn.label == DualSingularity::unresolved);
    CHECK(dn.basis.find("parabolic") != std::string::npos);

    // inflection germ rejected
    NormalFormCoeffs<Rat> infl(9);
    infl.set_b(2, Rat(1));
    infl.set_a(2, 1, Rat(2));
    infl.set_a(0, 3, Rat(6));
    CHECK_THROWS_AS(dual_label(infl, classify(infl), TD::from_tan(Rat(0))),
                    std::domain_error);

    // higher-order ridge: G2 with b4 = 0
    auto g2c = g2_coeffs();
    g2c.set_b(4, Rat(0));
    auto dc = dual_label(g2c, classify(g2c), TD::from_tan(Rat(0)));
    CHECK(dc.label == DualSingularity::unresolved);
    CHECK(dc.basis.find("ridge") != std::string::npos);
}

TEST_CASE("dual_point matches an independent recomputation") {
    auto g2 = g2_coeffs();
    Vec3<double> p{0.0, -1.0, 0.0};
    auto f = oracle::surface_of(g2.germ());
    for (auto [u, v] : {std::pair{0.1, 0.1}, {0.2, -0.15}, {-0.1, 0.05}}) {
        auto a = dual_point(g2, p, u, v);
        auto b = dual_point_oracle(f, p, u, v);
        for (int i = 0; i < 3; ++i) REQUIRE(a[i] == Catch::Approx(b[i]).margin(1e-7));
    }
    // scaling the shift acts linearly through <p, n> n
    auto a1 = dual_point(g2, p, 0.1, 0.1);
    Vec3<double> p2{0.0, -2.0, 0.0};
    auto a2 = dual_point(g2, p2, 0.1, 0.1);
    // difference equals <p, n> n exactly once more
    auto diff = dual_point(g2, Vec3<double>{0, 0, 0}, 0.1, 0.1);
    for (int i = 0; i < 3; ++i)
        REQUIRE(a2[i] - a1[i] == Catch::Approx(a1[i] - diff[i]).margin(1e-12));

    // singular parameter point rejected
    CHECK_THROWS_AS(dual_point(g2, p, 0.0, 0.0), std::domain_error);
}

TEST_CASE("dual of a regular paraboloid patch stays well defined") {
    // test-only check of the dual construction on z = x^2 + y^2 with
    // p = (0,0,1): <f+p, n> never vanishes on the patch
    oracle::SurfaceFn f = [](oracle::LD u, oracle::LD v) -> oracle::V3 {
        return {u, v, u * u + v * v};
    };
    for (double u = -0.4; u <= 0.4; u += 0.1)
        for (double v = -0.4; v <= 0.4; v += 0.1) {
            auto d = dual_point_oracle(f, {0, 0, 1}, u, v);
            double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            REQUIRE(std::isfinite(len));
            REQUIRE(len > 0.1);  // <f+p, n> stays away from zero
        }
}

TEST_CASE("dual_mesh: smoke, metadata, refinement") {
    auto g2 = g2_coeffs();
    AType t2 = classify(g2);

    DualMeshSpec tiny;
    tiny.r_steps = 2;
    tiny.theta_steps = 2;
    auto m0 = dual_mesh(g2, t2, tiny);
    REQUIRE(m0.vertices.size() == 4);
    for (auto& v : m0.vertices)
        for (int i = 0; i < 3; ++i) REQUIRE(std::isfinite(v.pos[i]));
    REQUIRE(m0.faces.size() == 2);

    DualMeshSpec one;
    one.r_steps = 1;
    one.theta_steps = 1;
    auto m1 = dual_mesh(g2, t2, one);
    CHECK(m1.vertices.size() == 1);
    CHECK(m1.faces.empty());

    DualMeshSpec bad;
    bad.r_steps = 0;
    CHECK_THROWS_AS(dual_mesh(g2, t2, bad), std::invalid_argument);

    // vertex metadata carries the point type of the nearest theta sample
    DualMeshSpec spec;
    spec.r_steps = 3;
    spec.theta_steps = 9;
    auto mm = dual_mesh(g2, t2, spec);
    bool saw_types = false;
    for (auto& v : mm.vertices)
        if (v.point_type == "elliptic" || v.point_type == "hyperbolic") saw_types = true;
    CHECK(saw_types);

    // Cauchy refinement: a vertex position converges as the grid refines
    auto at = [&](int rsteps) {
        DualMeshSpec s;
        s.r_steps = rsteps;
        s.theta_steps = 5;
        s.r_max = 0.2;
        auto m = dual_mesh(g2, t2, s);
        return m.vertices.back().pos;  // largest r, last theta
    };
    auto pa = at(4), pb = at(8);
    for (int i = 0; i < 3; ++i) REQUIRE(pa[i] == Catch::Approx(pb[i]).margin(1e-12));

    // zero p-shift violates the <p, n> hypothesis
    DualMeshSpec zshift;
    zshift.p_shift_set = true;
    zshift.p_shift = {0, 0, 0};
    CHECK_THROWS_AS(dual_mesh(g2, t2, zshift), std::domain_error);
}
