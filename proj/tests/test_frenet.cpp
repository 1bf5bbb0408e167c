#include <cmath>
#include <sstream>

#include <doctest.h>

#include "helixkit/errors.hpp"
#include "helixkit/frenet.hpp"
#include "helixkit/synthesize.hpp"
#include "support.hpp"
#include "vecmath.hpp"

using namespace helixkit;
using testsupport::HelixClosedForm;

TEST_SUITE("frenet") {

TEST_CASE("circular helix curvatures match the closed form") {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const HelixClosedForm cf(2.0, 1.0);
    for (double t : {0.0, 0.7, 2.5, 5.9}) {
        const FrenetSample sm = frenet_at(helix, t);
        CHECK(sm.curvatures[0].value() == doctest::Approx(cf.k1()).epsilon(1e-12));
        CHECK(sm.curvatures[1].value() == doctest::Approx(cf.k2()).epsilon(1e-12));
        CHECK(sm.speed.value() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
        // constant curvatures: all arclength derivatives vanish
        CHECK(std::abs(sm.curvatures[0].deriv(1)) <= 1e-12);
        CHECK(std::abs(sm.curvatures[1].deriv(1)) <= 1e-12);
        // frame matches the closed form
        const auto v1 = cf.tangent(t), v2 = cf.normal(t), v3 = cf.binormal(t);
        for (int c = 0; c < 3; ++c) {
            CHECK(sm.frame[0][c] == doctest::Approx(v1[c]).epsilon(1e-12));
            CHECK(sm.frame[1][c] == doctest::Approx(v2[c]).epsilon(1e-12));
            CHECK(sm.frame[2][c] == doctest::Approx(v3[c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("frame is orthonormal with determinant +1") {
    const CurveSpec curve = parse_curve(
        "dim 4 on [0.2, 2]: a = t; b = t^2/2; c = t^3/6; d = t^4/24");
    const FrenetSample sm = frenet_at(curve, 1.3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += sm.frame[i][c] * sm.frame[j][c];
            CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) <= 1e-9);
        }
    CHECK(detail::det(sm.frame) == doctest::Approx(1.0).epsilon(1e-9));
    for (int i = 0; i < 3; ++i) CHECK(sm.curvatures[i].value() > 0.0);
}

TEST_CASE("planar circle in E^3 degenerates at step 3") {
    const CurveSpec circle = parse_curve("dim 3 on [0, 6.28]: x = cos(t); y = sin(t); z = 0*t");
    try {
        frenet_at(circle, 1.0);
        FAIL("expected degeneracy");
    } catch (const DegenerateCurveError& e) {
        CHECK(e.step == 3);
    }
}

TEST_CASE("straight line degenerates at step 2") {
    const CurveSpec line = parse_curve("dim 3 on [0, 1]: x = t; y = 0*t; z = 0*t");
    try {
        frenet_at(line, 0.5);
        FAIL("expected degeneracy");
    } catch (const DegenerateCurveError& e) {
        CHECK(e.step == 2);
    }
}

TEST_CASE("arclength by Simpson matches the closed form") {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const FrenetApparatus app = build_apparatus(helix, 256);
    CHECK(app.samples.back().s ==
          doctest::Approx(2.0 * M_PI * std::sqrt(5.0)).epsilon(1e-10));
    for (int g = 1; g < app.size(); ++g) CHECK(app.samples[g].s > app.samples[g - 1].s);
}

TEST_CASE("grid size below 16 is rejected") {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    CHECK_THROWS_WITH_AS(build_apparatus(helix, 8), doctest::Contains("grid too small"),
                         ValidationError);
}

TEST_CASE("unit-speed curve has s identical to t - t0") {
    const double a = 1.0 / std::sqrt(2.0);
    const CurveSpec helix = make_circular_helix(a, a);
    const FrenetApparatus app = build_apparatus(helix, 64);
    for (int g = 0; g < app.size(); ++g)
        CHECK(std::abs(app.samples[g].s - (app.grid[g] - app.grid[0])) <= 1e-10);
}

TEST_CASE("Frenet residual shrinks quadratically under grid refinement") {
    // centered difference of V_i along s vs -k_{i-1}V_{i-1} + k_iV_{i+1}
    const CurveSpec curve = parse_curve(
        "dim 3 on [0.2, 2.2]: x = t; y = t^2/2; z = t^3/6");
    auto residual = [&](int N) {
        const FrenetApparatus app = build_apparatus(curve, N);
        const int n = app.n();
        double worst = 0.0;
        for (int g = 1; g + 1 < app.size(); ++g) {
            const double ds = app.samples[g + 1].s - app.samples[g - 1].s;
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c < n; ++c) {
                    const double fd =
                        (app.samples[g + 1].frame[i][c] - app.samples[g - 1].frame[i][c]) / ds;
                    double want = 0.0;
                    if (i > 0)
                        want -= app.samples[g].curvatures[i - 1].value() *
                                app.samples[g].frame[i - 1][c];
                    if (i < n - 1)
                        want += app.samples[g].curvatures[i].value() *
                                app.samples[g].frame[i + 1][c];
                    worst = std::max(worst, std::abs(fd - want));
                }
            }
        }
        return worst;
    };
    const double r1 = residual(64);
    const double r2 = residual(128);
    const double ratio = r1 / r2;
    CHECK(ratio > 3.0);  // ~4 for an O(h^2) difference scheme
    CHECK(ratio < 5.0);
}

TEST_CASE("reparametrization leaves the arclength data invariant") {
    // same trace, parametrized by t and by t = phi(u) = u + 0.3 sin(u)
    const CurveSpec direct = parse_curve(
        "dim 3 on [0.3, 2.3]: x = cos(t); y = sin(t); z = t^2/4");
    const CurveSpec reparam = parse_curve(
        "dim 3 on [0.12, 2.2]: x = cos(t + 0.3*sin(t)); y = sin(t + 0.3*sin(t)); "
        "z = (t + 0.3*sin(t))^2/4");
    // pick u so that phi(u) lands inside [0.3, 2.3]
    for (double u : {0.5, 1.0, 1.7}) {
        const double t = u + 0.3 * std::sin(u);
        const FrenetSample a = frenet_at(direct, t);
        const FrenetSample b = frenet_at(reparam, u);
        for (int i = 0; i < 2; ++i) {
            CHECK(testsupport::rel_err(b.curvatures[i].value(), a.curvatures[i].value()) <=
                  1e-6);
            CHECK(testsupport::rel_err(b.curvatures[i].deriv(1), a.curvatures[i].deriv(1)) <=
                  1e-6);
        }
    }
}

TEST_CASE("curvature jet entry 1 matches finite differences along s") {
    const CurveSpec curve = parse_curve(
        "dim 3 on [0.2, 2.2]: x = cos(t); y = sin(t); z = t^2/4");
    const double t = 1.1, h = 1e-4;
    const FrenetSample mid = frenet_at(curve, t);
    const FrenetSample lo = frenet_at(curve, t - h);
    const FrenetSample hi = frenet_at(curve, t + h);
    for (int i = 0; i < 2; ++i) {
        const double dk_dt = (hi.curvatures[i].value() - lo.curvatures[i].value()) / (2 * h);
        const double dk_ds = dk_dt / mid.speed.value();
        CHECK(testsupport::rel_err(mid.curvatures[i].deriv(1), dk_ds) <= 1e-5);
    }
}

TEST_CASE("check_nondegenerate passes any constructed apparatus") {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const FrenetApparatus app = build_apparatus(helix, 64);
    const NondegeneracyReport report = check_nondegenerate(app);
    CHECK(report.pass);
    CHECK(report.min_abs_curvature[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(report.min_abs_curvature[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(report.margin > 0.0);
}

TEST_CASE("check_nondegenerate reports a curvature crossing with location") {
    // prescribed k_2 = s - 5 crosses zero at s = 5; integration only works
    // with the sign checks off, which is exactly what the report is for
    CurvaturePrescription p;
    p.n = 4;
    p.curvatures.push_back(Expression::parse("1 + 0*s", "s"));
    p.curvatures.push_back(Expression::parse("s - 5", "s"));
    p.curvatures.push_back(Expression::parse("0.5 + 0*s", "s"));
    p.s0 = 0.0;
    p.s1 = 10.0;
    p.step = 1e-2;
    SynthesisOptions opts;
    opts.check_curvature_signs = false;
    opts.target_grid = 101;
    const FrenetApparatus app = integrate_frenet(p, opts).apparatus;
    const NondegeneracyReport report = check_nondegenerate(app);
    CHECK_FALSE(report.pass);
    REQUIRE(report.crossing.has_value());
    CHECK(report.crossing->curvature_index == 2);
    CHECK(report.crossing->t == doctest::Approx(5.0).epsilon(1e-2));
}

TEST_CASE("degenerate grids are rejected with the grid index") {
    const CurveSpec circle = parse_curve("dim 3 on [0, 6.28]: x = cos(t); y = sin(t); z = 0*t");
    CHECK_THROWS_WITH_AS(build_apparatus(circle, 32), doctest::Contains("grid index"),
                         DegenerateCurveError);
}

TEST_CASE("apparatus CSV has the documented shape") {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const FrenetApparatus app = build_apparatus(helix, 16);
    std::ostringstream out;
    write_apparatus_csv(app, out);
    const std::string text = out.str();
    CHECK(text.find("# {\"type\":\"apparatus\",\"n\":3") != std::string::npos);
    CHECK(text.find("t,s,k_1,k_2,V_1_1,V_1_2,V_1_3,V_2_1") != std::string::npos);
}

}  // TEST_SUITE
