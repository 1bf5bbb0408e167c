#include <cmath>

#include <doctest.h>

#include "helixkit/errors.hpp"
#include "helixkit/harmonic.hpp"
#include "helixkit/io.hpp"
#include "helixkit/synthesize.hpp"
#include "support.hpp"

using namespace helixkit;

namespace {

// Apparatus with prescribed constant curvatures; frames come from the
// integrator, curvature jets are exact.
FrenetApparatus constant_curvature_apparatus(const std::vector<double>& ks, double length) {
    CurvaturePrescription p;
    p.n = static_cast<int>(ks.size()) + 1;
    for (double k : ks)
        p.curvatures.push_back(Expression::parse(fmt17(k) + " + 0*s", "s"));
    p.s0 = 0.0;
    p.s1 = length;
    p.step = 1e-2;
    SynthesisOptions opts;
    opts.target_grid = 64;
    return integrate_frenet(p, opts).apparatus;
}

FrenetApparatus generic_apparatus(int n) {
    CurvaturePrescription p;
    p.n = n;
    p.curvatures.push_back(Expression::parse("1 + 0.3*sin(s)", "s"));
    if (n >= 3) p.curvatures.push_back(Expression::parse("0.8 + 0.2*cos(0.7*s)", "s"));
    if (n >= 4) p.curvatures.push_back(Expression::parse("0.6 + 0.25*sin(0.5*s + 1)", "s"));
    if (n >= 5) p.curvatures.push_back(Expression::parse("0.5 + 0.2*cos(0.9*s + 2)", "s"));
    p.s0 = 0.0;
    p.s1 = 6.0;
    p.step = 1e-2;
    SynthesisOptions opts;
    opts.target_grid = 48;
    return integrate_frenet(p, opts).apparatus;
}

}  // namespace

TEST_SUITE("harmonic") {

TEST_CASE("constant curvatures n=4: H_1 = 0.5, H_2 = 0") {
    const FrenetApparatus app = constant_curvature_apparatus({1.0, 2.0, 4.0}, 6.0);
    const HarmonicProfile prof = harmonic_h(app);
    CHECK(prof.lo == 0);
    CHECK(prof.hi == 2);
    for (int g = 0; g < prof.size(); ++g) {
        CHECK(prof.value(g, 0) == 0.0);
        CHECK(prof.value(g, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(prof.value(g, 2)) <= 1e-12);
        CHECK(prof.sumsq[g] == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("constant curvatures n=5: H_3 = 0.25") {
    const FrenetApparatus app = constant_curvature_apparatus({1.0, 2.0, 4.0, 8.0}, 6.0);
    const HarmonicProfile prof = harmonic_h(app);
    for (int g = 0; g < prof.size(); ++g) {
        CHECK(prof.value(g, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(prof.value(g, 2)) <= 1e-12);
        // H_3 = (H_2' + k_3 H_1)/k_4 = (0 + 4*0.5)/8
        CHECK(prof.value(g, 3) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("circular helix: H_1 = 2 and H_1* = 0.5 everywhere") {
    const FrenetApparatus app = build_apparatus(make_circular_helix(2.0, 1.0), 64);
    const HarmonicProfile h = harmonic_h(app);
    const HarmonicProfile hs = harmonic_hstar(app);
    for (int g = 0; g < h.size(); ++g) {
        CHECK(h.value(g, 1) == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(hs.value(g, 1) == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(h.sumsq[g] == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(hs.sumsq[g] == doctest::Approx(0.25).epsilon(1e-10));
    }
}

TEST_CASE("constant curvatures n=4: H_1* = 2, H_2* = 0") {
    const FrenetApparatus app = constant_curvature_apparatus({1.0, 2.0, 4.0}, 6.0);
    const HarmonicProfile prof = harmonic_hstar(app);
    for (int g = 0; g < prof.size(); ++g) {
        CHECK(prof.value(g, 1) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(prof.value(g, 2)) <= 1e-12);
    }
}

TEST_CASE("constant curvatures n=5 reversed: H_3* = 0.25") {
    // k = (8,4,2,1): H_1* = k_4/k_3 = 0.5, H_2* = 0,
    // H_3* = (k_2 H_1* - H_2*')/k_1 = (4*0.5)/8
    const FrenetApparatus app = constant_curvature_apparatus({8.0, 4.0, 2.0, 1.0}, 6.0);
    const HarmonicProfile prof = harmonic_hstar(app);
    for (int g = 0; g < prof.size(); ++g) {
        CHECK(prof.value(g, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(prof.value(g, 2)) <= 1e-12);
        CHECK(prof.value(g, 3) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("G functions for constant k: G_1 = s, G_2 = 1, G_3 = s, G_4 = 2") {
    const FrenetApparatus app3 = constant_curvature_apparatus({1.0, 1.0}, 6.0);
    const HarmonicProfile g3 = functions_g(app3, 0.0);
    for (int g = 0; g < g3.size(); ++g) {
        const double s = app3.samples[g].s;
        CHECK(g3.value(g, 1) == doctest::Approx(s).epsilon(1e-10));
        CHECK(g3.value(g, 2) == doctest::Approx(1.0));
        CHECK(g3.value(g, 3) == doctest::Approx(s).epsilon(1e-10));
    }

    const FrenetApparatus app4 = constant_curvature_apparatus({1.0, 1.0, 1.0}, 6.0);
    const HarmonicProfile g4 = functions_g(app4, 0.0);
    for (int g = 0; g < g4.size(); ++g)
        CHECK(g4.value(g, 4) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("G_1 at the first grid point equals c0") {
    const FrenetApparatus app = build_apparatus(make_circular_helix(2.0, 1.0), 32);
    const HarmonicProfile prof = functions_g(app, 5.0);
    CHECK(prof.value(0, 1) == doctest::Approx(5.0));
    CHECK(prof.c0.value() == doctest::Approx(5.0));
}

TEST_CASE("recursion identities hold on generic curves") {
    // derived forms of the recursion definitions, valid for any
    // non-degenerate curve; exact jets keep them at rounding level
    for (int n : {4, 5}) {
        const FrenetApparatus app = generic_apparatus(n);
        const HarmonicProfile h = harmonic_h(app);
        const HarmonicProfile hs = harmonic_hstar(app);
        const HarmonicProfile gg = functions_g(app, 0.7);
        for (int g = 0; g < app.size(); ++g) {
            const auto k = [&](int i) { return app.samples[g].curvatures[i - 1].value(); };

            // H_1 H_1' = k_3 H_1 H_2
            CHECK(h.value(g, 1) * h.dvalue(g, 1) ==
                  doctest::Approx(k(3) * h.value(g, 1) * h.value(g, 2)).epsilon(1e-8));
            // H_i H_i' = k_{i+2} H_i H_{i+1} - k_{i+1} H_{i-1} H_i, 2 <= i <= n-3
            for (int i = 2; i <= n - 3; ++i)
                CHECK(h.value(g, i) * h.dvalue(g, i) ==
                      doctest::Approx(k(i + 2) * h.value(g, i) * h.value(g, i + 1) -
                                      k(i + 1) * h.value(g, i - 1) * h.value(g, i))
                          .epsilon(1e-8));

            // H_1*' = -k_{n-3} H_2*
            CHECK(hs.dvalue(g, 1) ==
                  doctest::Approx(-k(n - 3) * hs.value(g, 2)).epsilon(1e-8));
            // H_i*' = k_{n-(i+1)} H_{i-1}* - k_{n-(i+2)} H_{i+1}*, 2 <= i <= n-3
            for (int i = 2; i <= n - 3; ++i)
                CHECK(hs.dvalue(g, i) ==
                      doctest::Approx(k(n - (i + 1)) * hs.value(g, i - 1) -
                                      k(n - (i + 2)) * hs.value(g, i + 1))
                          .epsilon(1e-8));

            // G_2' = 0 and k_3 G_3 G_4 = G_1 G_1' + G_3 G_3'
            CHECK(std::abs(gg.dvalue(g, 2)) <= 1e-12);
            CHECK(k(3) * gg.value(g, 3) * gg.value(g, 4) ==
                  doctest::Approx(gg.value(g, 1) * gg.dvalue(g, 1) +
                                  gg.value(g, 3) * gg.dvalue(g, 3))
                      .epsilon(1e-8));
            // G_i' = k_i G_{i+1} - k_{i-1} G_{i-1}, 4 <= i <= n-1
            for (int i = 4; i <= n - 1; ++i)
                CHECK(gg.dvalue(g, i) ==
                      doctest::Approx(k(i) * gg.value(g, i + 1) - k(i - 1) * gg.value(g, i - 1))
                          .epsilon(1e-8));
        }
    }
}

TEST_CASE("n=3 profiles stay in range") {
    const FrenetApparatus app = generic_apparatus(3);
    const HarmonicProfile h = harmonic_h(app);
    const HarmonicProfile hs = harmonic_hstar(app);
    CHECK(h.hi == 1);
    CHECK(hs.hi == 1);
    for (int g = 0; g < app.size(); ++g) {
        const double k1 = app.samples[g].curvatures[0].value();
        const double k2 = app.samples[g].curvatures[1].value();
        CHECK(h.value(g, 1) == doctest::Approx(k1 / k2).epsilon(1e-12));
        CHECK(hs.value(g, 1) == doctest::Approx(k2 / k1).epsilon(1e-12));
    }
}

TEST_CASE("fit_g_constant recovers the construction constant on a slant fixture") {
    const V2SlantFixture fx = make_v2_fixture(21);
    SynthesisOptions opts;
    opts.target_grid = 128;
    const FrenetApparatus app = integrate_frenet(fx.prescription, opts).apparatus;
    const GConstantFit fit = fit_g_constant(app);
    CHECK(fit.c0 == doctest::Approx(fx.c0).epsilon(1e-6));
    CHECK(fit.residual <= 1e-12);
    const HarmonicProfile prof = functions_g(app, fit.c0);
    for (int g = 0; g < prof.size(); ++g)
        CHECK(prof.sumsq[g] == doctest::Approx(fx.expected_sumsq).epsilon(1e-9));
}

TEST_CASE("no constant fits the circular helix") {
    const FrenetApparatus app = build_apparatus(make_circular_helix(2.0, 1.0), 128);
    const GConstantFit fit = fit_g_constant(app);
    CHECK(fit.residual > 1e-3);
}

TEST_CASE("insufficient jet depth raises a capability error") {
    FrenetOptions opts;
    opts.sderiv_order = 1;  // n = 5 needs order >= 3
    const CurveSpec curve = parse_curve(
        "dim 5 on [0.3, 2]: a = t; b = t^2/2; c = t^3/6; d = t^4/24; e5 = t^5/120");
    const FrenetApparatus app = build_apparatus(curve, 16, opts);
    CHECK_THROWS_AS(harmonic_h(app), CapabilityError);
    CHECK_THROWS_AS(harmonic_hstar(app), CapabilityError);
}

}  // TEST_SUITE
