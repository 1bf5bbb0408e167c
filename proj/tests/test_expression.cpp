#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "helixkit/curve.hpp"
#include "helixkit/errors.hpp"
#include "helixkit/expression.hpp"
#include "support.hpp"

using namespace helixkit;

TEST_SUITE("expression") {

TEST_CASE("curve grammar accepts the helix definition") {
    const CurveSpec spec =
        parse_curve("dim 3 on [0, 6.28]: x = 2*cos(t); y = 2*sin(t); z = t");
    CHECK(spec.n == 3);
    CHECK(spec.is_analytic());
    CHECK(spec.t0 == doctest::Approx(0.0));
    CHECK(spec.t1 == doctest::Approx(6.28));
    CHECK(spec.analytic().coordinate_names == std::vector<std::string>{"x", "y", "z"});
    CHECK(spec.max_jet_order == 10);
}

TEST_CASE("coordinate arity is checked") {
    CHECK_THROWS_WITH_AS(parse_curve("dim 3: x = t"),
                         doctest::Contains("expected 3 coordinates, found 1"), ParseError);
}

TEST_CASE("four-dimensional curve parses") {
    const CurveSpec spec =
        parse_curve("dim 4 on [0,1]: x=cos(t); y=sin(t); z=cos(2*t); w=sin(2*t)");
    CHECK(spec.n == 4);
    CHECK(spec.is_analytic());
}

TEST_CASE("grammar errors carry a location and a reason") {
    CHECK_THROWS_AS(parse_curve("dim 2 on [0,1]: x=t; y=t"), ParseError);
    CHECK_THROWS_AS(parse_curve("dim 3 on [1,0]: x=t; y=t; z=t"), ParseError);
    CHECK_THROWS_AS(parse_curve("dim 3: x=t; x=2*t; z=t"), ParseError);
    CHECK_THROWS_AS(parse_curve("dim 3: x=t; y=q+1; z=t"), ParseError);
    CHECK_THROWS_AS(parse_curve("dim 3: x=t; y=2*; z=t"), ParseError);
    CHECK_THROWS_AS(parse_curve("dim 3: x=2^t; y=t; z=t"), ParseError);

    try {
        parse_curve("dim 3 on [0,1]:\nx = t;\ny = unknown_fn(t);\nz = t");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("unknown_fn") != std::string::npos);
    }
}

TEST_CASE("precedence and associativity") {
    // ^ binds tighter than unary minus; * over +; ^ right-associative
    const Expression e1 = Expression::parse("-t^2");
    CHECK(e1.value(3.0) == doctest::Approx(-9.0));
    const Expression e2 = Expression::parse("2 + 3*t");
    CHECK(e2.value(2.0) == doctest::Approx(8.0));
    const Expression e3 = Expression::parse("2^3^2 + 0*t");
    CHECK(e3.value(0.0) == doctest::Approx(512.0));
    const Expression e4 = Expression::parse("t^-2");
    CHECK(e4.value(2.0) == doctest::Approx(0.25));
    const Expression e5 = Expression::parse("2*pi + e + 0*t");
    CHECK(e5.value(0.0) == doctest::Approx(2.0 * M_PI + std::exp(1.0)));
}

TEST_CASE("eval_jets on polynomial and transcendental examples") {
    const CurveSpec quad = parse_curve("dim 3 on [0,4]: x = t^2; y = t; z = t + 1");
    const auto jets = eval_jets(quad, 3.0, 3);
    CHECK(jets[0].deriv(0) == doctest::Approx(9.0));
    CHECK(jets[0].deriv(1) == doctest::Approx(6.0));
    CHECK(jets[0].deriv(2) == doctest::Approx(2.0));
    CHECK(jets[0].deriv(3) == doctest::Approx(0.0));

    const Expression sine = Expression::parse("sin(t)");
    const Jet sj = sine.jets(0.0, 4);
    CHECK(sj.deriv(0) == doctest::Approx(0.0));
    CHECK(sj.deriv(1) == doctest::Approx(1.0));
    CHECK(sj.deriv(3) == doctest::Approx(-1.0));

    // exp(2t) at 0.5 -> (e, 2e, 4e), checked against the FD oracle
    const Expression ex = Expression::parse("exp(2*t)");
    const Jet ej = ex.jets(0.5, 2);
    const double e1 = std::exp(1.0);
    CHECK(ej.deriv(0) == doctest::Approx(e1).epsilon(1e-12));
    CHECK(ej.deriv(1) == doctest::Approx(2 * e1).epsilon(1e-12));
    CHECK(ej.deriv(2) == doctest::Approx(4 * e1).epsilon(1e-12));
    const auto fd = testsupport::central_differences(
        [&](double u) { return ex.value(u); }, 0.5, 1e-4);
    for (int d = 1; d <= 2; ++d) CHECK(testsupport::rel_err(ej.deriv(d), fd[d]) <= 1e-6);
}

TEST_CASE("domain and capability errors") {
    const CurveSpec spec = parse_curve("dim 3 on [-2,2]: x = log(t); y = t; z = t*t");
    CHECK_THROWS_AS(eval_jets(spec, -1.0, 2), DomainError);
    CHECK_THROWS_AS(eval_jets(spec, 1.0, spec.max_jet_order + 1), CapabilityError);
    CHECK_THROWS_AS(eval_jets(spec, 3.0, 2), ValidationError);  // outside the interval
}

TEST_CASE("random expressions match finite differences") {
    const std::vector<std::string> pool = {
        "sin(2*t) + t^2",
        "cos(t)*exp(t/2)",
        "sqrt(t^2 + 1)",
        "log(2 + sin(t))",
        "sinh(t/2) + cosh(t/3)",
        "(t + 2)^2/(t^2 + 1)",
        "tan(t/4) + t",
        "exp(sin(t))",
    };
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::string& src = pool[rng() % pool.size()];
        const Expression ex = Expression::parse(src);
        const double x = testsupport::uniform(rng, -1.2, 1.2);
        const Jet j = ex.jets(x, 4);
        const auto fd = testsupport::central_differences(
            [&](double u) { return ex.value(u); }, x, 1e-2);
        for (int d = 1; d <= 4; ++d) {
            INFO(src << " at " << x << ", derivative " << d);
            CHECK(testsupport::rel_err(j.deriv(d), fd[d]) <= 1e-5);
        }
    }
}

TEST_CASE("print/parse round trip is tree-identical") {
    for (const char* src :
         {"2*cos(t)", "-t^2 + 3", "(t + 1)^2/(t - 2)", "t^-2*5", "1 - 2 - 3*t", "2^3^2 + t",
          "sin(cos(t))*-1", "pi*t + e", "sqrt(t^2 + 1e-3)", "t/2/3 + 4.5e2",
          "sinh(t) - cosh(t)/tan(1 + t)", "-(t + 1)", "2 - -3*t"}) {
        const Expression once = Expression::parse(src);
        const Expression twice = Expression::parse(once.str());
        INFO(src << "  printed as  " << once.str());
        CHECK(twice.identical_to(once));
        CHECK(twice.str() == once.str());
    }
}

TEST_CASE("sampled curves interpolate with quintic windows") {
    std::vector<double> params;
    std::vector<std::vector<double>> points;
    for (int i = 0; i <= 200; ++i) {
        const double t = i * 0.02;
        params.push_back(t);
        points.push_back({std::cos(t), std::sin(t), 0.3 * t * t + t});
    }
    const CurveSpec spec = make_sampled_curve(params, points, "sampled");
    CHECK(spec.max_jet_order == 5);
    const auto jets = eval_jets(spec, 1.234, 3);
    CHECK(jets[0].deriv(0) == doctest::Approx(std::cos(1.234)).epsilon(1e-9));
    CHECK(jets[0].deriv(1) == doctest::Approx(-std::sin(1.234)).epsilon(1e-7));
    CHECK(jets[2].deriv(2) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK_THROWS_AS(eval_jets(spec, 1.0, 6), CapabilityError);
}

}  // TEST_SUITE
