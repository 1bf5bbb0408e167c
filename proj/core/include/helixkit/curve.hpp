#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "helixkit/expression.hpp"
#include "helixkit/jet.hpp"

namespace helixkit {

struct CurvaturePrescription;

/// Curve given by one closed-form expression per coordinate.
struct AnalyticCurve {
    std::vector<std::string> coordinate_names;
    std::vector<Expression> coordinates;
};

/// Curve given by ordered (parameter, point) samples. Derivatives come from
/// piecewise quintic interpolation over sliding 6-point windows, so jets are
/// capped at order 5 and carry interpolation error instead of being exact.
struct SampledCurve {
    std::vector<double> params;                  // strictly increasing
    std::vector<std::vector<double>> points;     // one point in E^n per param
};

/// Curve prescribed by its curvature functions; materialized by integration.
struct SyntheticCurve {
    std::shared_ptr<const CurvaturePrescription> prescription;
};

/// A curve in E^n together with its parameter interval.
struct CurveSpec {
    int n = 0;
    double t0 = 0.0;
    double t1 = 1.0;
    std::variant<AnalyticCurve, SampledCurve, SyntheticCurve> data;

    /// Cap on evaluation jet order; defaults to 2n + 4.
    int max_jet_order = 0;

    std::string name;

    bool is_analytic() const { return std::holds_alternative<AnalyticCurve>(data); }
    bool is_sampled() const { return std::holds_alternative<SampledCurve>(data); }
    bool is_synthetic() const { return std::holds_alternative<SyntheticCurve>(data); }

    const AnalyticCurve& analytic() const { return std::get<AnalyticCurve>(data); }
    const SampledCurve& sampled() const { return std::get<SampledCurve>(data); }
    const SyntheticCurve& synthetic() const { return std::get<SyntheticCurve>(data); }
};

/// Parses the curve grammar:
///
///   curve := "dim" INT ["on" "[" NUM "," NUM "]"] ":" coord (";" coord)* [";"]
///   coord := IDENT "=" expr
///
/// Coordinate names are arbitrary but distinct; their order defines the
/// coordinate order. The interval defaults to [0, 1]. The parameter symbol
/// inside the expressions is "t".
CurveSpec parse_curve(std::string_view source);

/// Builds a CurveSpec from per-coordinate expressions already in hand.
CurveSpec make_analytic_curve(std::vector<Expression> coordinates, double t0, double t1,
                              std::string name = "");

/// Builds a sampled CurveSpec; params must be strictly increasing and at
/// least 6 samples are required.
CurveSpec make_sampled_curve(std::vector<double> params,
                             std::vector<std::vector<double>> points,
                             std::string name = "");

/// Coordinate jets of the curve at t: entry j of coordinate i equals
/// d^j alpha_i / dt^j. Requires 1 <= order <= spec.max_jet_order (and
/// order <= 5 for sampled curves).
std::vector<Jet> eval_jets(const CurveSpec& spec, double t, int order);

}  // namespace helixkit
