#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helixkit/curve.hpp"
#include "helixkit/expression.hpp"
#include "helixkit/frenet.hpp"

namespace helixkit {

/// A curve prescribed by its n-1 curvature functions of arclength s.
/// k_1..k_{n-2} must be strictly positive on the span and k_{n-1} nowhere
/// zero (checked on a sampling grid before integration).
struct CurvaturePrescription {
    int n = 0;
    std::vector<Expression> curvatures;  // expressions in "s"
    double s0 = 0.0;
    double s1 = 1.0;
    double step = 1e-3;
    std::vector<double> initial_point;               // default: origin
    std::vector<std::vector<double>> initial_frame;  // default: identity rows
    std::string name;
};

struct SynthesisOptions {
    /// Apparatus grid size; 0 records every integration step.
    int target_grid = 512;

    /// Arclength-derivative order of the prescribed curvature jets;
    /// -1 picks max(2, n - 1).
    int sderiv_order = -1;

    /// Pre-reorthonormalization drift above this aborts with a step-size hint.
    double drift_tol = 1e-6;

    bool check_curvature_signs = true;
};

struct SynthesisResult {
    /// The integrated curve as a sampled spec (one point per step).
    CurveSpec sampled;

    /// Apparatus on the recorded grid; carries the prescribed curvatures as
    /// exact jets in s, not re-estimated ones.
    FrenetApparatus apparatus;

    double max_drift_pre_reorth = 0.0;
    double max_drift_post_reorth = 0.0;
};

/// Classical fixed-step RK4 on the joint system alpha' = V_1, V' = K(s) V,
/// with the frame reorthonormalized by modified Gram-Schmidt every step.
SynthesisResult integrate_frenet(const CurvaturePrescription& prescription,
                                 const SynthesisOptions& options = {});

/// (a cos t, a sin t, b t) on [0, 2*pi]; k_1 = a/(a^2+b^2), k_2 = b/(a^2+b^2),
/// axis (0, 0, 1). Requires a > 0 and b != 0.
CurveSpec make_circular_helix(double a, double b);

struct InclinedFixture {
    CurvaturePrescription prescription;
    double expected_sumsq;  // tan^2(phi) the construction aims for
};

/// Seeded prescription whose integrated curve is an inclined curve
/// (constant-angle tangent). Supported n: 3, 4, 5.
InclinedFixture make_inclined_fixture(int n, std::uint64_t seed);

struct VnSlantFixture {
    CurvaturePrescription prescription;
    double expected_sumsq;
};

/// Mirror construction of make_inclined_fixture for the last frame vector.
VnSlantFixture make_vn_slant_fixture(int n, std::uint64_t seed);

struct V2SlantFixture {
    CurvaturePrescription prescription;
    double c0;              // integration constant the construction used
    double expected_sumsq;  // 1/cos^2(phi)
};

/// Seeded prescription whose integrated curve is a slant helix
/// (constant-angle principal normal) in E^3.
V2SlantFixture make_v2_fixture(std::uint64_t seed);

/// Generalization for n in {3, 4, 5}.
V2SlantFixture make_v2_fixture_nd(int n, std::uint64_t seed);

/// E^4 prescription with k_1/k_2 constant and generic k_3: the harmonic sum
/// is constant yet H_2 vanishes identically, so the curve is NOT inclined.
CurvaturePrescription make_inclined_antifixture_e4(std::uint64_t seed);

/// JSON form: {"n": .., "k": ["expr in s", ...], "span": [s0, s1],
///             "h": .., "init": {"point": [..], "frame": [[..], ..]}, "name": ..}
/// (init and name optional).
CurvaturePrescription parse_prescription_json(const std::string& text);
std::string prescription_to_json(const CurvaturePrescription& prescription);

/// Wraps a prescription as a synthetic CurveSpec.
CurveSpec make_synthetic_curve(CurvaturePrescription prescription);

}  // namespace helixkit
