#include "helixkit/synthesize.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "helixkit/errors.hpp"
#include "helixkit/io.hpp"
#include "vecmath.hpp"

namespace helixkit {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string num(double v) { return "(" + fmt17(v) + ")"; }

// Platform-independent uniform draw from the standardized mt19937_64 stream.
double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
}

Expression expr_s(const std::string& text) { return Expression::parse(text, "s"); }

void validate_prescription(const CurvaturePrescription& p, bool check_signs) {
    if (p.n < 3) throw ValidationError("prescription needs dimension >= 3");
    if (static_cast<int>(p.curvatures.size()) != p.n - 1)
        throw ValidationError("prescription needs n - 1 curvature functions, got " +
                              std::to_string(p.curvatures.size()));
    if (!(p.s0 < p.s1)) throw ValidationError("prescription span must satisfy s0 < s1");
    if (!(p.step > 0.0)) throw ValidationError("prescription step must be positive");
    if (!p.initial_point.empty() && static_cast<int>(p.initial_point.size()) != p.n)
        throw ValidationError("initial point has wrong dimension");
    if (!p.initial_frame.empty()) {
        if (static_cast<int>(p.initial_frame.size()) != p.n)
            throw ValidationError("initial frame needs n rows");
        for (const auto& row : p.initial_frame)
            if (static_cast<int>(row.size()) != p.n)
                throw ValidationError("initial frame rows need n entries");
        if (detail::orthonormality_drift(
                const_cast<std::vector<std::vector<double>>&>(p.initial_frame)) > 1e-8)
            throw ValidationError("initial frame is not orthonormal");
        if (detail::det(p.initial_frame) <= 0.0)
            throw ValidationError("initial frame must be positively oriented");
    }
    if (!check_signs) return;

    constexpr int kProbe = 4096;
    for (int i = 0; i < p.n - 1; ++i) {
        const bool positive_required = i < p.n - 2;
        double prev = 0.0;
        for (int j = 0; j <= kProbe; ++j) {
            const double s = p.s0 + (p.s1 - p.s0) * j / kProbe;
            const double v = p.curvatures[i].value(s);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", s);
            if (positive_required) {
                if (!(v > 1e-12))
                    throw ValidationError("curvature sign violation: k_" + std::to_string(i + 1) +
                                          " <= 0 at s = " + buf);
            } else {
                if (std::abs(v) <= 1e-12)
                    throw ValidationError("curvature sign violation: k_" + std::to_string(i + 1) +
                                          " vanishes at s = " + buf);
                if (j > 0 && prev * v < 0.0)
                    throw ValidationError("curvature sign violation: k_" + std::to_string(i + 1) +
                                          " crosses zero near s = " + buf);
            }
            prev = v;
        }
    }
}

}  // namespace

SynthesisResult integrate_frenet(const CurvaturePrescription& p, const SynthesisOptions& opts) {
    validate_prescription(p, opts.check_curvature_signs);
    if (opts.target_grid != 0 && opts.target_grid < 16)
        throw ValidationError("grid too small: need at least 16 recorded points");

    const int n = p.n;
    const double span = p.s1 - p.s0;
    const long long steps = std::llround(span / p.step);
    if (steps < 16)
        throw ValidationError("step too large for the span: need at least 16 steps, got " +
                              std::to_string(steps));
    const double h = span / static_cast<double>(steps);
    const int psder = opts.sderiv_order >= 0 ? opts.sderiv_order : std::max(2, n - 1);

    std::vector<double> pos =
        p.initial_point.empty() ? std::vector<double>(n, 0.0) : p.initial_point;
    std::vector<std::vector<double>> frame;
    if (p.initial_frame.empty()) {
        frame.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) frame[i][i] = 1.0;
    } else {
        frame = p.initial_frame;
        detail::orthonormalize_rows(frame);
    }

    const long long stride =
        opts.target_grid > 0 ? std::max<long long>(1, steps / (opts.target_grid - 1)) : 1;

    std::vector<double> kval(n - 1);
    auto eval_k = [&](double s) {
        for (int i = 0; i < n - 1; ++i) kval[i] = p.curvatures[i].value(s);
    };
    // d(pos) = V_1, d(V_i) = -k_{i-1} V_{i-1} + k_i V_{i+1}
    auto derivs = [&](double s, const std::vector<double>& c_pos,
                      const std::vector<std::vector<double>>& c_frame,
                      std::vector<double>& d_pos, std::vector<std::vector<double>>& d_frame) {
        (void)c_pos;
        eval_k(s);
        d_pos = c_frame[0];
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < n; ++c) {
                double v = 0.0;
                if (i > 0) v -= kval[i - 1] * c_frame[i - 1][c];
                if (i < n - 1) v += kval[i] * c_frame[i + 1][c];
                d_frame[i][c] = v;
            }
        }
    };

    SynthesisResult result;
    std::vector<double> all_params;
    std::vector<std::vector<double>> all_points;
    all_params.reserve(steps + 1);
    all_points.reserve(steps + 1);

    FrenetApparatus app;
    app.spec = make_synthetic_curve(p);
    FrenetOptions fopts;
    fopts.sderiv_order = psder;
    app.options = fopts;

    auto record_sample = [&](double s) {
        FrenetSample sm;
        sm.t = s;
        sm.s = s - p.s0;
        sm.speed = Jet::constant(1.0, psder + 1);
        sm.frame = frame;
        sm.curvatures.reserve(n - 1);
        for (int i = 0; i < n - 1; ++i) sm.curvatures.push_back(p.curvatures[i].jets(s, psder));
        app.grid.push_back(s);
        app.samples.push_back(std::move(sm));
    };

    std::vector<double> dp1(n), dp2(n), dp3(n), dp4(n), tmp_pos(n);
    std::vector<std::vector<double>> df1(n, std::vector<double>(n)), df2 = df1, df3 = df1,
                                     df4 = df1, tmp_frame = frame;

    all_params.push_back(p.s0);
    all_points.push_back(pos);
    record_sample(p.s0);

    for (long long step = 0; step < steps; ++step) {
        const double s = p.s0 + h * static_cast<double>(step);

        derivs(s, pos, frame, dp1, df1);
        for (int c = 0; c < n; ++c) tmp_pos[c] = pos[c] + 0.5 * h * dp1[c];
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) tmp_frame[i][c] = frame[i][c] + 0.5 * h * df1[i][c];
        derivs(s + 0.5 * h, tmp_pos, tmp_frame, dp2, df2);
        for (int c = 0; c < n; ++c) tmp_pos[c] = pos[c] + 0.5 * h * dp2[c];
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) tmp_frame[i][c] = frame[i][c] + 0.5 * h * df2[i][c];
        derivs(s + 0.5 * h, tmp_pos, tmp_frame, dp3, df3);
        for (int c = 0; c < n; ++c) tmp_pos[c] = pos[c] + h * dp3[c];
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) tmp_frame[i][c] = frame[i][c] + h * df3[i][c];
        derivs(s + h, tmp_pos, tmp_frame, dp4, df4);

        for (int c = 0; c < n; ++c)
            pos[c] += h / 6.0 * (dp1[c] + 2.0 * dp2[c] + 2.0 * dp3[c] + dp4[c]);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c)
                frame[i][c] += h / 6.0 * (df1[i][c] + 2.0 * df2[i][c] + 2.0 * df3[i][c] +
                                          df4[i][c]);

        const double drift = detail::orthonormality_drift(frame);
        result.max_drift_pre_reorth = std::max(result.max_drift_pre_reorth, drift);
        if (drift > opts.drift_tol) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", s + h);
            throw ValidationError("step too large: orthonormality drift " + fmt17(drift) +
                                  " at s = " + buf + "; retry with h <= " + fmt17(h / 2.0));
        }
        detail::orthonormalize_rows(frame);
        result.max_drift_post_reorth =
            std::max(result.max_drift_post_reorth, detail::orthonormality_drift(frame));

        const double s_next = p.s0 + h * static_cast<double>(step + 1);
        all_params.push_back(s_next);
        all_points.push_back(pos);
        if ((step + 1) % stride == 0 || step + 1 == steps) {
            if (app.grid.back() < s_next) record_sample(s_next);
        }
    }

    app.midpoints.resize(app.grid.size() - 1);
    for (std::size_t j = 0; j + 1 < app.grid.size(); ++j) {
        const double sm = 0.5 * (app.grid[j] + app.grid[j + 1]);
        app.midpoints[j] = IntervalMidpoint{1.0, p.curvatures[0].value(sm)};
    }

    result.sampled = make_sampled_curve(std::move(all_params), std::move(all_points),
                                        p.name.empty() ? "synthesized" : p.name);
    result.apparatus = std::move(app);
    return result;
}

CurveSpec make_circular_helix(double a, double b) {
    if (!(a > 0.0)) throw ValidationError("circular helix needs a > 0");
    if (b == 0.0) throw ValidationError("circular helix needs b != 0 (planar circle excluded)");
    std::vector<Expression> coords;
    coords.push_back(Expression::parse(num(a) + "*cos(t)"));
    coords.push_back(Expression::parse(num(a) + "*sin(t)"));
    coords.push_back(Expression::parse(num(b) + "*t"));
    CurveSpec spec = make_analytic_curve(std::move(coords), 0.0, 2.0 * std::numbers::pi,
                                         "circular_helix");
    return spec;
}

namespace {

CurvaturePrescription base_prescription(int n, double length, const std::string& name) {
    CurvaturePrescription p;
    p.n = n;
    p.s0 = 0.0;
    p.s1 = length;
    p.step = 1e-3;
    p.name = name;
    return p;
}

bool prescription_ok(const CurvaturePrescription& p, double margin) {
    constexpr int kProbe = 1024;
    for (int i = 0; i < p.n - 1; ++i) {
        const bool positive_required = i < p.n - 2;
        double prev = 0.0;
        for (int j = 0; j <= kProbe; ++j) {
            const double s = p.s0 + (p.s1 - p.s0) * j / kProbe;
            double v;
            try {
                v = p.curvatures[i].value(s);
            } catch (const Error&) {
                return false;
            }
            if (positive_required) {
                if (!(v > margin)) return false;
            } else {
                if (std::abs(v) < margin) return false;
                if (j > 0 && prev * v < 0.0) return false;
            }
            prev = v;
        }
    }
    return true;
}

template <typename Builder>
auto with_retries(std::uint64_t seed, Builder&& build) {
    for (std::uint64_t attempt = 0; attempt < 50; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
        auto fixture = build(rng);
        if (prescription_ok(fixture.prescription, 1e-3)) return fixture;
    }
    throw ValidationError("fixture generation failed: no valid draw after 50 attempts");
}

std::string oscillation(std::mt19937_64& rng, double lo_amp, double hi_amp) {
    // A*(1 + r*sin(w*s + phase)), positive by construction.
    const double amp = uniform(rng, lo_amp, hi_amp);
    const double r = uniform(rng, 0.2, 0.4);
    const double w = uniform(rng, 0.5, 1.4);
    const double ph = uniform(rng, 0.0, 6.28);
    return num(amp) + "*(1 + " + num(r) + "*sin(" + num(w) + "*s + " + num(ph) + "))";
}

}  // namespace

InclinedFixture make_inclined_fixture(int n, std::uint64_t seed) {
    if (n < 3 || n > 5)
        throw ValidationError("inclined fixtures support n in {3, 4, 5}");
    return with_retries(seed, [&](std::mt19937_64& rng) {
        InclinedFixture fx;
        const double length = uniform(rng, 6.0, 8.5);
        fx.prescription = base_prescription(n, length, "inclined_fixture_n" + std::to_string(n));
        const std::string k1 = oscillation(rng, 0.6, 1.4);

        if (n == 3) {
            const double c = uniform(rng, 0.8, 2.2);  // H_1 = k_1/k_2
            fx.prescription.curvatures.push_back(expr_s(k1));
            fx.prescription.curvatures.push_back(expr_s("(" + k1 + ")/" + num(c)));
            fx.expected_sumsq = c * c;
            return fx;
        }
        if (n == 4) {
            // H_1 = rho sin(theta), H_2 = rho cos(theta), k_3 = theta'.
            const double rho = uniform(rng, 0.8, 1.5);
            const double th0 = uniform(rng, 0.3, 0.45);
            const double th1 = uniform(rng, 0.05, 0.08);
            const double nu = uniform(rng, 0.6, 1.2);
            const double tha = th1 * uniform(rng, 0.2, 0.5) / nu;
            const std::string th =
                "(" + num(th0) + " + " + num(th1) + "*s + " + num(tha) + "*sin(" + num(nu) +
                "*s))";
            fx.prescription.curvatures.push_back(expr_s(k1));
            fx.prescription.curvatures.push_back(
                expr_s("(" + k1 + ")/(" + num(rho) + "*sin(" + th + "))"));
            fx.prescription.curvatures.push_back(
                expr_s(num(th1) + " + " + num(tha * nu) + "*cos(" + num(nu) + "*s)"));
            fx.expected_sumsq = rho * rho;
            return fx;
        }
        // n == 5: H = rho (sin(th)cos(ps), cos(th)cos(ps), sin(ps)).
        const double rho = uniform(rng, 0.8, 1.5);
        const double th0 = uniform(rng, 0.25, 0.35);
        const double th1 = uniform(rng, 0.05, 0.09);
        const double ps0 = uniform(rng, 0.22, 0.28);
        const double ps1 = uniform(rng, 0.01, 0.018);
        const std::string th = "(" + num(th0) + " + " + num(th1) + "*s)";
        const std::string ps = "(" + num(ps0) + " + " + num(ps1) + "*s)";
        fx.prescription.curvatures.push_back(expr_s(k1));
        fx.prescription.curvatures.push_back(expr_s(
            "(" + k1 + ")/(" + num(rho) + "*sin(" + th + ")*cos(" + ps + "))"));
        fx.prescription.curvatures.push_back(
            expr_s(num(th1) + " - " + num(ps1) + "*tan(" + th + ")*tan(" + ps + ")"));
        fx.prescription.curvatures.push_back(expr_s("-" + num(ps1) + "/cos(" + th + ")"));
        fx.expected_sumsq = rho * rho;
        return fx;
    });
}

VnSlantFixture make_vn_slant_fixture(int n, std::uint64_t seed) {
    if (n < 3 || n > 5)
        throw ValidationError("V_n-slant fixtures support n in {3, 4, 5}");
    return with_retries(seed, [&](std::mt19937_64& rng) {
        VnSlantFixture fx;
        const double length = uniform(rng, 6.0, 8.5);
        fx.prescription = base_prescription(n, length, "vn_slant_fixture_n" + std::to_string(n));

        if (n == 3) {
            // H_1* = k_2/k_1 constant.
            const std::string k1 = oscillation(rng, 0.6, 1.4);
            const double c = uniform(rng, 0.6, 1.8);
            fx.prescription.curvatures.push_back(expr_s(k1));
            fx.prescription.curvatures.push_back(expr_s(num(c) + "*(" + k1 + ")"));
            fx.expected_sumsq = c * c;
            return fx;
        }
        if (n == 4) {
            // H_1* = rho cos(xi), H_2* = rho sin(xi), k_1 = xi'.
            const double rho = uniform(rng, 0.8, 1.5);
            const double x0 = uniform(rng, 0.25, 0.4);
            const double x1 = uniform(rng, 0.05, 0.09);
            const double nu = uniform(rng, 0.6, 1.2);
            const double xa = x1 * uniform(rng, 0.2, 0.5) / nu;
            const std::string xi =
                "(" + num(x0) + " + " + num(x1) + "*s + " + num(xa) + "*sin(" + num(nu) + "*s))";
            const std::string k2 = oscillation(rng, 0.6, 1.4);
            fx.prescription.curvatures.push_back(
                expr_s(num(x1) + " + " + num(xa * nu) + "*cos(" + num(nu) + "*s)"));
            fx.prescription.curvatures.push_back(expr_s(k2));
            fx.prescription.curvatures.push_back(
                expr_s(num(rho) + "*cos(" + xi + ")*(" + k2 + ")"));
            fx.expected_sumsq = rho * rho;
            return fx;
        }
        // n == 5: H* = rho (cos(ps)cos(th), cos(ps)sin(th), sin(ps)).
        const double rho = uniform(rng, 0.8, 1.5);
        const double th0 = uniform(rng, 0.25, 0.35);
        const double th1 = uniform(rng, 0.05, 0.09);
        const double ps0 = uniform(rng, 0.22, 0.28);
        const double ps1 = uniform(rng, 0.01, 0.018);
        const std::string th = "(" + num(th0) + " + " + num(th1) + "*s)";
        const std::string ps = "(" + num(ps0) + " + " + num(ps1) + "*s)";
        const std::string k3 = oscillation(rng, 0.6, 1.4);
        fx.prescription.curvatures.push_back(expr_s(num(ps1) + "/sin(" + th + ")"));
        fx.prescription.curvatures.push_back(expr_s(
            num(th1) + " + " + num(ps1) + "*tan(" + ps + ")/tan(" + th + ")"));
        fx.prescription.curvatures.push_back(expr_s(k3));
        fx.prescription.curvatures.push_back(
            expr_s(num(rho) + "*cos(" + ps + ")*cos(" + th + ")*(" + k3 + ")"));
        fx.expected_sumsq = rho * rho;
        return fx;
    });
}

V2SlantFixture make_v2_fixture(std::uint64_t seed) {
    return with_retries(seed, [&](std::mt19937_64& rng) {
        V2SlantFixture fx;
        const double length = uniform(rng, 5.0, 7.0);
        fx.prescription = base_prescription(3, length, "v2_slant_fixture_n3");

        // k_1 = A(1 + r cos(w s)) has the closed antiderivative
        // I(s) = A s + (A r / w) sin(w s); G_1 = c0 + I, and
        // G_3 = sqrt(C - G_1^2) solves (G_1 G_3')' ... = -k_2 with
        // Sum G^2 = 1 + C constant.
        const double A = uniform(rng, 0.3, 0.7);
        const double r = uniform(rng, 0.2, 0.4);
        const double w = uniform(rng, 0.6, 1.2);
        const double c0 = uniform(rng, 0.5, 1.5);
        const double m = uniform(rng, 0.8, 1.6);
        const double g1max = c0 + A * (length + r / w);
        const double C = g1max * g1max + m * m;

        const std::string k1 = num(A) + "*(1 + " + num(r) + "*cos(" + num(w) + "*s))";
        const std::string g1 =
            "(" + num(c0) + " + " + num(A) + "*s + " + num(A * r / w) + "*sin(" + num(w) +
            "*s))";
        fx.prescription.curvatures.push_back(expr_s(k1));
        fx.prescription.curvatures.push_back(
            expr_s("(" + k1 + ")*" + g1 + "/sqrt(" + num(C) + " - " + g1 + "^2)"));
        fx.c0 = c0;
        fx.expected_sumsq = 1.0 + C;
        return fx;
    });
}

V2SlantFixture make_v2_fixture_nd(int n, std::uint64_t seed) {
    if (n == 3) return make_v2_fixture(seed);
    if (n != 4 && n != 5)
        throw ValidationError("V_2-slant fixtures support n in {3, 4, 5}");
    return with_retries(seed, [&](std::mt19937_64& rng) {
        V2SlantFixture fx;
        const double length = uniform(rng, 5.0, 6.0);
        fx.prescription = base_prescription(n, length, "v2_slant_fixture_n" + std::to_string(n));

        const double r = uniform(rng, 1.0, 2.0);
        const double u0 = uniform(rng, 0.22, 0.3);
        const double u1 = uniform(rng, 0.06, 0.09);
        const std::string us = "(" + num(u0) + " + " + num(u1) + "*s)";
        fx.c0 = r * std::sin(u0);
        fx.expected_sumsq = 1.0 + r * r;

        if (n == 4) {
            // G = (r sin u, 1, r cos u cos w, r cos u sin w), w slowly varying.
            const double w0 = uniform(rng, 0.5, 0.8);
            const double w1 = u1 * uniform(rng, 0.01, 0.025);
            const std::string ws = "(" + num(w0) + " + " + num(w1) + "*s)";
            fx.prescription.curvatures.push_back(
                expr_s(num(r * u1) + "*cos(" + us + ")"));
            fx.prescription.curvatures.push_back(
                expr_s(num(r * u1) + "*sin(" + us + ")/cos(" + ws + ")"));
            fx.prescription.curvatures.push_back(
                expr_s(num(u1) + "*tan(" + us + ")*tan(" + ws + ") - " + num(w1)));
            return fx;
        }
        // n == 5: G = (r sin u, 1, r cos u cos w cos x, r cos u cos w sin x, r cos u sin w).
        const double w0 = uniform(rng, 0.35, 0.5);
        const double w1 = u1 * uniform(rng, 0.008, 0.02);
        const double x0 = uniform(rng, 0.55, 0.75);
        const double x1 = u1 * uniform(rng, 0.008, 0.02);
        const std::string ws = "(" + num(w0) + " + " + num(w1) + "*s)";
        const std::string xs = "(" + num(x0) + " + " + num(x1) + "*s)";
        const std::string g3 = "(" + num(r) + "*cos(" + us + ")*cos(" + ws + ")*cos(" + xs + "))";
        const std::string g4 = "(" + num(r) + "*cos(" + us + ")*cos(" + ws + ")*sin(" + xs + "))";
        const std::string g5 = "(" + num(r) + "*cos(" + us + ")*sin(" + ws + "))";
        const std::string k2 = "(" + num(r * u1) + "*sin(" + us + ")/(cos(" + ws + ")*cos(" +
                               xs + ")))";
        const std::string g3d = "(" + num(-r * u1) + "*sin(" + us + ")*cos(" + ws + ")*cos(" +
                                xs + ") - " + num(r * w1) + "*cos(" + us + ")*sin(" + ws +
                                ")*cos(" + xs + ") - " + num(r * x1) + "*cos(" + us + ")*cos(" +
                                ws + ")*sin(" + xs + "))";
        const std::string g4d = "(" + num(-r * u1) + "*sin(" + us + ")*cos(" + ws + ")*sin(" +
                                xs + ") - " + num(r * w1) + "*cos(" + us + ")*sin(" + ws +
                                ")*sin(" + xs + ") + " + num(r * x1) + "*cos(" + us + ")*cos(" +
                                ws + ")*cos(" + xs + "))";
        const std::string k3 = "((" + k2 + " + " + g3d + ")/" + g4 + ")";
        const std::string k4 = "((" + k3 + "*" + g3 + " + " + g4d + ")/" + g5 + ")";
        fx.prescription.curvatures.push_back(expr_s(num(r * u1) + "*cos(" + us + ")"));
        fx.prescription.curvatures.push_back(expr_s(k2));
        fx.prescription.curvatures.push_back(expr_s(k3));
        fx.prescription.curvatures.push_back(expr_s(k4));
        return fx;
    });
}

CurvaturePrescription make_inclined_antifixture_e4(std::uint64_t seed) {
    struct Holder {
        CurvaturePrescription prescription;
    };
    return with_retries(seed, [&](std::mt19937_64& rng) {
               Holder fx;
               fx.prescription = base_prescription(4, 8.0, "inclined_antifixture_n4");
               const std::string k1 = oscillation(rng, 0.6, 1.2);
               const double c = uniform(rng, 0.8, 1.8);  // H_1 = c, so H_2 = 0
               const double d0 = uniform(rng, 0.3, 0.5);
               const double d1 = d0 * uniform(rng, 0.4, 0.7);
               const double nu = uniform(rng, 0.6, 1.3);
               const double ph = uniform(rng, 0.0, 6.28);
               fx.prescription.curvatures.push_back(expr_s(k1));
               fx.prescription.curvatures.push_back(expr_s("(" + k1 + ")/" + num(c)));
               fx.prescription.curvatures.push_back(expr_s(
                   num(d0) + " + " + num(d1) + "*sin(" + num(nu) + "*s + " + num(ph) + ")"));
               return fx;
           })
        .prescription;
}

CurvaturePrescription parse_prescription_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid prescription JSON: ") + e.what(), 1, 1);
    }
    try {
        CurvaturePrescription p;
        p.n = j.at("n").get<int>();
        for (const auto& item : j.at("k")) {
            const std::string src = item.get<std::string>();
            p.curvatures.push_back(Expression::parse(src, "s"));
        }
        const auto& span = j.at("span");
        p.s0 = span.at(0).get<double>();
        p.s1 = span.at(1).get<double>();
        p.step = j.at("h").get<double>();
        if (j.contains("init")) {
            const auto& init = j.at("init");
            if (init.contains("point"))
                p.initial_point = init.at("point").get<std::vector<double>>();
            if (init.contains("frame"))
                p.initial_frame = init.at("frame").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("name")) p.name = j.at("name").get<std::string>();
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("prescription JSON is missing fields: ") + e.what(), 1, 1);
    }
}

std::string prescription_to_json(const CurvaturePrescription& p) {
    ordered_json j;
    j["n"] = p.n;
    ordered_json k = ordered_json::array();
    for (const auto& c : p.curvatures) k.push_back(c.str());
    j["k"] = std::move(k);
    j["span"] = {p.s0, p.s1};
    j["h"] = p.step;
    if (!p.initial_point.empty() || !p.initial_frame.empty()) {
        ordered_json init;
        if (!p.initial_point.empty()) init["point"] = p.initial_point;
        if (!p.initial_frame.empty()) init["frame"] = p.initial_frame;
        j["init"] = std::move(init);
    }
    if (!p.name.empty()) j["name"] = p.name;
    return j.dump(2) + "\n";
}

CurveSpec make_synthetic_curve(CurvaturePrescription p) {
    CurveSpec spec;
    spec.n = p.n;
    spec.t0 = p.s0;
    spec.t1 = p.s1;
    spec.max_jet_order = std::min(2 * p.n + 4, Jet::kMaxOrder);
    spec.name = p.name;
    spec.data = SyntheticCurve{std::make_shared<const CurvaturePrescription>(std::move(p))};
    return spec;
}

}  // namespace helixkit
