#include "helixkit/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "helixkit/errors.hpp"
#include "helixkit/io.hpp"
#include "helixkit/synthesize.hpp"
#include "parallel.hpp"

namespace helixkit {

namespace {

using JetVec = std::vector<Jet>;

Jet jet_dot(const JetVec& a, const JetVec& b) {
    Jet acc = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

JetVec jet_derivative(const JetVec& a) {
    JetVec out;
    out.reserve(a.size());
    for (const Jet& j : a) out.push_back(derivative(j));
    return out;
}

Jet jet_det(std::vector<JetVec>& rows) {
    const std::size_t m = rows.size();
    if (m == 1) return rows[0][0];
    if (m == 2) return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    Jet acc;
    bool first = true;
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<JetVec> sub(m - 1);
        for (std::size_t r = 1; r < m; ++r) {
            sub[r - 1].reserve(m - 1);
            for (std::size_t k = 0; k < m; ++k)
                if (k != c) sub[r - 1].push_back(rows[r][k]);
        }
        Jet term = rows[0][c] * jet_det(sub);
        if (c % 2 == 1) term = -term;
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    return acc;
}

// Orientation completion: the unique unit vector with
// <c, x> = det[u_1, ..., u_{n-1}, x], so det of the full frame is +1.
JetVec generalized_cross(const std::vector<JetVec>& u, int n) {
    JetVec c(n);
    for (int r = 0; r < n; ++r) {
        std::vector<JetVec> minor(n - 1);
        for (int col = 0; col < n - 1; ++col) {
            minor[col].reserve(n - 1);
            for (int row = 0; row < n; ++row)
                if (row != r) minor[col].push_back(u[col][row]);
        }
        // minor currently holds columns; jet_det expects rows, but
        // det(A) = det(A^T) so the layout is immaterial.
        Jet m = jet_det(minor);
        c[r] = ((r + n - 1) % 2 == 0) ? std::move(m) : -m;
    }
    Jet len = sqrt(jet_dot(c, c));
    for (Jet& j : c) j = j / len;
    return c;
}

// Repeated application of d/ds = (1/|alpha'|) d/dt; exact chain rule on jets.
Jet to_arclength_jet(const Jet& f_in_t, const Jet& speed_in_t, int p) {
    std::vector<double> out(p + 1);
    out[0] = f_in_t.value();
    Jet cur = f_in_t;
    for (int j = 1; j <= p; ++j) {
        cur = derivative(cur) / speed_in_t;
        out[j] = cur.value();
    }
    return Jet(std::move(out));
}

int resolve_sderiv_order(const CurveSpec& spec, const FrenetOptions& opts) {
    const int wanted = opts.sderiv_order >= 0 ? opts.sderiv_order : std::max(2, spec.n - 1);
    if (spec.is_sampled()) {
        const int cap = 5 - spec.n;
        if (cap < 0)
            throw CapabilityError(
                "sampled curves carry order-5 jets only, which cannot support n = " +
                std::to_string(spec.n));
        if (opts.sderiv_order >= 0 && opts.sderiv_order > cap)
            throw CapabilityError("sampled curve jets support at most " + std::to_string(cap) +
                                  " arclength derivatives in dimension " +
                                  std::to_string(spec.n));
        return std::min(wanted, cap);
    }
    return wanted;
}

}  // namespace

FrenetSample frenet_at(const CurveSpec& spec, double t, const FrenetOptions& opts) {
    const int n = spec.n;
    const int p = resolve_sderiv_order(spec, opts);
    const int order = n + p;

    const std::vector<Jet> coords = eval_jets(spec, t, order);

    std::vector<JetVec> deriv(n);  // deriv[r-1] = alpha^(r)
    deriv[0] = jet_derivative(coords);
    for (int r = 2; r <= n - 1; ++r) deriv[r - 1] = jet_derivative(deriv[r - 2]);

    const Jet speed2 = jet_dot(deriv[0], deriv[0]);
    if (std::sqrt(speed2.value()) < opts.regular_tol)
        throw NotRegularError("curve is not regular at t = " + std::to_string(t) +
                                  ": |alpha'| below tolerance",
                              t);
    const Jet speed = sqrt(speed2);

    // Modified Gram-Schmidt on alpha', ..., alpha^(n-1), two passes.
    std::vector<JetVec> frame;
    frame.reserve(n);
    for (int i = 1; i <= n - 1; ++i) {
        JetVec w = deriv[i - 1];
        const double base = std::sqrt(jet_dot(w, w).value());
        for (int pass = 0; pass < 2; ++pass) {
            for (const JetVec& v : frame) {
                const Jet proj = jet_dot(w, v);
                for (int c = 0; c < n; ++c) w[c] -= proj * v[c];
            }
        }
        const Jet r2 = jet_dot(w, w);
        const double rn = std::sqrt(std::max(0.0, r2.value()));
        if (!(rn > opts.pivot_rel_tol * base) || base == 0.0)
            throw DegenerateCurveError(
                "degenerate curve at t = " + std::to_string(t) + ": Gram-Schmidt step " +
                    std::to_string(i) + " found no independent direction",
                t, i);
        const Jet len = sqrt(r2);
        for (Jet& c : w) c = c / len;
        frame.push_back(std::move(w));
    }
    frame.push_back(generalized_cross(frame, n));

    std::vector<Jet> curvatures(n - 1);
    for (int i = 1; i <= n - 1; ++i) {
        const JetVec dv = jet_derivative(frame[i - 1]);
        const Jet k_t = jet_dot(dv, frame[i]) / speed;
        curvatures[i - 1] = to_arclength_jet(k_t, speed, p);
    }

    if (opts.enforce_nondegeneracy) {
        for (int i = 1; i <= n - 2; ++i)
            if (curvatures[i - 1].value() < opts.curvature_tol)
                throw DegenerateCurveError(
                    "degenerate curve at t = " + std::to_string(t) + ": curvature k_" +
                        std::to_string(i) + " below tolerance (step " + std::to_string(i + 1) +
                        ")",
                    t, i + 1);
        if (std::abs(curvatures[n - 2].value()) < opts.curvature_tol)
            throw DegenerateCurveError(
                "degenerate curve at t = " + std::to_string(t) + ": curvature k_" +
                    std::to_string(n - 1) + " vanishes (step " + std::to_string(n) + ")",
                t, n);
    }

    FrenetSample sample;
    sample.t = t;
    sample.s = 0.0;
    sample.speed = speed;
    sample.frame.resize(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) sample.frame[i][c] = frame[i][c].value();
    sample.curvatures = std::move(curvatures);
    return sample;
}

FrenetApparatus build_apparatus(const CurveSpec& spec, int grid_size,
                                const FrenetOptions& opts) {
    if (spec.is_synthetic()) {
        SynthesisOptions sopts;
        sopts.target_grid = grid_size;
        sopts.sderiv_order = opts.sderiv_order;
        return integrate_frenet(*spec.synthetic().prescription, sopts).apparatus;
    }

    if (grid_size < 16)
        throw ValidationError("grid too small: need at least 16 points, got " +
                              std::to_string(grid_size));

    std::vector<double> grid;
    if (spec.is_analytic()) {
        grid.resize(grid_size);
        for (int j = 0; j < grid_size; ++j)
            grid[j] = spec.t0 + (spec.t1 - spec.t0) * j / (grid_size - 1);
    } else {
        const auto& params = spec.sampled().params;
        const int m = static_cast<int>(params.size());
        if (m < 16) throw ValidationError("grid too small: sampled curve has only " +
                                          std::to_string(m) + " samples");
        if (m <= grid_size) {
            grid = params;
        } else {
            grid.reserve(grid_size);
            int prev = -1;
            for (int j = 0; j < grid_size; ++j) {
                int idx = static_cast<int>(std::llround(
                    static_cast<double>(j) * (m - 1) / (grid_size - 1)));
                if (idx <= prev) idx = prev + 1;
                grid.push_back(params[idx]);
                prev = idx;
            }
        }
    }
    const int N = static_cast<int>(grid.size());

    FrenetApparatus app;
    app.spec = spec;
    app.grid = grid;
    app.options = opts;
    app.samples.resize(N);
    detail::parallel_for(static_cast<std::size_t>(N), [&](std::size_t j) {
        try {
            app.samples[j] = frenet_at(spec, grid[j], opts);
        } catch (const DegenerateCurveError& e) {
            throw DegenerateCurveError(std::string(e.what()) + " (grid index " +
                                           std::to_string(j) + ")",
                                       e.t, e.step);
        }
    });

    app.midpoints.resize(N - 1);
    FrenetOptions mid_opts = opts;
    mid_opts.sderiv_order = 0;
    detail::parallel_for(static_cast<std::size_t>(N - 1), [&](std::size_t j) {
        const double tm = 0.5 * (grid[j] + grid[j + 1]);
        const FrenetSample mid = frenet_at(spec, tm, mid_opts);
        app.midpoints[j] = IntervalMidpoint{mid.speed.value(), mid.curvatures[0].value()};
    });

    double s = 0.0;
    app.samples[0].s = 0.0;
    for (int j = 0; j + 1 < N; ++j) {
        const double h = grid[j + 1] - grid[j];
        const double ds = h / 6.0 *
                          (app.samples[j].speed.value() + 4.0 * app.midpoints[j].speed +
                           app.samples[j + 1].speed.value());
        if (!(ds > 0.0))
            throw ValidationError("arclength not strictly increasing at grid index " +
                                  std::to_string(j));
        s += ds;
        app.samples[j + 1].s = s;
    }
    return app;
}

NondegeneracyReport check_nondegenerate(const FrenetApparatus& app) {
    const int n = app.n();
    const int N = app.size();
    NondegeneracyReport report;
    report.tolerance = app.options.curvature_tol;
    report.min_abs_curvature.assign(n - 1, 0.0);

    for (int i = 0; i < n - 1; ++i) {
        double best = std::abs(app.samples[0].curvatures[i].value());
        for (int g = 1; g < N; ++g)
            best = std::min(best, std::abs(app.samples[g].curvatures[i].value()));
        report.min_abs_curvature[i] = best;
    }
    report.margin = report.min_abs_curvature[0] - report.tolerance;
    for (double m : report.min_abs_curvature)
        report.margin = std::min(report.margin, m - report.tolerance);
    report.pass = report.margin > 0.0;

    if (!report.pass) {
        for (int i = 0; i < n - 1 && !report.crossing; ++i) {
            for (int g = 0; g < N; ++g) {
                const double kg = app.samples[g].curvatures[i].value();
                if (std::abs(kg) <= report.tolerance) {
                    report.crossing =
                        NondegeneracyReport::Crossing{i + 1, g, app.samples[g].t};
                    break;
                }
                if (g + 1 < N) {
                    const double kn = app.samples[g + 1].curvatures[i].value();
                    if (kg * kn < 0.0) {
                        const double tg = app.samples[g].t, tn = app.samples[g + 1].t;
                        const double tz = tg + (tn - tg) * kg / (kg - kn);
                        report.crossing = NondegeneracyReport::Crossing{i + 1, g, tz};
                        break;
                    }
                }
            }
        }
    }
    return report;
}

void write_apparatus_csv(const FrenetApparatus& app, std::ostream& out) {
    const int n = app.n();
    out << "# {\"type\":\"apparatus\",\"n\":" << n << ",\"grid_size\":" << app.size() << "}\n";
    out << "t,s";
    for (int i = 1; i <= n - 1; ++i) out << ",k_" << i;
    for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= n; ++c) out << ",V_" << i << "_" << c;
    out << "\n";
    for (const FrenetSample& sm : app.samples) {
        out << fmt17(sm.t) << "," << fmt17(sm.s);
        for (const Jet& k : sm.curvatures) out << "," << fmt17(k.value());
        for (const auto& row : sm.frame)
            for (double v : row) out << "," << fmt17(v);
        out << "\n";
    }
}

}  // namespace helixkit
