#include "helixkit/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "helixkit/errors.hpp"
#include "helixkit/io.hpp"
#include "parallel.hpp"

namespace helixkit {

namespace {

int curvature_jet_order(const FrenetApparatus& app) {
    return app.samples.front().curvatures.front().order();
}

void require_depth(const FrenetApparatus& app, const char* system) {
    const int n = app.n();
    const int p = curvature_jet_order(app);
    if (p < n - 2)
        throw CapabilityError(std::string(system) + " recursion for n = " + std::to_string(n) +
                              " needs curvature jets of order >= " + std::to_string(n - 2) +
                              ", apparatus carries order " + std::to_string(p));
}

// k_i as a jet in s, 1-based.
const Jet& k(const FrenetSample& sm, int i) { return sm.curvatures[i - 1]; }

std::vector<Jet> h_jets_at(const FrenetSample& sm, int n) {
    const int p = sm.curvatures.front().order();
    std::vector<Jet> H(n - 1);
    H[0] = Jet::constant(0.0, p);
    H[1] = k(sm, 1) / k(sm, 2);
    for (int i = 2; i <= n - 2; ++i)
        H[i] = (derivative(H[i - 1]) + k(sm, i) * H[i - 2]) / k(sm, i + 1);
    return H;
}

std::vector<Jet> hstar_jets_at(const FrenetSample& sm, int n) {
    const int p = sm.curvatures.front().order();
    std::vector<Jet> H(n - 1);
    H[0] = Jet::constant(0.0, p);
    H[1] = k(sm, n - 1) / k(sm, n - 2);
    for (int i = 2; i <= n - 2; ++i)
        H[i] = (k(sm, n - i) * H[i - 2] - derivative(H[i - 1])) / k(sm, n - (i + 1));
    return H;
}

// G_1 jet from the accumulated integral plus the exact relation G_1' = k_1.
std::vector<Jet> g_jets_at(const FrenetSample& sm, int n, double g1_value) {
    const Jet& k1 = k(sm, 1);
    std::vector<double> g1(k1.order() + 2);
    g1[0] = g1_value;
    for (int j = 0; j <= k1.order(); ++j) g1[j + 1] = k1.coeffs()[j];

    std::vector<Jet> G(n + 1);  // 1-based, G[0] unused
    G[1] = Jet(std::move(g1));
    G[2] = Jet::constant(1.0, G[1].order());
    if (n >= 3) G[3] = (k(sm, 1) / k(sm, 2)) * G[1];
    for (int i = 4; i <= n; ++i)
        G[i] = (k(sm, i - 2) * G[i - 2] + derivative(G[i - 1])) / k(sm, i - 1);
    return G;
}

// Simpson over t of k_1 |alpha'| between consecutive grid points; returns
// the running integral of k_1 with respect to arclength at each grid point.
std::vector<double> k1_arclength_integral(const FrenetApparatus& app) {
    const int N = app.size();
    std::vector<double> prefix(N, 0.0);
    for (int j = 0; j + 1 < N; ++j) {
        const double h = app.grid[j + 1] - app.grid[j];
        const double ga = app.samples[j].curvatures[0].value() * app.samples[j].speed.value();
        const double gm = app.midpoints[j].k1 * app.midpoints[j].speed;
        const double gb =
            app.samples[j + 1].curvatures[0].value() * app.samples[j + 1].speed.value();
        prefix[j + 1] = prefix[j] + h / 6.0 * (ga + 4.0 * gm + gb);
    }
    return prefix;
}

template <typename JetsAt>
HarmonicProfile collect(const FrenetApparatus& app, ProfileKind kind, int lo, int hi,
                        const JetsAt& jets) {
    const int n = app.n();
    const int N = app.size();
    HarmonicProfile prof;
    prof.kind = kind;
    prof.n = n;
    prof.lo = lo;
    prof.hi = hi;
    prof.values.resize(N);
    prof.dvalues.resize(N);
    prof.sumsq.resize(N);
    detail::parallel_for(static_cast<std::size_t>(N), [&](std::size_t g) {
        const std::vector<Jet> J = jets(app.samples[g], g);
        auto& vals = prof.values[g];
        auto& dvals = prof.dvalues[g];
        vals.resize(hi - lo + 1);
        dvals.resize(hi - lo + 1);
        double acc = 0.0;
        for (int i = lo; i <= hi; ++i) {
            vals[i - lo] = J[i].value();
            dvals[i - lo] = J[i].deriv(1);
            if (i >= 1) acc += J[i].value() * J[i].value();
        }
        prof.sumsq[g] = acc;
    });
    return prof;
}

}  // namespace

HarmonicProfile harmonic_h(const FrenetApparatus& app) {
    require_depth(app, "harmonic H");
    const int n = app.n();
    return collect(app, ProfileKind::H, 0, n - 2,
                   [n](const FrenetSample& sm, std::size_t) { return h_jets_at(sm, n); });
}

HarmonicProfile harmonic_hstar(const FrenetApparatus& app) {
    require_depth(app, "harmonic H*");
    const int n = app.n();
    return collect(app, ProfileKind::HStar, 0, n - 2,
                   [n](const FrenetSample& sm, std::size_t) { return hstar_jets_at(sm, n); });
}

HarmonicProfile functions_g(const FrenetApparatus& app, double c0) {
    require_depth(app, "G-function");
    const int n = app.n();
    const std::vector<double> prefix = k1_arclength_integral(app);
    HarmonicProfile prof = collect(app, ProfileKind::G, 1, n,
                                   [&](const FrenetSample& sm, std::size_t g) {
                                       return g_jets_at(sm, n, c0 + prefix[g]);
                                   });
    prof.c0 = c0;
    return prof;
}

GConstantFit fit_g_constant(const FrenetApparatus& app) {
    require_depth(app, "G-function");
    const int N = app.size();

    // G_i is affine in c0, so Sum G_i^2 is an exact per-point quadratic
    // q_g(c0) = a_g + b_g c0 + c_g c0^2 recoverable from two evaluations.
    const HarmonicProfile p0 = functions_g(app, 0.0);
    const HarmonicProfile p1 = functions_g(app, 1.0);
    const int count = p0.hi - p0.lo + 1;
    std::vector<double> qa(N), qb(N), qc(N);
    for (int g = 0; g < N; ++g) {
        double a = 0.0, b = 0.0, c = 0.0;
        for (int i = 0; i < count; ++i) {
            const double A = p0.values[g][i];
            const double B = p1.values[g][i] - A;
            a += A * A;
            b += 2.0 * A * B;
            c += B * B;
        }
        qa[g] = a;
        qb[g] = b;
        qc[g] = c;
    }

    auto objective = [&](double c0) {
        double mean = 0.0;
        for (int g = 0; g < N; ++g) mean += qa[g] + c0 * (qb[g] + c0 * qc[g]);
        mean /= N;
        double var = 0.0;
        for (int g = 0; g < N; ++g) {
            const double d = qa[g] + c0 * (qb[g] + c0 * qc[g]) - mean;
            var += d * d;
        }
        var /= N;
        return var / std::max(1.0, mean * mean);
    };

    const std::vector<double> prefix = k1_arclength_integral(app);
    double imax = 0.0;
    for (double v : prefix) imax = std::max(imax, std::abs(v));
    const double bracket = imax + 10.0;

    // Coarse scan, then golden section inside the best neighborhood. The
    // variance is quartic in c0, so it can have two local minima; the scan
    // picks the right basin.
    constexpr int kScan = 256;
    double best_c = -bracket, best_f = objective(-bracket);
    for (int i = 1; i <= kScan; ++i) {
        const double c = -bracket + 2.0 * bracket * i / kScan;
        const double f = objective(c);
        if (f < best_f) {
            best_f = f;
            best_c = c;
        }
    }
    double lo = best_c - 2.0 * bracket / kScan;
    double hi = best_c + 2.0 * bracket / kScan;

    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double c0 = 0.5 * (lo + hi);
    return GConstantFit{c0, objective(c0)};
}

void write_profile_csv(const HarmonicProfile& prof, const FrenetApparatus& app,
                       std::ostream& out) {
    const char* kind = prof.kind == ProfileKind::H ? "H"
                       : prof.kind == ProfileKind::HStar ? "Hstar"
                                                         : "G";
    out << "# {\"type\":\"profile\",\"kind\":\"" << kind << "\",\"n\":" << prof.n;
    if (prof.c0) out << ",\"c0\":" << fmt17(*prof.c0);
    out << "}\n";
    out << "s";
    for (int i = prof.lo; i <= prof.hi; ++i) out << ",value_" << i;
    for (int i = prof.lo; i <= prof.hi; ++i) out << ",dvalue_" << i;
    out << ",sumsq\n";
    for (int g = 0; g < prof.size(); ++g) {
        out << fmt17(app.samples[g].s);
        for (double v : prof.values[g]) out << "," << fmt17(v);
        for (double v : prof.dvalues[g]) out << "," << fmt17(v);
        out << "," << fmt17(prof.sumsq[g]) << "\n";
    }
}

}  // namespace helixkit
