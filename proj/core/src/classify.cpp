#include "helixkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "helixkit/errors.hpp"
#include "parallel.hpp"
#include "vecmath.hpp"

namespace helixkit {

namespace {

struct Spread {
    double mean, spread, vmin, vmax;
};

Spread spread_of(const std::vector<double>& v) {
    double mn = v[0], mx = v[0], acc = 0.0;
    for (double x : v) {
        mn = std::min(mn, x);
        mx = std::max(mx, x);
        acc += x;
    }
    return Spread{acc / static_cast<double>(v.size()), mx - mn, mn, mx};
}

double normalized_spread(const std::vector<double>& v) {
    const Spread s = spread_of(v);
    return s.spread / std::max(1.0, std::abs(s.mean));
}

void require_kind(const HarmonicProfile& profile, ProfileKind kind, const char* caller) {
    if (profile.kind != kind)
        throw ValidationError(std::string(caller) + ": harmonic profile kind mismatch");
}

double min_abs(const std::vector<std::vector<double>>& values, int col) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : values) best = std::min(best, std::abs(row[col]));
    return best;
}

// Shared two-condition decision. `residual_at(g)` is the differential-law
// residual at grid point g; `last_col` indexes the function whose nonzero
// margin the theorems require.
template <typename ResidualAt>
Verdict decide(const FrenetApparatus& app, const HarmonicProfile& prof, HelixKind kind,
               Method method, int last_col, const Tolerances& tols,
               const ResidualAt& residual_at) {
    const int N = app.size();
    Verdict v;
    v.kind = kind;
    v.method = method;
    v.nonzero_margin = min_abs(prof.values, last_col);
    v.sumsq_mean = spread_of(prof.sumsq).mean;
    v.c0 = prof.c0;

    if (method == Method::Algebraic) {
        v.per_point = prof.sumsq;
        v.constancy_residual = normalized_spread(prof.sumsq);
    } else {
        v.per_point.resize(N);
        double max_dlast = 0.0;
        for (int g = 0; g < N; ++g) {
            v.per_point[g] = residual_at(g);
            max_dlast = std::max(max_dlast, std::abs(prof.dvalues[g][last_col]));
        }
        double worst = 0.0;
        for (double r : v.per_point) worst = std::max(worst, std::abs(r));
        v.constancy_residual = worst / std::max(1.0, max_dlast);
    }
    v.is_helix =
        v.constancy_residual <= tols.constancy && v.nonzero_margin >= tols.nonzero;
    return v;
}

}  // namespace

const char* helix_kind_name(HelixKind kind) {
    switch (kind) {
        case HelixKind::Inclined: return "inclined";
        case HelixKind::V2Slant: return "v2_slant";
        case HelixKind::VnSlant: return "vn_slant";
    }
    return "?";
}

const char* method_name(Method method) {
    return method == Method::Algebraic ? "algebraic" : "differential";
}

Verdict classify_inclined(const FrenetApparatus& app, const HarmonicProfile& prof,
                          Method method, const Tolerances& tols) {
    require_kind(prof, ProfileKind::H, "classify_inclined");
    const int n = app.n();
    // H_{n-2}' + k_{n-1} H_{n-3}; for n = 3 the second term is k_2 H_0 = 0.
    return decide(app, prof, HelixKind::Inclined, method, n - 2, tols, [&](int g) {
        const double k_last = app.samples[g].curvatures[n - 2].value();
        return prof.dvalue(g, n - 2) + k_last * prof.value(g, n - 3);
    });
}

Verdict classify_vn_slant(const FrenetApparatus& app, const HarmonicProfile& prof,
                          Method method, const Tolerances& tols) {
    require_kind(prof, ProfileKind::HStar, "classify_vn_slant");
    const int n = app.n();
    return decide(app, prof, HelixKind::VnSlant, method, n - 2, tols, [&](int g) {
        const double k1 = app.samples[g].curvatures[0].value();
        return prof.dvalue(g, n - 2) - k1 * prof.value(g, n - 3);
    });
}

Verdict classify_v2_slant(const FrenetApparatus& app, Method method, const Tolerances& tols) {
    const GConstantFit fit = fit_g_constant(app);
    const HarmonicProfile prof = functions_g(app, fit.c0);
    const int n = app.n();
    Verdict v = decide(app, prof, HelixKind::V2Slant, method, n - prof.lo, tols, [&](int g) {
        const double k_last = app.samples[g].curvatures[n - 2].value();
        return prof.dvalue(g, n) + k_last * prof.value(g, n - 1);
    });
    v.c0 = fit.c0;
    return v;
}

AxisVerification verify_axis(const FrenetApparatus& app, std::span<const double> axis,
                             int frame_index, const Tolerances& tols) {
    const int N = app.size();
    std::vector<double> dots(N);
    for (int g = 0; g < N; ++g) {
        const auto& row = app.samples[g].frame[frame_index - 1];
        double acc = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * axis[c];
        dots[g] = acc;
    }
    const Spread s = spread_of(dots);
    AxisVerification out;
    out.mean = s.mean;
    out.spread = s.spread;
    out.vmin = s.vmin;
    out.vmax = s.vmax;
    out.pass = s.spread <= tols.constancy && std::abs(s.mean) >= tols.angle;
    return out;
}

namespace {

// Canonical sign: largest-magnitude coordinate positive, ties to lowest index.
void canonicalize(std::vector<double>& x) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[arg])) arg = i;
    if (x[arg] < 0.0)
        for (double& v : x) v = -v;
}

int verify_index(HelixKind kind, int n) {
    switch (kind) {
        case HelixKind::Inclined: return 1;
        case HelixKind::V2Slant: return 2;
        case HelixKind::VnSlant: return n;
    }
    return 1;
}

}  // namespace

AxisEstimate reconstruct_axis(const FrenetApparatus& app, const HarmonicProfile& prof,
                              const Verdict& verdict, const Tolerances& tols) {
    if (!verdict.is_helix)
        throw ValidationError("reconstruct_axis called on a non-helix verdict");
    const int n = app.n();
    const int N = app.size();

    double cos_phi;
    if (verdict.kind == HelixKind::V2Slant) {
        // Sum G_i^2 = 1/cos^2(phi)
        cos_phi = 1.0 / std::sqrt(verdict.sumsq_mean);
        require_kind(prof, ProfileKind::G, "reconstruct_axis");
    } else {
        // Sum H_i^2 = tan^2(phi)
        cos_phi = 1.0 / std::sqrt(1.0 + verdict.sumsq_mean);
        require_kind(prof,
                     verdict.kind == HelixKind::Inclined ? ProfileKind::H : ProfileKind::HStar,
                     "reconstruct_axis");
    }

    // Per-point assembly from the proofs' frame-coefficient formulas.
    std::vector<std::vector<double>> xs(N, std::vector<double>(n, 0.0));
    for (int g = 0; g < N; ++g) {
        const auto& frame = app.samples[g].frame;
        auto& x = xs[g];
        auto add = [&](double coef, int frame_row_1based) {
            const auto& row = frame[frame_row_1based - 1];
            for (int c = 0; c < n; ++c) x[c] += coef * row[c];
        };
        switch (verdict.kind) {
            case HelixKind::Inclined:
                add(cos_phi, 1);
                for (int i = 1; i <= n - 2; ++i) add(prof.value(g, i) * cos_phi, i + 2);
                break;
            case HelixKind::VnSlant:
                add(cos_phi, n);
                for (int i = 1; i <= n - 2; ++i) add(prof.value(g, i) * cos_phi, n - (i + 1));
                break;
            case HelixKind::V2Slant:
                for (int i = 1; i <= n; ++i) add(prof.value(g, i) * cos_phi, i);
                break;
        }
    }

    std::vector<double> mean(n, 0.0);
    for (const auto& x : xs) detail::axpy(mean, 1.0 / N, x);

    AxisEstimate est;
    est.source = AxisSource::Reconstructed;
    for (int g = 0; g < N; ++g) {
        std::vector<double> d = xs[g];
        detail::axpy(d, -1.0, mean);
        est.max_point_deviation = std::max(est.max_point_deviation, detail::norm(d));
        if (g + 1 < N) {
            std::vector<double> dd = xs[g + 1];
            detail::axpy(dd, -1.0, xs[g]);
            const double ds = app.samples[g + 1].s - app.samples[g].s;
            est.max_dxds = std::max(est.max_dxds, detail::norm(dd) / ds);
        }
    }
    est.norm_error = std::abs(detail::norm(mean) - 1.0);
    detail::scale(mean, 1.0 / detail::norm(mean));
    canonicalize(mean);
    est.axis = std::move(mean);
    est.verify = verify_axis(app, est.axis, verify_index(verdict.kind, n), tols);
    est.phi = std::acos(std::clamp(est.verify.mean, -1.0, 1.0));
    return est;
}

namespace {

// Candidate directions, quasi-uniform over the unit sphere in E^n.
std::vector<double> candidate(int n, int resolution, long long index) {
    std::vector<double> x(n);
    if (n == 3) {
        const long long count = static_cast<long long>(resolution) * resolution;
        const double z = 1.0 - 2.0 * (index + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double golden = 2.399963229728653;  // 2*pi*(1 - 1/phi)
        const double a = golden * static_cast<double>(index);
        x[0] = r * std::cos(a);
        x[1] = r * std::sin(a);
        x[2] = z;
        return x;
    }
    // Product-of-angles grid: n-2 polar angles in (0, pi), one azimuth.
    std::vector<double> angles(n - 1);
    long long rem = index;
    for (int a = 0; a < n - 1; ++a) {
        const long long step = rem % resolution;
        rem /= resolution;
        const double frac = (static_cast<double>(step) + 0.5) / resolution;
        angles[a] = a < n - 2 ? std::numbers::pi * frac : 2.0 * std::numbers::pi * frac;
    }
    double sinprod = 1.0;
    for (int c = 0; c < n - 1; ++c) {
        x[c] = sinprod * std::cos(angles[c]);
        sinprod *= std::sin(angles[c]);
    }
    x[n - 1] = sinprod;
    return x;
}

struct ScanBest {
    double spread = std::numeric_limits<double>::infinity();
    std::vector<double> axis;

    bool better_than(const ScanBest& other) const {
        if (spread != other.spread) return spread < other.spread;
        return axis < other.axis;  // lexicographic tie-break, deterministic
    }
};

// Keeps the K best candidates seen, ordered best-first.
struct TopK {
    static constexpr std::size_t kKeep = 8;
    std::vector<ScanBest> entries;

    double worst_kept() const {
        return entries.size() < kKeep ? std::numeric_limits<double>::infinity()
                                      : entries.back().spread;
    }

    void offer(ScanBest cand) {
        auto it = entries.begin();
        while (it != entries.end() && it->better_than(cand)) ++it;
        entries.insert(it, std::move(cand));
        if (entries.size() > kKeep) entries.pop_back();
    }
};

double spread_along(const std::vector<double>& flat_vj, int n, int N,
                    const std::vector<double>& x, double abort_above) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (int g = 0; g < N; ++g) {
        double acc = 0.0;
        const double* row = &flat_vj[static_cast<std::size_t>(g) * n];
        for (int c = 0; c < n; ++c) acc += row[c] * x[c];
        mn = std::min(mn, acc);
        mx = std::max(mx, acc);
        if (mx - mn > abort_above) return mx - mn;
    }
    return mx - mn;
}

double variance_along(const std::vector<double>& flat_vj, int n, int N,
                      const std::vector<double>& x) {
    double mean = 0.0, sq = 0.0;
    for (int g = 0; g < N; ++g) {
        double acc = 0.0;
        const double* row = &flat_vj[static_cast<std::size_t>(g) * n];
        for (int c = 0; c < n; ++c) acc += row[c] * x[c];
        mean += acc;
        sq += acc * acc;
    }
    mean /= N;
    return sq / N - mean * mean;
}

}  // namespace

std::optional<AxisEstimate> brute_force_axis(const FrenetApparatus& app, int frame_index,
                                             int resolution, const Tolerances& tols) {
    const int n = app.n();
    const int N = app.size();
    if (n > 5)
        throw CapabilityError("brute-force axis search supports n <= 5");
    if (resolution < 4) throw ValidationError("brute-force resolution must be >= 4");
    const long long candidates = n == 3
                                     ? static_cast<long long>(resolution) * resolution
                                     : static_cast<long long>(std::llround(
                                           std::pow(resolution, n - 1)));
    if (candidates > (1LL << 24))
        throw CapabilityError("brute-force sphere grid too large: " +
                              std::to_string(candidates) + " candidates");

    std::vector<double> flat(static_cast<std::size_t>(N) * n);
    for (int g = 0; g < N; ++g)
        for (int c = 0; c < n; ++c)
            flat[static_cast<std::size_t>(g) * n + c] = app.samples[g].frame[frame_index - 1][c];

    // Chunked scan with a deterministic (spread, lexicographic) reduction;
    // several survivors are kept because the spread landscape can have
    // shallow spurious minima that trap a single descent start.
    const int chunks = 64;
    std::vector<TopK> best_per_chunk(chunks);
    detail::parallel_for(chunks, [&](std::size_t chunk) {
        TopK local;
        const long long lo = candidates * static_cast<long long>(chunk) / chunks;
        const long long hi = candidates * static_cast<long long>(chunk + 1) / chunks;
        for (long long i = lo; i < hi; ++i) {
            std::vector<double> x = candidate(n, resolution, i);
            const double sp = spread_along(flat, n, N, x, local.worst_kept());
            if (sp < local.worst_kept()) local.offer(ScanBest{sp, std::move(x)});
        }
        best_per_chunk[chunk] = std::move(local);
    });
    TopK survivors;
    for (auto& b : best_per_chunk)
        for (auto& e : b.entries) survivors.offer(std::move(e));

    // Local descent from every survivor. The spread itself is piecewise
    // linear and stalls axis-aligned descent at its kinks, so the descent
    // minimizes the smooth variance of the dots; the acceptance decision
    // below still uses the spread at the refined direction.
    std::vector<std::vector<double>> directions;
    for (int d = 0; d < n; ++d) {
        std::vector<double> e(n, 0.0);
        e[d] = 1.0;
        directions.push_back(e);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (double sb : {1.0, -1.0}) {
                std::vector<double> e(n, 0.0);
                e[a] = 1.0;
                e[b] = sb;
                directions.push_back(e);
            }

    ScanBest best;
    for (const ScanBest& start : survivors.entries) {
        std::vector<double> cur = start.axis;
        double cur_var = variance_along(flat, n, N, cur);
        double step = std::numbers::pi / resolution;
        for (int iter = 0; step > 1e-9 && iter < 40000; ++iter) {
            bool improved = false;
            for (const auto& dir : directions) {
                for (double sgn : {1.0, -1.0}) {
                    std::vector<double> x = cur;
                    detail::axpy(x, sgn * step, dir);
                    detail::scale(x, 1.0 / detail::norm(x));
                    const double v = variance_along(flat, n, N, x);
                    if (v < cur_var || (v == cur_var && x < cur)) {
                        cur = std::move(x);
                        cur_var = v;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        ScanBest refined{spread_along(flat, n, N, cur,
                                      std::numeric_limits<double>::infinity()),
                         std::move(cur)};
        if (refined.better_than(best)) best = std::move(refined);
    }

    canonicalize(best.axis);
    const AxisVerification check = verify_axis(app, best.axis, frame_index, tols);
    if (!check.pass) return std::nullopt;

    AxisEstimate est;
    est.axis = std::move(best.axis);
    est.source = AxisSource::BruteForce;
    est.verify = check;
    est.phi = std::acos(std::clamp(check.mean, -1.0, 1.0));
    return est;
}

}  // namespace helixkit
