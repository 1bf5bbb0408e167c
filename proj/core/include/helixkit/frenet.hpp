#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "helixkit/curve.hpp"
#include "helixkit/jet.hpp"

namespace helixkit {

struct FrenetOptions {
    /// Number of arclength derivatives carried by each curvature jet;
    /// -1 picks max(2, n - 1), which feeds the deepest recursion plus one.
    int sderiv_order = -1;

    /// Gram-Schmidt pivot: residual norm below pivot_rel_tol times the norm
    /// of the vector being orthogonalized declares degeneracy.
    double pivot_rel_tol = 1e-10;

    /// Floor on |k_i|; crossing it fails non-degeneracy.
    double curvature_tol = 1e-10;

    /// Floor on |alpha'(t)|.
    double regular_tol = 1e-12;

    /// When false, curvature-magnitude checks are skipped at construction so
    /// nearly-degenerate apparatuses can still be inspected and reported.
    bool enforce_nondegeneracy = true;
};

/// Frenet data of one curve point. The frame rows are plain values; the
/// speed is a jet in t and each curvature a jet in arclength s, so
/// downstream recursions can differentiate without finite differencing.
struct FrenetSample {
    double t = 0.0;
    double s = 0.0;
    Jet speed;
    std::vector<std::vector<double>> frame;  // rows V_1..V_n
    std::vector<Jet> curvatures;             // k_1..k_{n-1}, jets in s
};

/// Midpoint data of one grid interval, used by the Simpson accumulations.
struct IntervalMidpoint {
    double speed = 0.0;
    double k1 = 0.0;
};

struct FrenetApparatus {
    CurveSpec spec;
    std::vector<double> grid;
    std::vector<FrenetSample> samples;
    std::vector<IntervalMidpoint> midpoints;  // size grid.size() - 1
    FrenetOptions options;

    int n() const { return spec.n; }
    int size() const { return static_cast<int>(samples.size()); }
};

/// Full Frenet data at one parameter value: frame by twice-reorthogonalized
/// Gram-Schmidt on alpha', ..., alpha^(n-1) with V_n completing positive
/// orientation, curvatures from the Frenet system converted to arclength
/// jets via d/ds = (1/|alpha'|) d/dt.
FrenetSample frenet_at(const CurveSpec& spec, double t, const FrenetOptions& options = {});

/// Samples the curve on a grid of `grid_size` parameter values (uniform for
/// analytic curves, a decimated subset of the samples for sampled curves)
/// and accumulates arclength by per-interval Simpson quadrature.
/// Synthetic specs are materialized by integrating their prescription.
FrenetApparatus build_apparatus(const CurveSpec& spec, int grid_size,
                                const FrenetOptions& options = {});

struct NondegeneracyReport {
    bool pass = false;
    double tolerance = 0.0;
    std::vector<double> min_abs_curvature;  // per k_i
    double margin = 0.0;                    // min over i of (min |k_i| - tolerance)

    struct Crossing {
        int curvature_index;  // 1-based
        int grid_index;
        double t;
    };
    std::optional<Crossing> crossing;
};

NondegeneracyReport check_nondegenerate(const FrenetApparatus& apparatus);

/// CSV columns: t, s, k_1..k_{n-1}, then frame rows V_1..V_n each as n
/// coordinates; 17 significant digits.
void write_apparatus_csv(const FrenetApparatus& apparatus, std::ostream& out);

}  // namespace helixkit
