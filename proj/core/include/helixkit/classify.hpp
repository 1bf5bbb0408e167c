#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helixkit/frenet.hpp"
#include "helixkit/harmonic.hpp"

namespace helixkit {

enum class HelixKind { Inclined, V2Slant, VnSlant };
enum class Method { Algebraic, Differential };

const char* helix_kind_name(HelixKind kind);
const char* method_name(Method method);

struct Tolerances {
    /// Constancy: normalized spread (max-min)/max(1, |mean|) of the tested
    /// quantity must stay below this.
    double constancy = 1e-6;

    /// The last function of the system must stay at least this far from 0.
    double nonzero = 1e-8;

    /// |<V_j, X>| must exceed this (guards the phi != pi/2 exclusion).
    double angle = 1e-6;
};

/// Decision record for one (kind, method) pair. Both conditions of the
/// two-part characterizations are reported as residuals so near-threshold
/// cases stay inspectable:
///   is_helix  <=>  constancy_residual <= constancy AND nonzero_margin >= nonzero.
struct Verdict {
    HelixKind kind = HelixKind::Inclined;
    Method method = Method::Algebraic;
    bool is_helix = false;
    double constancy_residual = 0.0;
    double nonzero_margin = 0.0;
    double sumsq_mean = 0.0;             // mean of the tested sum of squares
    std::optional<double> c0;            // fitted constant, V2-slant only
    std::vector<double> per_point;       // tested quantity per grid point
};

struct AxisVerification {
    double mean = 0.0;
    double spread = 0.0;  // max - min of <V_j, X> along the grid
    double vmin = 0.0;
    double vmax = 0.0;
    bool pass = false;
};

enum class AxisSource { Reconstructed, BruteForce };

struct AxisEstimate {
    std::vector<double> axis;  // unit, canonical sign
    double phi = 0.0;          // cone angle, in (0, pi) \ {pi/2}
    AxisSource source = AxisSource::Reconstructed;
    AxisVerification verify;
    double max_dxds = 0.0;           // max |dX/ds| estimate over the grid
    double max_point_deviation = 0.0;  // max |X(s) - mean X| before averaging
    double norm_error = 0.0;           // | |mean X| - 1 |
};

/// Inclined-curve test. Algebraic: Sum_{1..n-2} H_i^2 constant. Differential:
/// H_{n-2}' = -k_{n-1} H_{n-3}. Both AND the nonzero margin of H_{n-2}.
Verdict classify_inclined(const FrenetApparatus& apparatus, const HarmonicProfile& profile,
                          Method method, const Tolerances& tols = {});

/// V_n-slant test on the H* system; differential residual is
/// |H*_{n-2}' - k_1 H*_{n-3}|.
Verdict classify_vn_slant(const FrenetApparatus& apparatus, const HarmonicProfile& profile,
                          Method method, const Tolerances& tols = {});

/// V_2-slant test: fits the G integration constant, then applies
/// Sum_{1..n} G_i^2 constancy (algebraic) or G_n' = -k_{n-1} G_{n-1}
/// (differential), with the nonzero margin of G_n.
Verdict classify_v2_slant(const FrenetApparatus& apparatus, Method method,
                          const Tolerances& tols = {});

/// Axis assembled per grid point from the frame-coefficient formulas of the
/// characterization proofs, then averaged, normalized, and re-verified.
/// Requires verdict.is_helix.
AxisEstimate reconstruct_axis(const FrenetApparatus& apparatus, const HarmonicProfile& profile,
                              const Verdict& verdict, const Tolerances& tols = {});

/// Statistics of <V_j, X> along the grid (frame_index is 1-based); passes iff
/// the spread stays within constancy and |mean| clears the angle tolerance.
AxisVerification verify_axis(const FrenetApparatus& apparatus, std::span<const double> axis,
                             int frame_index, const Tolerances& tols = {});

/// Independent oracle: scans a quasi-uniform grid of unit directions
/// (Fibonacci lattice for n=3, product-of-angles for n=4,5; about
/// resolution^(n-1) candidates), refines the best by coordinate descent, and
/// accepts only if the refined direction passes verify_axis.
std::optional<AxisEstimate> brute_force_axis(const FrenetApparatus& apparatus, int frame_index,
                                             int resolution, const Tolerances& tols = {});

}  // namespace helixkit
