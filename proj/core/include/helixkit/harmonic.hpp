#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "helixkit/frenet.hpp"

namespace helixkit {

enum class ProfileKind { H, HStar, G };

/// Pointwise values and exact arclength derivatives of one of the three
/// recursion systems along an apparatus grid:
///
///   H      indices 0..n-2,  H_0 = 0,  H_1 = k_1/k_2
///   HStar  indices 0..n-2,  reversed-curvature analogue
///   G      indices 1..n,    G_1 = c0 + integral of k_1 ds,  G_2 = 1
///
/// sumsq is the per-point sum of squares over the range the
/// characterization theorems test: 1..n-2 for H and HStar, 1..n for G.
struct HarmonicProfile {
    ProfileKind kind = ProfileKind::H;
    int n = 0;
    int lo = 0;
    int hi = 0;
    std::vector<std::vector<double>> values;   // [grid point][index - lo]
    std::vector<std::vector<double>> dvalues;  // d/ds of the same
    std::vector<double> sumsq;
    std::optional<double> c0;

    double value(int grid, int index) const { return values[grid][index - lo]; }
    double dvalue(int grid, int index) const { return dvalues[grid][index - lo]; }
    int size() const { return static_cast<int>(values.size()); }
};

/// Harmonic curvatures H_i via jet arithmetic: derivatives in the recursion
/// are exact jet entries, never differences of the grid values.
HarmonicProfile harmonic_h(const FrenetApparatus& apparatus);

/// Reversed-index system H_i*.
HarmonicProfile harmonic_hstar(const FrenetApparatus& apparatus);

/// G system at integration constant c0: G_1(s) = c0 + Simpson-accumulated
/// integral of k_1 over arclength from the first grid point.
HarmonicProfile functions_g(const FrenetApparatus& apparatus, double c0);

struct GConstantFit {
    double c0 = 0.0;
    double residual = 0.0;  // achieved normalized variance of Sum G_i^2
};

/// The c0 minimizing the normalized variance of Sum G_i^2 over the grid,
/// located by a coarse scan plus golden-section refinement on the bracket
/// +/- (max |integral of k_1| + 10), to width 1e-10.
GConstantFit fit_g_constant(const FrenetApparatus& apparatus);

/// CSV with a '#' JSON header (kind, n, c0), then columns
/// s, value_<lo>.., dvalue_<lo>.., sumsq at 17 significant digits.
void write_profile_csv(const HarmonicProfile& profile, const FrenetApparatus& apparatus,
                       std::ostream& out);

}  // namespace helixkit
