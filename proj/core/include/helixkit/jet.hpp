#pragma once

#include <iosfwd>
#include <vector>

namespace helixkit {

/// Truncated Taylor expansion of a scalar function at a point, stored in
/// derivative convention: entry j is the j-th derivative value, so an
/// order-m jet holds (f, f', ..., f^(m)). Entries are thus directly the
/// quantities that appear in the curvature formulas, no factorial scaling.
///
/// Arithmetic is the exact truncated-Taylor algebra: products obey the
/// Leibniz rule on the stored entries, and the elementary functions
/// propagate through power-series recurrences. Binary operations between
/// jets of different order truncate to the smaller order.
class Jet {
public:
    /// Hard cap on the order; binomial/factorial tables stay exact below it.
    static constexpr int kMaxOrder = 48;

    /// Order-0 zero jet.
    Jet();

    /// Jet with prescribed derivative entries; order = coeffs.size() - 1.
    explicit Jet(std::vector<double> coeffs);

    /// Constant function: (v, 0, ..., 0).
    static Jet constant(double value, int order);

    /// The evaluation parameter itself: (t, 1, 0, ..., 0).
    static Jet variable(double value, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }
    double deriv(int j) const;
    const std::vector<double>& coeffs() const { return c_; }

    /// First min(order, q) + 1 entries.
    Jet truncated(int q) const;

    Jet operator-() const;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Jet& rhs);
    Jet& operator/=(const Jet& rhs);

    Jet& operator+=(double rhs);
    Jet& operator-=(double rhs);
    Jet& operator*=(double rhs);
    Jet& operator/=(double rhs);

private:
    std::vector<double> c_;
};

Jet operator+(Jet lhs, const Jet& rhs);
Jet operator-(Jet lhs, const Jet& rhs);
Jet operator*(const Jet& lhs, const Jet& rhs);
Jet operator/(const Jet& lhs, const Jet& rhs);

Jet operator+(Jet lhs, double rhs);
Jet operator-(Jet lhs, double rhs);
Jet operator*(Jet lhs, double rhs);
Jet operator/(Jet lhs, double rhs);
Jet operator+(double lhs, Jet rhs);
Jet operator-(double lhs, const Jet& rhs);
Jet operator*(double lhs, Jet rhs);
Jet operator/(double lhs, const Jet& rhs);

/// d/dt: shifts the entries down one slot; the result has order - 1.
/// Raises CapabilityError on an order-0 jet (the derivative is unknown).
Jet derivative(const Jet& x);

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);

/// x^r with a constant real exponent. Integer exponents reduce to repeated
/// multiplication and work for any base value; fractional exponents require
/// a positive base value.
Jet pow(const Jet& x, double r);

std::ostream& operator<<(std::ostream& out, const Jet& x);

}  // namespace helixkit
