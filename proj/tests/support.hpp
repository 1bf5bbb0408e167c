#pragma once

// Shared test helpers: independent oracles (finite differences, symbolic
// polynomial arithmetic) and closed forms for the circular helix.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "helixkit/curve.hpp"
#include "helixkit/expression.hpp"
#include "helixkit/synthesize.hpp"

namespace testsupport {

// Platform-stable uniform draw (distribution classes are not portable).
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
}

// 4th-order central finite differences of f, derivatives 1..4 at x.
inline std::vector<double> central_differences(const std::function<double(double)>& f,
                                               double x, double h) {
    const double f1 = f(x + h), fm1 = f(x - h);
    const double f2 = f(x + 2 * h), fm2 = f(x - 2 * h);
    const double f3 = f(x + 3 * h), fm3 = f(x - 3 * h);
    const double f0 = f(x);
    std::vector<double> d(5, 0.0);
    d[0] = f0;
    d[1] = (-f2 + 8 * f1 - 8 * fm1 + fm2) / (12 * h);
    d[2] = (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    d[3] = (-f3 + 8 * f2 - 13 * f1 + 13 * fm1 - 8 * fm2 + fm3) / (8 * h * h * h);
    d[4] = (-f3 + 12 * f2 - 39 * f1 + 56 * f0 - 39 * fm1 + 12 * fm2 - fm3) /
           (6 * h * h * h * h);
    return d;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Dense polynomial in the coefficient basis, an independent oracle for the
// jet arithmetic on polynomial inputs.
struct Poly {
    std::vector<double> c;  // c[i] t^i

    double eval(double t) const {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly{{0.0}};
        Poly d;
        d.c.resize(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
        return d;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out;
        out.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
        return out;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly neg = b;
        for (double& v : neg.c) v = -v;
        return a + neg;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        out.c.assign(a.c.size() + b.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
        return out;
    }
};

// Derivatives 0..m of p at t via symbolic differentiation.
inline std::vector<double> poly_derivs(Poly p, double t, int m) {
    std::vector<double> out;
    out.reserve(m + 1);
    for (int j = 0; j <= m; ++j) {
        out.push_back(p.eval(t));
        p = p.derivative();
    }
    return out;
}

// Derivatives 0..m of f/g at t via the symbolic quotient rule, keeping the
// j-th derivative reduced as num_j / g^(j+1) with
// num_{j+1} = num_j' g - (j+1) num_j g'.
inline std::vector<double> rational_derivs(const Poly& f, const Poly& g, double t, int m) {
    std::vector<double> out;
    out.reserve(m + 1);
    Poly num = f;
    const Poly gp = g.derivative();
    const double gv = g.eval(t);
    double denv = gv;
    for (int j = 0; j <= m; ++j) {
        out.push_back(num.eval(t) / denv);
        num = num.derivative() * g - num * gp * Poly{{static_cast<double>(j + 1)}};
        denv *= gv;
    }
    return out;
}

struct HelixClosedForm {
    double a, b, c;  // c = sqrt(a^2 + b^2)

    explicit HelixClosedForm(double a_, double b_) : a(a_), b(b_), c(std::sqrt(a_ * a_ + b_ * b_)) {}

    double k1() const { return a / (c * c); }
    double k2() const { return b / (c * c); }

    std::vector<double> point(double t) const {
        return {a * std::cos(t), a * std::sin(t), b * t};
    }
    std::vector<double> tangent(double t) const {
        return {-a * std::sin(t) / c, a * std::cos(t) / c, b / c};
    }
    std::vector<double> normal(double t) const {
        return {-std::cos(t), -std::sin(t), 0.0};
    }
    std::vector<double> binormal(double t) const {
        return {b * std::sin(t) / c, -b * std::cos(t) / c, a / c};
    }
};

}  // namespace testsupport
