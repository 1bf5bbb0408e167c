#include "helixkit/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "helixkit/errors.hpp"

namespace helixkit {

namespace {

constexpr int kRows = Jet::kMaxOrder + 1;

// Pascal-triangle binomials; integer additions in double are exact here.
const std::array<std::array<double, kRows>, kRows>& binom_table() {
    static const auto table = [] {
        std::array<std::array<double, kRows>, kRows> b{};
        for (int r = 0; r < kRows; ++r) {
            b[r][0] = 1.0;
            for (int c = 1; c <= r; ++c)
                b[r][c] = b[r - 1][c - 1] + (c <= r - 1 ? b[r - 1][c] : 0.0);
        }
        return b;
    }();
    return table;
}

const std::array<double, kRows>& factorials() {
    static const auto table = [] {
        std::array<double, kRows> f{};
        f[0] = 1.0;
        for (int i = 1; i < kRows; ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    return table;
}

void check_order(int order) {
    if (order < 0) throw ValidationError("jet order must be nonnegative");
    if (order > Jet::kMaxOrder)
        throw CapabilityError("jet order " + std::to_string(order) +
                              " exceeds the hard maximum " + std::to_string(Jet::kMaxOrder));
}

// Derivative entries -> Taylor coefficients of the local series.
std::vector<double> to_taylor(const std::vector<double>& c) {
    const auto& fact = factorials();
    std::vector<double> a(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) a[j] = c[j] / fact[j];
    return a;
}

std::vector<double> from_taylor(const std::vector<double>& a) {
    const auto& fact = factorials();
    std::vector<double> c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j] * fact[j];
    return c;
}

std::vector<double> exp_taylor(const std::vector<double>& a) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<double> b(a.size());
    b[0] = std::exp(a[0]);
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * a[j] * b[k - j];
        b[k] = acc / k;
    }
    return b;
}

std::vector<double> log_taylor(const std::vector<double>& a) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<double> b(a.size());
    b[0] = std::log(a[0]);
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k - 1; ++j) acc += j * b[j] * a[k - j];
        b[k] = (a[k] - acc / k) / a[0];
    }
    return b;
}

std::vector<double> sqrt_taylor(const std::vector<double>& a) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<double> b(a.size());
    b[0] = std::sqrt(a[0]);
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k - 1; ++j) acc += b[j] * b[k - j];
        b[k] = (a[k] - acc) / (2.0 * b[0]);
    }
    return b;
}

// r-th power, a[0] > 0.
std::vector<double> pow_taylor(const std::vector<double>& a, double r) {
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<double> b(a.size());
    b[0] = std::pow(a[0], r);
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += ((r + 1.0) * j - k) * a[j] * b[k - j];
        b[k] = acc / (k * a[0]);
    }
    return b;
}

void sincos_taylor(const std::vector<double>& a, std::vector<double>& s,
                   std::vector<double>& c, bool hyperbolic) {
    const int m = static_cast<int>(a.size()) - 1;
    s.assign(a.size(), 0.0);
    c.assign(a.size(), 0.0);
    if (hyperbolic) {
        s[0] = std::sinh(a[0]);
        c[0] = std::cosh(a[0]);
    } else {
        s[0] = std::sin(a[0]);
        c[0] = std::cos(a[0]);
    }
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (int k = 1; k <= m; ++k) {
        double sa = 0.0, ca = 0.0;
        for (int j = 1; j <= k; ++j) {
            sa += j * a[j] * c[k - j];
            ca += j * a[j] * s[k - j];
        }
        s[k] = sa / k;
        c[k] = sign * ca / k;
    }
}

}  // namespace

Jet::Jet() : c_(1, 0.0) {}

Jet::Jet(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw ValidationError("jet needs at least the value entry");
    check_order(order());
}

Jet Jet::constant(double value, int order) {
    check_order(order);
    std::vector<double> c(order + 1, 0.0);
    c[0] = value;
    return Jet(std::move(c));
}

Jet Jet::variable(double value, int order) {
    check_order(order);
    std::vector<double> c(order + 1, 0.0);
    c[0] = value;
    if (order >= 1) c[1] = 1.0;
    return Jet(std::move(c));
}

double Jet::deriv(int j) const {
    if (j < 0 || j > order())
        throw ValidationError("jet derivative index " + std::to_string(j) +
                              " out of range for order " + std::to_string(order()));
    return c_[j];
}

Jet Jet::truncated(int q) const {
    if (q < 0) throw ValidationError("jet truncation order must be nonnegative");
    if (q >= order()) return *this;
    return Jet(std::vector<double>(c_.begin(), c_.begin() + q + 1));
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (double& v : out.c_) v = -v;
    return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
    const std::size_t m = std::min(c_.size(), rhs.c_.size());
    c_.resize(m);
    for (std::size_t j = 0; j < m; ++j) c_[j] += rhs.c_[j];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    const std::size_t m = std::min(c_.size(), rhs.c_.size());
    c_.resize(m);
    for (std::size_t j = 0; j < m; ++j) c_[j] -= rhs.c_[j];
    return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
    *this = *this * rhs;
    return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
    *this = *this / rhs;
    return *this;
}

Jet& Jet::operator+=(double rhs) {
    c_[0] += rhs;
    return *this;
}

Jet& Jet::operator-=(double rhs) {
    c_[0] -= rhs;
    return *this;
}

Jet& Jet::operator*=(double rhs) {
    for (double& v : c_) v *= rhs;
    return *this;
}

Jet& Jet::operator/=(double rhs) {
    if (rhs == 0.0) throw DomainError("jet division by zero scalar");
    for (double& v : c_) v /= rhs;
    return *this;
}

Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }

Jet operator*(const Jet& lhs, const Jet& rhs) {
    const auto& a = lhs.coeffs();
    const auto& b = rhs.coeffs();
    const std::size_t m = std::min(a.size(), b.size());
    const auto& binom = binom_table();
    std::vector<double> out(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += binom[j][i] * a[i] * b[j - i];
        out[j] = acc;
    }
    return Jet(std::move(out));
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
    const auto& a = lhs.coeffs();
    const auto& b = rhs.coeffs();
    if (b[0] == 0.0) throw DomainError("jet division by zero value entry");
    const std::size_t m = std::min(a.size(), b.size());
    const auto& binom = binom_table();
    std::vector<double> h(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = a[j];
        for (std::size_t i = 0; i < j; ++i) acc -= binom[j][i] * h[i] * b[j - i];
        h[j] = acc / b[0];
    }
    return Jet(std::move(h));
}

Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
Jet operator/(Jet lhs, double rhs) { return lhs /= rhs; }
Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
Jet operator-(double lhs, const Jet& rhs) { return -rhs + lhs; }
Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }

Jet operator/(double lhs, const Jet& rhs) {
    return Jet::constant(lhs, rhs.order()) / rhs;
}

Jet derivative(const Jet& x) {
    if (x.order() == 0)
        throw CapabilityError("jet order exhausted: cannot differentiate an order-0 jet");
    const auto& c = x.coeffs();
    return Jet(std::vector<double>(c.begin() + 1, c.end()));
}

Jet sin(const Jet& x) {
    std::vector<double> s, c;
    sincos_taylor(to_taylor(x.coeffs()), s, c, false);
    return Jet(from_taylor(s));
}

Jet cos(const Jet& x) {
    std::vector<double> s, c;
    sincos_taylor(to_taylor(x.coeffs()), s, c, false);
    return Jet(from_taylor(c));
}

Jet tan(const Jet& x) {
    std::vector<double> s, c;
    sincos_taylor(to_taylor(x.coeffs()), s, c, false);
    if (c[0] == 0.0) throw DomainError("tan: cosine vanishes at the evaluation point");
    return Jet(from_taylor(s)) / Jet(from_taylor(c));
}

Jet exp(const Jet& x) { return Jet(from_taylor(exp_taylor(to_taylor(x.coeffs())))); }

Jet log(const Jet& x) {
    if (x.value() <= 0.0) throw DomainError("log of nonpositive value");
    return Jet(from_taylor(log_taylor(to_taylor(x.coeffs()))));
}

Jet sqrt(const Jet& x) {
    if (x.value() <= 0.0) throw DomainError("sqrt of nonpositive value");
    return Jet(from_taylor(sqrt_taylor(to_taylor(x.coeffs()))));
}

Jet sinh(const Jet& x) {
    std::vector<double> s, c;
    sincos_taylor(to_taylor(x.coeffs()), s, c, true);
    return Jet(from_taylor(s));
}

Jet cosh(const Jet& x) {
    std::vector<double> s, c;
    sincos_taylor(to_taylor(x.coeffs()), s, c, true);
    return Jet(from_taylor(c));
}

Jet pow(const Jet& x, double r) {
    const double rounded = std::nearbyint(r);
    if (std::abs(r - rounded) <= 1e-9 && std::abs(rounded) <= 1e9) {
        long long k = static_cast<long long>(rounded);
        if (k == 0) return Jet::constant(1.0, x.order());
        const bool negative = k < 0;
        unsigned long long e = negative ? static_cast<unsigned long long>(-k)
                                        : static_cast<unsigned long long>(k);
        Jet base = x;
        Jet acc = Jet::constant(1.0, x.order());
        while (e > 0) {
            if (e & 1ULL) acc = acc * base;
            e >>= 1ULL;
            if (e > 0) base = base * base;
        }
        if (!negative) return acc;
        if (x.value() == 0.0) throw DomainError("pow: negative exponent with zero base value");
        return Jet::constant(1.0, x.order()) / acc;
    }
    if (x.value() <= 0.0)
        throw DomainError("pow: fractional exponent requires a positive base value");
    return Jet(from_taylor(pow_taylor(to_taylor(x.coeffs()), r)));
}

std::ostream& operator<<(std::ostream& out, const Jet& x) {
    out << "jet[";
    for (int j = 0; j <= x.order(); ++j) {
        if (j > 0) out << ", ";
        out << x.coeffs()[j];
    }
    return out << "]";
}

}  // namespace helixkit
