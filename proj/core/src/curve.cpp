#include "helixkit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "expr_parser.hpp"
#include "helixkit/errors.hpp"

namespace helixkit {

namespace {

constexpr int kSampledJetCap = 5;

bool is_reserved_name(const std::string& s) {
    static const std::set<std::string> reserved = {"t",    "pi",  "e",    "sin",  "cos",
                                                   "tan",  "exp", "log",  "sqrt", "sinh",
                                                   "cosh", "dim", "on"};
    return reserved.count(s) > 0;
}

double parse_signed_number(detail::TokenStream& ts) {
    double sign = 1.0;
    while (ts.peek().kind == detail::TokKind::kMinus ||
           ts.peek().kind == detail::TokKind::kPlus) {
        if (ts.peek().kind == detail::TokKind::kMinus) sign = -sign;
        ts.next();
    }
    if (ts.peek().kind != detail::TokKind::kNumber)
        detail::fail("expected a number", ts.peek());
    const double v = ts.peek().number;
    ts.next();
    return sign * v;
}

void expect(detail::TokenStream& ts, detail::TokKind kind, const char* what) {
    if (ts.peek().kind != kind) detail::fail(std::string("expected ") + what, ts.peek());
    ts.next();
}

// Quintic (6-point) Newton interpolation; evaluating the Newton form on a
// jet argument yields value and derivatives in one pass.
Jet newton_eval_jet(const double* xs, const double* fs, int count, const Jet& tj) {
    std::vector<double> dd(fs, fs + count);
    for (int level = 1; level < count; ++level)
        for (int i = count - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    Jet acc = Jet::constant(dd[count - 1], tj.order());
    for (int i = count - 2; i >= 0; --i) acc = acc * (tj - xs[i]) + dd[i];
    return acc;
}

}  // namespace

CurveSpec parse_curve(std::string_view source) {
    detail::TokenStream ts(detail::lex(source));

    if (ts.peek().kind != detail::TokKind::kIdent || ts.peek().text != "dim")
        detail::fail("curve definition must start with 'dim'", ts.peek());
    ts.next();

    const detail::Token dim_tok = ts.peek();
    if (dim_tok.kind != detail::TokKind::kNumber)
        detail::fail("expected the dimension after 'dim'", dim_tok);
    ts.next();
    if (dim_tok.number != std::floor(dim_tok.number))
        detail::fail("dimension must be an integer", dim_tok);
    const int n = static_cast<int>(dim_tok.number);
    if (n < 3)
        detail::fail("dimension must be at least 3, got " + std::to_string(n), dim_tok);
    if (n > 16) detail::fail("dimension larger than 16 is not supported", dim_tok);

    double t0 = 0.0, t1 = 1.0;
    if (ts.peek().kind == detail::TokKind::kIdent && ts.peek().text == "on") {
        ts.next();
        const detail::Token open = ts.peek();
        expect(ts, detail::TokKind::kLBracket, "'['");
        t0 = parse_signed_number(ts);
        expect(ts, detail::TokKind::kComma, "','");
        t1 = parse_signed_number(ts);
        expect(ts, detail::TokKind::kRBracket, "']'");
        if (!(t0 < t1))
            detail::fail("interval must satisfy t0 < t1", open);
    }
    expect(ts, detail::TokKind::kColon, "':'");

    std::vector<std::string> names;
    std::vector<Expression> coords;
    while (true) {
        const detail::Token name_tok = ts.peek();
        if (name_tok.kind != detail::TokKind::kIdent)
            detail::fail("expected a coordinate name", name_tok);
        if (is_reserved_name(name_tok.text))
            detail::fail("'" + name_tok.text + "' cannot be used as a coordinate name",
                         name_tok);
        if (std::find(names.begin(), names.end(), name_tok.text) != names.end())
            detail::fail("duplicate coordinate name '" + name_tok.text + "'", name_tok);
        ts.next();
        expect(ts, detail::TokKind::kEquals, "'='");
        names.push_back(name_tok.text);
        coords.emplace_back(detail::parse_expression(ts, "t"), "t");

        if (ts.peek().kind == detail::TokKind::kSemicolon) {
            ts.next();
            if (ts.at_end()) break;
            continue;
        }
        break;
    }
    if (!ts.at_end()) detail::fail("unexpected trailing input", ts.peek());
    if (static_cast<int>(coords.size()) != n)
        throw ParseError("expected " + std::to_string(n) + " coordinates, found " +
                             std::to_string(coords.size()),
                         1, 1);

    CurveSpec spec;
    spec.n = n;
    spec.t0 = t0;
    spec.t1 = t1;
    spec.data = AnalyticCurve{std::move(names), std::move(coords)};
    spec.max_jet_order = std::min(2 * n + 4, Jet::kMaxOrder);
    return spec;
}

CurveSpec make_analytic_curve(std::vector<Expression> coordinates, double t0, double t1,
                              std::string name) {
    const int n = static_cast<int>(coordinates.size());
    if (n < 3) throw ValidationError("curves need dimension >= 3");
    if (!(t0 < t1)) throw ValidationError("interval must satisfy t0 < t1");
    CurveSpec spec;
    spec.n = n;
    spec.t0 = t0;
    spec.t1 = t1;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    spec.data = AnalyticCurve{std::move(names), std::move(coordinates)};
    spec.max_jet_order = std::min(2 * n + 4, Jet::kMaxOrder);
    spec.name = std::move(name);
    return spec;
}

CurveSpec make_sampled_curve(std::vector<double> params,
                             std::vector<std::vector<double>> points, std::string name) {
    if (params.size() != points.size())
        throw ValidationError("sampled curve: params and points differ in length");
    if (params.size() < 6)
        throw ValidationError("sampled curve needs at least 6 samples");
    for (std::size_t i = 1; i < params.size(); ++i)
        if (!(params[i - 1] < params[i]))
            throw ValidationError("sampled curve parameters must be strictly increasing");
    const int n = static_cast<int>(points.front().size());
    if (n < 3) throw ValidationError("curves need dimension >= 3");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n)
            throw ValidationError("sampled curve points have inconsistent dimension");

    CurveSpec spec;
    spec.n = n;
    spec.t0 = params.front();
    spec.t1 = params.back();
    spec.data = SampledCurve{std::move(params), std::move(points)};
    spec.max_jet_order = kSampledJetCap;
    spec.name = std::move(name);
    return spec;
}

std::vector<Jet> eval_jets(const CurveSpec& spec, double t, int order) {
    if (order < 1) throw ValidationError("jet order must be at least 1");
    if (order > spec.max_jet_order)
        throw CapabilityError("jet order " + std::to_string(order) +
                              " exceeds the configured maximum " +
                              std::to_string(spec.max_jet_order) + " for this curve");
    const double slack = 1e-9 * (std::abs(spec.t1 - spec.t0) + 1.0);
    if (t < spec.t0 - slack || t > spec.t1 + slack)
        throw ValidationError("parameter t = " + std::to_string(t) +
                              " outside the curve interval");

    if (spec.is_analytic()) {
        const auto& ac = spec.analytic();
        const Jet tj = Jet::variable(t, order);
        std::vector<Jet> out;
        out.reserve(ac.coordinates.size());
        for (const auto& c : ac.coordinates) out.push_back(c.eval(tj));
        return out;
    }
    if (spec.is_sampled()) {
        const auto& sc = spec.sampled();
        if (order > kSampledJetCap)
            throw CapabilityError("sampled curves provide jets up to order 5 only");
        const auto& xs = sc.params;
        const int m = static_cast<int>(xs.size());
        auto it = std::upper_bound(xs.begin(), xs.end(), t);
        int j = static_cast<int>(it - xs.begin()) - 1;
        j = std::clamp(j, 0, m - 2);
        const int i0 = std::clamp(j - 2, 0, m - 6);

        const Jet tj = Jet::variable(t, order);
        std::vector<Jet> out;
        out.reserve(spec.n);
        std::vector<double> fs(6);
        for (int c = 0; c < spec.n; ++c) {
            for (int k = 0; k < 6; ++k) fs[k] = sc.points[i0 + k][c];
            out.push_back(newton_eval_jet(&xs[i0], fs.data(), 6, tj));
        }
        return out;
    }
    throw CapabilityError(
        "synthetic curves have no direct jets; integrate the prescription first");
}

}  // namespace helixkit
