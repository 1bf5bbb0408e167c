// Batch front end: parse curve files or prescriptions, run the helix
// classifiers, emit report JSON and CSV profiles.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "helixkit/classify.hpp"
#include "helixkit/errors.hpp"
#include "helixkit/harmonic.hpp"
#include "helixkit/io.hpp"
#include "helixkit/synthesize.hpp"
#include "parallel.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace helixkit;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCurve = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
    int grid = 512;
    int jet_cap = 0;  // 0 keeps the per-curve default
    Tolerances tols;
    std::string kinds = "inclined,v2,vn";
    bool oracle = false;
    int oracle_res = 64;
    std::string format = "both";
    std::string out_dir = ".";
};

struct KindSelection {
    bool inclined = false;
    bool v2 = false;
    bool vn = false;
};

KindSelection parse_kinds(const std::string& spec) {
    KindSelection sel;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inclined" || item == "v1") sel.inclined = true;
        else if (item == "v2") sel.v2 = true;
        else if (item == "vn") sel.vn = true;
        else if (!item.empty())
            throw CLI::ValidationError("--kinds", "unknown kind '" + item + "'");
    }
    if (!sel.inclined && !sel.v2 && !sel.vn)
        throw CLI::ValidationError("--kinds", "no kinds selected");
    return sel;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
    if (dynamic_cast<const Error*>(&e)) return kExitCurve;
    return kExitInternal;
}

CurveSpec load_curve_input(const std::string& path) {
    const std::string text = read_file(path);
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string stem = fs::path(path).stem().string();
    if (i < text.size() && text[i] == '{') {
        CurvaturePrescription p = parse_prescription_json(text);
        if (p.name.empty()) p.name = stem;
        return make_synthetic_curve(std::move(p));
    }
    if (text.compare(i, 3, "dim") == 0) {
        CurveSpec spec = parse_curve(text);
        spec.name = stem;
        return spec;
    }
    if (i < text.size() && (text[i] == '#' || text.compare(i, 2, "t,") == 0))
        return parse_points_csv(text, stem);
    throw ParseError("unrecognized input: expected a curve definition, a prescription JSON, "
                     "or a points CSV",
                     1, 1);
}

ordered_json axis_json(const AxisEstimate& est) {
    ordered_json j;
    j["X"] = est.axis;
    j["phi"] = est.phi;
    j["source"] = est.source == AxisSource::Reconstructed ? "reconstructed" : "brute_force";
    ordered_json v;
    v["mean"] = est.verify.mean;
    v["spread"] = est.verify.spread;
    v["min"] = est.verify.vmin;
    v["max"] = est.verify.vmax;
    v["pass"] = est.verify.pass;
    j["verification"] = std::move(v);
    if (est.source == AxisSource::Reconstructed) {
        j["max_dxds"] = est.max_dxds;
        j["max_point_deviation"] = est.max_point_deviation;
        j["norm_error"] = est.norm_error;
    }
    return j;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["kind"] = helix_kind_name(v.kind);
    j["method"] = method_name(v.method);
    j["is_helix"] = v.is_helix;
    j["constancy_residual"] = v.constancy_residual;
    j["nonzero_margin"] = v.nonzero_margin;
    j["sumsq_mean"] = v.sumsq_mean;
    if (v.c0) j["c0"] = *v.c0;
    return j;
}

struct FileOutcome {
    std::string summary;
    int code = 0;
};

FileOutcome analyze_one(const std::string& path, const RunConfig& cfg,
                        const KindSelection& sel) {
    CurveSpec spec = load_curve_input(path);
    if (cfg.jet_cap > 0) spec.max_jet_order = cfg.jet_cap;

    FrenetApparatus app = build_apparatus(spec, cfg.grid);

    std::vector<Verdict> verdicts;
    std::optional<HarmonicProfile> prof_h, prof_hstar, prof_g;
    ordered_json axes = ordered_json::object();
    ordered_json oracle = ordered_json::object();
    std::optional<AxisEstimate> first_axis;

    auto handle_kind = [&](HelixKind kind) {
        Verdict alg, dif;
        const HarmonicProfile* prof = nullptr;
        if (kind == HelixKind::Inclined) {
            prof_h = harmonic_h(app);
            prof = &*prof_h;
            alg = classify_inclined(app, *prof, Method::Algebraic, cfg.tols);
            dif = classify_inclined(app, *prof, Method::Differential, cfg.tols);
        } else if (kind == HelixKind::VnSlant) {
            prof_hstar = harmonic_hstar(app);
            prof = &*prof_hstar;
            alg = classify_vn_slant(app, *prof, Method::Algebraic, cfg.tols);
            dif = classify_vn_slant(app, *prof, Method::Differential, cfg.tols);
        } else {
            alg = classify_v2_slant(app, Method::Algebraic, cfg.tols);
            dif = classify_v2_slant(app, Method::Differential, cfg.tols);
            prof_g = functions_g(app, alg.c0.value());
            prof = &*prof_g;
        }
        verdicts.push_back(alg);
        verdicts.push_back(dif);
        if (alg.is_helix) {
            const AxisEstimate est = reconstruct_axis(app, *prof, alg, cfg.tols);
            axes[helix_kind_name(kind)] = axis_json(est);
            if (!first_axis) first_axis = est;
        }
        if (cfg.oracle) {
            const int j = kind == HelixKind::Inclined ? 1
                          : kind == HelixKind::V2Slant ? 2
                                                       : app.n();
            const auto found = brute_force_axis(app, j, cfg.oracle_res, cfg.tols);
            oracle[helix_kind_name(kind)] = found ? axis_json(*found) : ordered_json(nullptr);
        }
    };

    if (sel.inclined) handle_kind(HelixKind::Inclined);
    if (sel.v2) handle_kind(HelixKind::V2Slant);
    if (sel.vn) handle_kind(HelixKind::VnSlant);

    ordered_json report;
    report["curve"] = spec.name;
    report["n"] = spec.n;
    ordered_json vj = ordered_json::array();
    for (const auto& v : verdicts) vj.push_back(verdict_json(v));
    report["verdicts"] = std::move(vj);
    report["axis"] = first_axis ? axis_json(*first_axis) : ordered_json(nullptr);
    report["axes"] = std::move(axes);
    if (cfg.oracle) report["oracle"] = std::move(oracle);
    ordered_json tj;
    tj["constancy"] = cfg.tols.constancy;
    tj["nonzero"] = cfg.tols.nonzero;
    tj["angle"] = cfg.tols.angle;
    report["tolerances"] = std::move(tj);
    ordered_json gj;
    gj["N"] = app.size();
    gj["t0"] = spec.t0;
    gj["t1"] = spec.t1;
    gj["jet_order"] = spec.max_jet_order;
    report["grid"] = std::move(gj);

    const fs::path out_dir(cfg.out_dir);
    const std::string stem = spec.name.empty() ? fs::path(path).stem().string() : spec.name;
    const bool want_json = cfg.format == "json" || cfg.format == "both";
    const bool want_csv = cfg.format == "csv" || cfg.format == "both";
    if (want_json)
        atomic_write_file((out_dir / (stem + ".report.json")).string(), report.dump(2) + "\n");
    if (want_csv) {
        std::ostringstream buf;
        write_apparatus_csv(app, buf);
        atomic_write_file((out_dir / (stem + ".apparatus.csv")).string(), buf.str());
        auto write_profile = [&](const HarmonicProfile& p, const char* tag) {
            std::ostringstream pb;
            write_profile_csv(p, app, pb);
            atomic_write_file((out_dir / (stem + ".profile_" + tag + ".csv")).string(),
                              pb.str());
        };
        if (prof_h) write_profile(*prof_h, "H");
        if (prof_hstar) write_profile(*prof_hstar, "Hstar");
        if (prof_g) write_profile(*prof_g, "G");
    }

    auto verdict_answer = [&](HelixKind kind) -> std::string {
        bool all = true, any = false;
        for (const auto& v : verdicts)
            if (v.kind == kind) {
                any = true;
                all = all && v.is_helix;
            }
        if (!any) return "-";
        return all ? "yes" : "no";
    };
    FileOutcome outcome;
    outcome.summary = path + ": inclined=" + verdict_answer(HelixKind::Inclined) +
                      " v2_slant=" + verdict_answer(HelixKind::V2Slant) +
                      " vn_slant=" + verdict_answer(HelixKind::VnSlant);
    return outcome;
}

int cmd_analyze(const std::vector<std::string>& inputs, const RunConfig& cfg) {
    const KindSelection sel = parse_kinds(cfg.kinds);
    std::vector<FileOutcome> outcomes(inputs.size());
    detail::parallel_for(inputs.size(), [&](std::size_t i) {
        try {
            outcomes[i] = analyze_one(inputs[i], cfg, sel);
        } catch (const std::exception& e) {
            outcomes[i] = FileOutcome{inputs[i] + ": error: " + e.what(),
                                      exit_code_for(e)};
        }
    });
    int worst = 0;
    for (const auto& o : outcomes) {
        (o.code == 0 ? std::cout : std::cerr) << o.summary << "\n";
        worst = std::max(worst, o.code);
    }
    return worst;
}

int cmd_synthesize(const std::string& input, const RunConfig& cfg) {
    try {
        CurvaturePrescription p = parse_prescription_json(read_file(input));
        if (p.name.empty()) p.name = fs::path(input).stem().string();
        SynthesisOptions opts;
        opts.target_grid = cfg.grid;
        const SynthesisResult result = integrate_frenet(p);
        const fs::path out_dir(cfg.out_dir);
        atomic_write_file((out_dir / (p.name + ".points.csv")).string(),
                          points_csv(result.sampled));
        std::ostringstream buf;
        write_apparatus_csv(result.apparatus, buf);
        atomic_write_file((out_dir / (p.name + ".apparatus.csv")).string(), buf.str());
        std::cout << input << ": synthesized " << result.sampled.sampled().params.size()
                  << " points, recorded grid " << result.apparatus.size() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << input << ": error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet apparatus, harmonic curvatures, and helix classification for "
                 "curves in Euclidean n-space"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> inputs;
    std::string synth_input;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--grid", cfg.grid, "grid size N (>= 16)")
            ->envname("HELIXKIT_GRID");
        sub->add_option("--out", cfg.out_dir, "output directory")->envname("HELIXKIT_OUT");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "classify curves and write reports");
    analyze->add_option("inputs", inputs, "curve files (grammar, prescription JSON, points CSV)")
        ->required()
        ->expected(-1);
    add_common(analyze);
    analyze->add_option("--jet-cap", cfg.jet_cap, "override the per-curve jet order cap")
        ->envname("HELIXKIT_JET_CAP");
    analyze->add_option("--tol-const", cfg.tols.constancy, "constancy tolerance")
        ->envname("HELIXKIT_TOL_CONST");
    analyze->add_option("--tol-zero", cfg.tols.nonzero, "nonzero-margin tolerance")
        ->envname("HELIXKIT_TOL_ZERO");
    analyze->add_option("--tol-angle", cfg.tols.angle, "phi != pi/2 guard tolerance")
        ->envname("HELIXKIT_TOL_ANGLE");
    analyze->add_option("--kinds", cfg.kinds, "comma list from {inclined,v2,vn}")
        ->envname("HELIXKIT_KINDS");
    analyze->add_flag("--oracle", cfg.oracle, "cross-check with the brute-force axis search")
        ->envname("HELIXKIT_ORACLE");
    analyze->add_option("--oracle-res", cfg.oracle_res, "sphere-grid resolution per angle")
        ->envname("HELIXKIT_ORACLE_RES");
    analyze->add_option("--format", cfg.format, "json|csv|both")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->envname("HELIXKIT_FORMAT");

    CLI::App* synth = app.add_subcommand("synthesize",
                                         "integrate a curvature prescription to a curve");
    synth->add_option("input", synth_input, "prescription JSON file")->required();
    add_common(synth);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(inputs, cfg);
        return cmd_synthesize(synth_input, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
