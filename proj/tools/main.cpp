// Command-line front end: classify / analyze / verify / dual.
//
// Exit codes: 0 ok, 2 parse or usage error, 3 out-of-family germ,
// 4 hypothesis violation, 5 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <variant>

#include "singsurf/report.hpp"
#include "singsurf/verify.hpp"

using namespace singsurf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitOutOfFamily = 3;
constexpr int kExitHypothesis = 4;
constexpr int kExitVerifyFailed = 5;

using CoeffsVariant = std::variant<NormalFormCoeffs<Rat>, NormalFormCoeffs<Alg>>;

struct LoadedGerm {
    CoeffsVariant coeffs;
    std::optional<std::string> label_hint;
};

/// Load a germ document and bring it into normal form. Raw germs go
/// through the full reduction (possibly into the quadratic tower);
/// normal-form documents are taken as-is over the rationals.
LoadedGerm load_germ(const std::string& path, int order_override) {
    GermDocument doc = parse_germ_document(read_file(path));
    if (order_override > 0) {
        int max_deg = 0;
        auto scan = [&](const std::vector<GermDocument::Term>& ts) {
            for (const auto& t : ts) max_deg = std::max(max_deg, t.i + t.j);
        };
        for (auto& comp : doc.components) scan(comp);
        scan(doc.a);
        scan(doc.b);
        if (order_override < max_deg)
            throw ParseError("--order is below the highest term degree " +
                             std::to_string(max_deg));
        doc.order = order_override;
    }
    if (doc.mode == GermDocument::Mode::normal_form)
        return {document_to_coeffs(doc), doc.label_hint};
    auto out = reduce(document_to_germ(doc));
    if (auto* err = std::get_if<ReduceError>(&out)) {
        std::string label;
        switch (err->kind) {
            case ReduceError::Kind::corank0: label = "corank 0"; break;
            case ReduceError::Kind::corank2: label = "corank 2"; break;
            case ReduceError::Kind::unsupported_2jet: label = "unsupported 2-jet"; break;
            default: label = "insufficient jet data"; break;
        }
        std::cout << "out_of_family(" << label << "): " << err->message << "\n";
        std::exit(kExitOutOfFamily);
    }
    return {std::get<ReduceResult>(out).coeffs, doc.label_hint};
}

int cmd_classify(const std::string& path, int order_override) {
    LoadedGerm g = load_germ(path, order_override);
    return std::visit(
        [&](const auto& c) {
            AType t = classify(c);
            std::cout << t.label() << "\n";
            std::cout << "singular point: " << to_string(singular_point_class(c)) << "\n";
            if (t.in_family()) std::cout << "blow-up chart: Pi_" << t.blowup_n + 1 << "\n";
            if (g.label_hint && t.in_family() && *g.label_hint != t.label())
                std::cout << "note: label hint '" << *g.label_hint << "' does not match\n";
            return t.in_family() ? kExitOk : kExitOutOfFamily;
        },
        g.coeffs);
}

int cmd_analyze(const std::string& path, int order_override, const std::string& theta_arg,
                const std::vector<std::string>& direction_args, const std::string& out_path) {
    LoadedGerm g = load_germ(path, order_override);
    AnalyzeOptions opt;
    if (theta_arg == "auto" || theta_arg.empty()) {
        opt.theta_auto = true;
    } else {
        opt.theta_auto = false;
        opt.theta_degrees.push_back(std::stod(theta_arg));
    }
    if (direction_args.size() % 2 != 0)
        throw ParseError("--direction takes pairs: y z (rationals)");
    for (std::size_t i = 0; i + 1 < direction_args.size(); i += 2)
        opt.directions.push_back({parse_rat(direction_args[i]), parse_rat(direction_args[i + 1])});
    return std::visit(
        [&](const auto& c) {
            ordered_json rep = analyze_report(c, opt);
            AType t = classify(c);
            std::string text = rep.dump(2) + "\n";
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::binary);
                f << text;
                std::cout << "report written to " << out_path << "\n";
            } else {
                std::cout << text;
            }
            return t.in_family() ? kExitOk : kExitOutOfFamily;
        },
        g.coeffs);
}

int cmd_verify(const std::string& input, int order_override, const std::string& suite,
               int random_n, std::uint64_t seed, bool corrupt) {
    VerifyOptions opt;
    opt.random_n = random_n;
    opt.seed = seed;
    opt.corrupt_delta2 = corrupt;
    SuiteResult res;
    if (!input.empty()) {
        if (suite != "blowup-limits") {
            std::cerr << "note: suite '" << suite
                      << "' is corpus-based; the input germ is ignored\n";
            res = run_suite(suite, opt);
        } else {
            LoadedGerm g = load_germ(input, order_override);
            res.suite = suite;
            res.checks.push_back(std::visit(
                [&](const auto& c) { return check_limits_germ(input, c); }, g.coeffs));
        }
    } else {
        res = run_suite(suite, opt);
    }
    for (const auto& c : res.checks)
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
                  << (c.pass || c.detail.empty() ? "" : "\n      " + c.detail) << "\n";
    if (!res.pass()) {
        ordered_json j;
        j["suite"] = res.suite;
        j["failures"] = res.failures_json();
        std::cout << j.dump(2) << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int cmd_dual(const std::string& path, int order_override, const std::string& mesh_path,
             const std::string& csv_path, const std::string& grid, double rmax,
             const std::vector<double>& pshift, double margin) {
    LoadedGerm g = load_germ(path, order_override);
    return std::visit(
        [&](const auto& c) {
            AType t = classify(c);
            if (!t.in_family()) {
                std::cout << "out_of_family: " << t.reason << "\n";
                return kExitOutOfFamily;
            }
            if (is_zero(c.a(2, 0))) {
                std::cout << "dual hypotheses violated: inflection germ\n";
                return kExitHypothesis;
            }
            DualMeshSpec spec;
            spec.r_max = rmax;
            spec.theta_margin = margin;
            if (!grid.empty()) {
                auto x = grid.find('x');
                if (x == std::string::npos) throw ParseError("--grid expects RxT, e.g. 16x32");
                spec.r_steps = std::stoi(grid.substr(0, x));
                spec.theta_steps = std::stoi(grid.substr(x + 1));
            }
            if (!pshift.empty()) {
                if (pshift.size() != 3) throw ParseError("--pshift expects three numbers");
                spec.p_shift = {pshift[0], pshift[1], pshift[2]};
                spec.p_shift_set = true;
            }
            DualMesh mesh;
            try {
                mesh = dual_mesh(c, t, spec);
            } catch (const std::domain_error& e) {
                std::cout << "dual hypotheses violated: " << e.what() << "\n";
                return kExitHypothesis;
            }
            if (!mesh_path.empty()) {
                std::ofstream f(mesh_path, std::ios::binary);
                write_obj(f, mesh);
                std::cout << "mesh written to " << mesh_path << " (" << mesh.vertices.size()
                          << " vertices)\n";
            }
            if (!csv_path.empty()) {
                std::ofstream f(csv_path, std::ios::binary);
                write_csv(f, mesh);
                std::cout << "csv written to " << csv_path << "\n";
            }
            // sidecar report: dual label per parabolic direction
            ordered_json side;
            side["atype"] = atype_json(t);
            ordered_json labels = ordered_json::array();
            using FF = std::decay_t<decltype(c.a(0, 0))>;
            auto pd = parabolic_thetas(c, t.blowup_n);
            for (const auto& th : pd.thetas) {
                auto dl = dual_label(c, t, th);
                ordered_json j;
                j["theta_deg"] = th.radians() * 180.0 / M_PI;
                if (!th.is_pi_half()) j["tan_exact"] = to_str(FF(th.s / th.c));
                j["label"] = to_string(dl.label);
                j["basis"] = dl.basis;
                labels.push_back(j);
            }
            side["parabolic_directions"] = labels;
            std::string side_path = (mesh_path.empty() ? std::string("dual") : mesh_path) +
                                    ".report.json";
            std::ofstream f(side_path, std::ios::binary);
            f << side.dump(2) << "\n";
            std::cout << "report written to " << side_path << "\n";
            return kExitOk;
        },
        g.coeffs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corank-1 map-germ classifier and singular-surface geometry"};
    app.require_subcommand(1);

    std::string input, out_path, theta_arg = "auto", mesh_path, csv_path, grid, suite;
    std::vector<std::string> direction_args;
    std::vector<double> pshift;
    int order_override = 0, random_n = -1;
    std::uint64_t seed = 1;
    bool corrupt = false;
    double rmax = 0.25, margin = 0.2;

    auto* c_classify = app.add_subcommand("classify", "A-type of a germ document");
    c_classify->add_option("input", input, "germ document (JSON)")->required();
    c_classify->add_option("--order", order_override, "override the truncation order");

    auto* c_analyze = app.add_subcommand("analyze", "full report: blow-up geometry, heights, dual");
    c_analyze->add_option("input", input, "germ document (JSON)")->required();
    c_analyze->add_option("--order", order_override, "override the truncation order");
    c_analyze->add_option("--theta", theta_arg, "direction in degrees, or 'auto' (parabolic)");
    c_analyze->add_option("--direction", direction_args,
                          "height direction(s) in the normal plane: y z [y z ...]");
    c_analyze->add_option("-o,--out", out_path, "write the JSON report here");

    auto* c_verify = app.add_subcommand("verify", "run a named verification suite");
    c_verify->add_option("input", input, "optional germ document (blowup-limits runs on it)");
    c_verify->add_option("--suite", suite, "suite name")->required();
    c_verify->add_option("--random", random_n, "corpus size override");
    c_verify->add_option("--seed", seed, "random seed");
    c_verify->add_flag("--debug-corrupt-delta2", corrupt,
                       "debug hook: mis-sign one Delta_2 term (route-agreement must fail)");

    auto* c_dual = app.add_subcommand("dual", "sample the dual surface to OBJ/CSV");
    c_dual->add_option("input", input, "germ document (JSON)")->required();
    c_dual->add_option("--order", order_override, "override the truncation order");
    c_dual->add_option("--mesh", mesh_path, "output OBJ path");
    c_dual->add_option("--csv", csv_path, "output CSV path");
    c_dual->add_option("--grid", grid, "grid RxT (default 16x32)");
    c_dual->add_option("--rmax", rmax, "maximal blow-up radius");
    c_dual->add_option("--margin", margin, "angular margin away from theta = +-pi/2 (radians)");
    c_dual->add_option("--pshift", pshift, "translation p (three numbers)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(input, order_override);
        if (c_analyze->parsed())
            return cmd_analyze(input, order_override, theta_arg, direction_args, out_path);
        if (c_verify->parsed())
            return cmd_verify(input, order_override, suite, random_n, seed, corrupt);
        if (c_dual->parsed())
            return cmd_dual(input, order_override, mesh_path, csv_path, grid, rmax, pshift,
                            margin);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitParse;
}
