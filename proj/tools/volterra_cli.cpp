// Command-line front end: every subcommand assembles one JSON (or CSV)
// document on stdout. Exit codes: 0 success, 1 failed numerical contract,
// 2 usage error. In JSON mode all diagnostics ride inside the document's
// `errors`/`warnings` arrays, never as bare text on stdout.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "volterra/completeness.hpp"
#include "volterra/discretize.hpp"
#include "volterra/eigensystem.hpp"
#include "volterra/errors.hpp"
#include "volterra/json_io.hpp"
#include "volterra/qseries.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/report.hpp"
#include "volterra/zeros.hpp"

namespace {

using volterra::Json;

struct CommonOpts {
    double alpha = 0.5;
    int n = 5;
    int grid_size = 1024;
    double tol = 1e-12;
    std::string precision = "double";
    std::string format = "json";
    std::string output_path;
};

volterra::Precision parse_precision(const std::string& p) {
    if (p == "extended") return volterra::Precision::Extended;
    return volterra::Precision::Double;
}

// VOLTERRA_PRECISION overrides the default when --precision is not given
void apply_env_precision(CLI::Option* opt, std::string& precision) {
    if (opt->count() > 0) return;
    if (const char* env = std::getenv("VOLTERRA_PRECISION")) {
        const std::string v(env);
        if (v == "double" || v == "extended") precision = v;
    }
}

int emit(const CommonOpts& opts, Json doc, const std::string& csv = {}) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opts.output_path.empty()) {
        file.open(opts.output_path);
        if (!file) {
            std::cerr << "cannot open output path: " << opts.output_path << "\n";
            return 2;
        }
        out = &file;
    }
    if (opts.format == "csv" && !csv.empty())
        *out << csv;
    else
        *out << doc.dump(2) << "\n";
    return doc.contains("exit_code") ? doc["exit_code"].get<int>() : 0;
}

Json make_doc(const std::string& command, Json params) {
    Json doc;
    doc["command"] = command;
    doc["params"] = std::move(params);
    doc["results"] = Json::object();
    doc["tolerances"] = Json::object();
    doc["warnings"] = Json::array();
    doc["errors"] = Json::array();
    return doc;
}

volterra::SubstitutionMap parse_phi(const std::string& name, double alpha) {
    using volterra::AlphaParam;
    using volterra::SubstitutionMap;
    if (name == "identity") return SubstitutionMap::identity();
    if (name == "square") return SubstitutionMap::square();
    if (name == "halfx") return SubstitutionMap::scaled(0.5);
    if (name == "flipped") return SubstitutionMap::flipped_power(AlphaParam(alpha));
    return SubstitutionMap::power(AlphaParam(alpha));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for the Volterra composition operator V_phi"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string phi_name = "power";
    double qval = 0.5, zval = 1.0;
    int kval = 5, mesh = 10000, muntz_k = 40, demo_m = 2;
    std::string family = "f", which = "f", study_sizes, export_path;

    const auto add_common = [&](CLI::App* cmd, bool with_alpha = true) {
        if (with_alpha)
            cmd->add_option("--alpha", opts.alpha, "exponent in (0,1)")
                ->check(CLI::Range(1e-12, 1.0 - 1e-12));
        cmd->add_option("--tol", opts.tol, "tolerance")->check(CLI::PositiveNumber);
        auto* prec = cmd->add_option("--precision", opts.precision, "double|extended")
                         ->check(CLI::IsMember({"double", "extended"}));
        cmd->add_option("--format", opts.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", opts.output_path, "write the document to a file");
        cmd->parse_complete_callback([&, prec] { apply_env_precision(prec, opts.precision); });
    };

    auto* c_spectrum = app.add_subcommand("spectrum", "closed-form eigenvalue ladder");
    add_common(c_spectrum);
    c_spectrum->add_option("--n", opts.n, "number of eigenvalues")->check(CLI::PositiveNumber);

    auto* c_eigenfun = app.add_subcommand("eigenfun", "eigenfunction coefficients/terms");
    add_common(c_eigenfun);
    c_eigenfun->add_option("--n", opts.n, "eigenindex")->check(CLI::PositiveNumber);
    c_eigenfun->add_option("--which", which, "f|g|both")->check(CLI::IsMember({"f", "g", "both"}));

    auto* c_residuals = app.add_subcommand("residuals", "quadrature eigen-residuals");
    add_common(c_residuals);
    c_residuals->add_option("--n", opts.n, "largest eigenindex")->check(CLI::PositiveNumber);
    c_residuals->add_option("--which", which, "f|g|both")->check(CLI::IsMember({"f", "g", "both"}));
    c_residuals->add_option("--mesh", mesh, "residual mesh cells");

    auto* c_discretize = app.add_subcommand("discretize", "collocation matrix and spectrum");
    add_common(c_discretize);
    c_discretize->add_option("--phi", phi_name, "power|identity|square|halfx|flipped")
        ->check(CLI::IsMember({"power", "identity", "square", "halfx", "flipped"}));
    c_discretize->add_option("--grid-size", opts.grid_size, "collocation nodes (<= 4096)")
        ->check(CLI::Range(2, 4096));
    c_discretize->add_option("--k", kval, "eigenvalues to report")->check(CLI::PositiveNumber);
    c_discretize->add_option("--study", study_sizes, "comma-separated sizes for a convergence study");
    c_discretize->add_option("--export", export_path, "binary matrix export path");

    auto* c_zeros = app.add_subcommand("zeros", "root sets and interlacing");
    add_common(c_zeros);
    c_zeros->add_option("--n", opts.n, "index")->check(CLI::PositiveNumber);
    c_zeros->add_option("--which", which, "f|pn|g")->check(CLI::IsMember({"f", "pn", "g"}));
    c_zeros->add_option("--q", qval, "base for pn roots")->check(CLI::Range(1e-12, 1.0 - 1e-12));
    c_zeros->add_option("--mesh", mesh, "scan mesh for g zeros");

    auto* c_qcheck = app.add_subcommand("qcheck", "F_q product/series cross-check");
    add_common(c_qcheck, false);
    c_qcheck->add_option("--q", qval, "|q| < 1")->check(CLI::Range(-1.0 + 1e-12, 1.0 - 1e-12));
    c_qcheck->add_option("--z", zval, "evaluation point");

    auto* c_completeness = app.add_subcommand("completeness", "span distances and Muntz sums");
    add_common(c_completeness);
    c_completeness->add_option("--family", family, "f|g")->check(CLI::IsMember({"f", "g"}));
    c_completeness->add_option("--n", opts.n, "span size")->check(CLI::PositiveNumber);
    c_completeness->add_option("--muntz-k", muntz_k, "Muntz partial-sum count");
    c_completeness->add_option("--demo-m", demo_m, "adjoint directions to compress away");
    c_completeness->add_option("--grid-size", opts.grid_size, "demo grid size")
        ->check(CLI::Range(8, 4096));

    auto* c_report = app.add_subcommand("report", "full acceptance suite");
    add_common(c_report, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage to stderr
        return code == 0 ? 0 : 2;
    }

    const volterra::Precision prec = parse_precision(opts.precision);
    const volterra::QuadratureSpec quad = [&] {
        volterra::QuadratureSpec s;
        s.abs_tol = std::min(opts.tol, 1e-10);
        return s;
    }();

    try {
        if (c_spectrum->parsed()) {
            Json doc = make_doc("spectrum", {{"alpha", opts.alpha}, {"n", opts.n}});
            std::vector<double> ladder;
            for (int n = 1; n <= opts.n; ++n)
                ladder.push_back(volterra::eigenvalue(volterra::AlphaParam(opts.alpha), n));
            doc["results"]["eigenvalues"] = ladder;
            std::string csv = "n,eigenvalue\n";
            for (int n = 1; n <= opts.n; ++n)
                csv += std::to_string(n) + "," + Json(ladder[static_cast<std::size_t>(n - 1)]).dump() + "\n";
            return emit(opts, doc, csv);
        }

        if (c_eigenfun->parsed()) {
            Json doc = make_doc("eigenfun", {{"alpha", opts.alpha},
                                             {"n", opts.n},
                                             {"which", which},
                                             {"precision", opts.precision}});
            const volterra::AlphaParam alpha(opts.alpha);
            if (which == "f" || which == "both")
                doc["results"]["f"] = to_json(volterra::f_coeffs(alpha, opts.n));
            if (which == "g" || which == "both")
                doc["results"]["g"] = to_json(volterra::g_terms(alpha, opts.n, opts.tol, prec));
            return emit(opts, doc);
        }

        if (c_residuals->parsed()) {
            Json doc = make_doc("residuals", {{"alpha", opts.alpha},
                                              {"n", opts.n},
                                              {"which", which},
                                              {"tol", opts.tol},
                                              {"mesh", mesh}});
            doc["tolerances"]["residual"] = opts.tol;
            const volterra::AlphaParam alpha(opts.alpha);
            bool ok = true;
            std::string csv = "family,n,residual\n";
            for (int n = 1; n <= opts.n; ++n) {
                if (which == "f" || which == "both") {
                    const double res = residual_f(alpha, n, quad, mesh);
                    doc["results"]["f"].push_back(res);
                    ok = ok && res < opts.tol;
                    csv += "f," + std::to_string(n) + "," + Json(res).dump() + "\n";
                }
                if (which == "g" || which == "both") {
                    const double res = residual_g(alpha, n, quad, mesh);
                    doc["results"]["g"].push_back(res);
                    ok = ok && res < opts.tol;
                    csv += "g," + std::to_string(n) + "," + Json(res).dump() + "\n";
                }
            }
            doc["exit_code"] = ok ? 0 : 1;
            if (!ok) doc["errors"].push_back("residual above tolerance");
            return emit(opts, doc, csv);
        }

        if (c_discretize->parsed()) {
            Json doc = make_doc("discretize", {{"alpha", opts.alpha},
                                               {"phi", phi_name},
                                               {"grid_size", opts.grid_size},
                                               {"k", kval}});
            const volterra::AlphaParam alpha(opts.alpha);
            const volterra::SubstitutionMap phi = parse_phi(phi_name, opts.alpha);
            const double gamma = volterra::default_grading(alpha);
            const volterra::VMatrix vm =
                build_matrix(phi, volterra::Grid::graded(opts.grid_size, gamma));
            const auto ev = spectrum(vm, std::min(kval, opts.grid_size));
            Json moduli = Json::array();
            for (const auto& lambda : ev) moduli.push_back(std::abs(lambda));
            doc["results"]["top_moduli"] = std::move(moduli);
            doc["results"]["spectral_radius"] = std::abs(ev[0]);
            doc["results"]["grading_exponent"] = gamma;
            std::string csv;
            if (!study_sizes.empty()) {
                std::vector<int> sizes;
                std::stringstream ss(study_sizes);
                for (std::string item; std::getline(ss, item, ',');)
                    sizes.push_back(std::stoi(item));
                const volterra::ConvergenceTable table =
                    convergence_study(alpha, sizes, kval);
                doc["results"]["study"] = to_json(table);
                csv = convergence_csv(table);
            }
            if (!export_path.empty()) {
                export_matrix(vm, export_path);
                doc["results"]["exported"] = export_path;
            }
            return emit(opts, doc, csv);
        }

        if (c_zeros->parsed()) {
            Json doc = make_doc("zeros", {{"alpha", opts.alpha},
                                          {"q", qval},
                                          {"n", opts.n},
                                          {"which", which},
                                          {"precision", opts.precision}});
            if (which == "pn") {
                doc["results"]["roots"] = to_json(volterra::pn_roots(volterra::QParam(qval), opts.n));
            } else if (which == "g") {
                const volterra::GZeroScan scan =
                    g_zero_scan(volterra::AlphaParam(opts.alpha), opts.n, mesh, prec);
                doc["results"]["scan"] = to_json(scan);
            } else {
                const volterra::AlphaParam alpha(opts.alpha);
                const volterra::RootSet cur = f_zeros(alpha, opts.n);
                doc["results"]["roots"] = to_json(cur);
                if (opts.n >= 2) {
                    const volterra::RootSet prev = f_zeros(alpha, opts.n - 1);
                    doc["results"]["interlaces_previous"] = check_interlace(prev, cur);
                }
            }
            return emit(opts, doc);
        }

        if (c_qcheck->parsed()) {
            Json doc = make_doc("qcheck", {{"q", qval}, {"z", zval}, {"tol", opts.tol}});
            const volterra::QParam q(qval);
            const double prod = fq_product(q, zval, opts.tol);
            const double ser = fq_series(q, zval, opts.tol);
            doc["results"]["product"] = prod;
            doc["results"]["series"] = ser;
            doc["results"]["abs_gap"] = std::abs(prod - ser);
            doc["tolerances"]["agreement"] = 1e-12 * (1.0 + std::abs(prod));
            const bool ok = std::abs(prod - ser) <= 1e-12 * (1.0 + std::abs(prod));
            doc["exit_code"] = ok ? 0 : 1;
            if (!ok) doc["errors"].push_back("product/series disagreement");
            return emit(opts, doc);
        }

        if (c_completeness->parsed()) {
            Json doc = make_doc("completeness", {{"alpha", opts.alpha},
                                                 {"family", family},
                                                 {"n", opts.n},
                                                 {"muntz_k", muntz_k},
                                                 {"demo_m", demo_m},
                                                 {"grid_size", opts.grid_size}});
            const volterra::AlphaParam alpha(opts.alpha);
            const volterra::MuntzReport muntz = muntz_sum(alpha, muntz_k);
            doc["results"]["muntz"] = to_json(muntz);
            const volterra::Family fam =
                family == "g" ? volterra::Family::G : volterra::Family::F;
            const volterra::GramReport rep = distance_to_span(
                [](double) { return 1.0; }, fam, alpha, opts.n, quad);
            doc["results"]["distance_to_one"] = to_json(rep);
            doc["results"]["compressed_radius"] =
                invariant_subspace_demo(alpha, demo_m, opts.grid_size);
            return emit(opts, doc, distance_profile_csv(rep));
        }

        if (c_report->parsed()) {
            const volterra::AcceptanceReport rep =
                volterra::run_acceptance(volterra::Exec::Parallel, &std::cerr);
            Json doc = make_doc("report", Json::object());
            doc["results"] = to_json(rep);
            doc["exit_code"] = rep.all_passed ? 0 : 1;
            if (!rep.all_passed) doc["errors"].push_back("acceptance criteria failed");
            return emit(opts, doc);
        }
    } catch (const volterra::PrecisionError& e) {
        Json doc = make_doc(app.get_subcommands().front()->get_name(), Json::object());
        doc["errors"].push_back(std::string("precision: ") + e.what());
        std::cout << doc.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json doc = make_doc(app.get_subcommands().front()->get_name(), Json::object());
        doc["errors"].push_back(e.what());
        std::cout << doc.dump(2) << "\n";
        return 1;
    }
    return 2;
}
