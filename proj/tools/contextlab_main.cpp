#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contextlab/bounds.hpp"
#include "contextlab/catalog.hpp"
#include "contextlab/json_io.hpp"
#include "contextlab/pms.hpp"
#include "contextlab/spectral.hpp"

namespace {

using namespace contextlab;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitRefusal = 3;

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) {
        write_text_file(out_path, text);
    }
    std::cout << text;
}

void emit_error(const std::string& message, double residual) {
    std::cout << json{{"error", message}, {"residual", residual}}.dump(2) << "\n";
}

std::string csv_path_for(const std::string& out_path) {
    std::filesystem::path p(out_path);
    p.replace_extension(".csv");
    return p.string();
}

std::vector<cd> parse_lambda_primes(const std::string& text) {
    std::vector<cd> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
            throw ParseError("lambda-primes: expected 're,im' pairs separated by ';'");
        }
        try {
            out.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("lambda-primes: bad number in '" + item + "'");
        }
    }
    if (out.empty()) {
        throw ParseError("lambda-primes: empty list");
    }
    return out;
}

struct CommonOptions {
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::size_t n_pure = 50;
    std::size_t n_mixed = 20;
    std::size_t n_starts = 64;
    std::string out;
    std::string format = "json";
    int sign = 0;  // 0: auto
};

Tolerances tolerances_for(double tol) {
    Tolerances t;
    t.commutator = tol;
    t.unitarity = std::max(t.unitarity, tol);
    return t;
}

int run_verify(const std::string& u1_path, const std::string& u2_path,
               const std::string& u3_path, const CommonOptions& opt) {
    const Matrix m1 = load_matrix(u1_path);
    const Matrix m2 = load_matrix(u2_path);
    const Matrix m3 = load_matrix(u3_path);
    const Tolerances tols = tolerances_for(opt.tol);
    std::optional<int> forced_sign;
    if (opt.sign != 0) {
        forced_sign = opt.sign;
    }
    const TripleCheckResult check = check_triple(m1, m2, m3, forced_sign, tols);

    json report{{"sign", check.sign},
                {"dimension", m1.rows()},
                {"tolerance", opt.tol},
                {"residuals",
                 {{"anticommutator_12", check.residuals.anticommutator_12},
                  {"anticommutator_13", check.residuals.anticommutator_13},
                  {"anticommutator_23", check.residuals.anticommutator_23},
                  {"product_identity", check.residuals.product_identity},
                  {"max_unitarity", check.residuals.max_unitarity}}}};

    if (!check.pass) {
        report["pass"] = false;
        report["error"] = check.dim_even ? "triple residuals exceed tolerance"
                                         : "triple dimension is odd";
        report["residual"] = check.worst;
        if (check.dim_even && check.residuals.max_unitarity <= 1e-6) {
            report["hint"] =
                "the operators are unitary but their algebra misses the tolerance; if "
                "they are a truncated approximation of an infinite-dimensional family, "
                "judge them by their truncation-quality figures on low-energy states "
                "instead of strict verification";
        }
        emit(report, opt.out);
        return kExitCheckFailed;
    }

    const UnitaryOperator u1 = UnitaryOperator::certify(m1, tols.unitarity);
    const UnitaryOperator u2 = UnitaryOperator::certify(m2, tols.unitarity);
    const UnitaryOperator u3 = UnitaryOperator::certify(m3, tols.unitarity);
    const PmsTriple triple = make_triple(u1, u2, u3, check.sign, tols);
    const AlgebraReport algebra = verify_algebra(triple, opt.tol);
    const PmsSquare square = build_square(triple);
    const CompatibilityReport compat = verify_compatibility(square, opt.tol);
    const ProductReport products = row_col_products(square);

    const bool pass = algebra.pass && compat.pass && products.max_residual <= opt.tol;
    report["pass"] = pass;
    report["algebra"] = algebra_report_to_json(algebra);
    report["compatibility"] = compatibility_report_to_json(compat);
    report["products"] = product_report_to_json(products);
    emit(report, opt.out);
    return pass ? kExitPass : kExitCheckFailed;
}

int run_complete(const std::string& u1_path, const std::string& lambda_primes,
                 const CommonOptions& opt) {
    const Matrix m1 = load_matrix(u1_path);
    UnitaryOperator u1 = [&] {
        try {
            return UnitaryOperator::certify(m1, tolerances_for(opt.tol).unitarity);
        } catch (const std::invalid_argument& e) {
            throw ParseError("input is not unitary: " + std::string(e.what()));
        }
    }();

    const Tolerances tols = tolerances_for(opt.tol);
    const SpectralDecomposition decomp = eig_unitary(u1, tols);
    const EigenClusters clusters = cluster_spectrum(decomp, tols.clustering);
    const PairingVerdict verdict = check_pairing(clusters, tols.pairing);

    const std::string out_dir = opt.out.empty() ? "." : opt.out;
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/pairing.json",
                    pairing_verdict_to_json(verdict, clusters).dump(2) + "\n");

    if (!verdict.paired) {
        std::cout << json{{"error", "spectrum admits no anti-commuting partner"},
                          {"defect", verdict.defect},
                          {"pairing", pairing_verdict_to_json(verdict, clusters)}}
                         .dump(2)
                  << "\n";
        return kExitRefusal;
    }

    std::optional<std::vector<cd>> primes;
    if (!lambda_primes.empty() && lambda_primes != "default") {
        primes = parse_lambda_primes(lambda_primes);
    }
    const UnitaryOperator u2 = construct_partner(u1, primes, tols);
    const int sign = opt.sign == 0 ? +1 : opt.sign;
    const PmsTriple triple = complete_triple(u1, u2, sign, tols);

    save_matrix(out_dir + "/u2.json", u2.matrix());
    save_matrix(out_dir + "/u3.json", triple.u3.matrix());
    write_text_file(out_dir + "/triple.json", triple_to_json(triple).dump(2) + "\n");

    json summary{{"pairing", pairing_verdict_to_json(verdict, clusters)},
                 {"sign", triple.sign},
                 {"outputs",
                  {out_dir + "/u2.json", out_dir + "/u3.json", out_dir + "/triple.json",
                   out_dir + "/pairing.json"}},
                 {"residuals",
                  {{"anticommutator_12", triple.residuals.anticommutator_12},
                   {"product_identity", triple.residuals.product_identity}}}};
    std::cout << summary.dump(2) << "\n";
    return kExitPass;
}

json fock_quality_json(const ApproxTriple& approx) {
    return json{{"max_unitarity_residual", approx.quality.max_unitarity_residual},
                {"anticommutator_12", approx.quality.anticommutator_12},
                {"anticommutator_13", approx.quality.anticommutator_13},
                {"anticommutator_23", approx.quality.anticommutator_23},
                {"product_identity", approx.quality.product_identity},
                {"n_test_states", approx.quality.n_test_states}};
}

int run_violate(const std::string& catalog_name, const std::string& triple_path,
                const CommonOptions& opt) {
    if (catalog_name.empty() == triple_path.empty()) {
        throw ParseError("violate: give exactly one of --catalog or --triple");
    }

    std::optional<PmsTriple> triple;
    std::optional<ApproxTriple> approx;
    if (!catalog_name.empty()) {
        CatalogEntry entry = make_catalog_entry(catalog_name);
        triple = std::move(entry.triple);
        approx = std::move(entry.approx);
    } else {
        const RawTriple raw = triple_from_json(parse_json(read_text_file(triple_path), triple_path));
        const Tolerances tols = tolerances_for(opt.tol);
        const TripleCheckResult check = check_triple(raw.u1, raw.u2, raw.u3, raw.sign, tols);
        if (!check.pass) {
            emit_error("triple file failed validation", check.worst);
            return kExitCheckFailed;
        }
        triple = make_triple(UnitaryOperator::certify(raw.u1, tols.unitarity),
                             UnitaryOperator::certify(raw.u2, tols.unitarity),
                             UnitaryOperator::certify(raw.u3, tols.unitarity), check.sign, tols);
    }

    if (triple) {
        const PmsSquare square = build_square(*triple);
        const ScanSummary summary = scan_states(square, opt.n_pure, opt.n_mixed, opt.seed);
        const json report = scan_summary_to_json(summary);
        const std::string csv = scan_summary_to_csv(summary);
        if (!opt.out.empty()) {
            write_text_file(opt.out, report.dump(2) + "\n");
            write_text_file(csv_path_for(opt.out), csv);
        }
        if (opt.format == "csv") {
            std::cout << csv;
        } else {
            std::cout << report.dump(2) << "\n";
        }
        return kExitPass;
    }

    // Truncated displacement family: evaluate on the low-energy product
    // states the truncation is accurate on.
    const ApproxTriple& a = *approx;
    ScanSummary summary;
    summary.seed = opt.seed;
    const auto tests = fock_test_states(a.cutoff);
    for (std::size_t i = 0; i < tests.size(); ++i) {
        const auto& [kind, psi] = tests[i];
        const ViolationReport direct =
            expectation_re_x_product(a.u1, a.u2, a.u3, psi, psi, "direct");
        const ViolationReport herm =
            expectation_re_x_product(a.u1, a.u2, a.u3, psi, psi, "hermitian");
        summary.rows.push_back(ScanRow{i, kind, 0, direct.total, herm.total});
    }
    summary.min_direct = summary.max_direct = summary.rows[0].total_direct;
    summary.min_hermitian = summary.max_hermitian = summary.rows[0].total_hermitian;
    double sd = 0.0;
    double sh = 0.0;
    for (const ScanRow& row : summary.rows) {
        summary.min_direct = std::min(summary.min_direct, row.total_direct);
        summary.max_direct = std::max(summary.max_direct, row.total_direct);
        summary.min_hermitian = std::min(summary.min_hermitian, row.total_hermitian);
        summary.max_hermitian = std::max(summary.max_hermitian, row.total_hermitian);
        sd += row.total_direct;
        sh += row.total_hermitian;
    }
    summary.mean_direct = sd / double(summary.rows.size());
    summary.mean_hermitian = sh / double(summary.rows.size());

    json report = scan_summary_to_json(summary);
    report["state_family"] = "low-energy product states";
    report["truncation_quality"] = fock_quality_json(a);
    if (!a.warning.empty()) {
        report["warning"] = a.warning;
    }
    const std::string csv = scan_summary_to_csv(summary);
    if (!opt.out.empty()) {
        write_text_file(opt.out, report.dump(2) + "\n");
        write_text_file(csv_path_for(opt.out), csv);
    }
    if (opt.format == "csv") {
        std::cout << csv;
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return kExitPass;
}

int run_bound(const std::string& kind, const CommonOptions& opt) {
    BoundCertificate cert;
    if (kind == "dichotomic") {
        cert = dichotomic_bound();
    } else if (kind == "phase") {
        const double grad_tol = opt.tol == 1e-9 ? 1e-7 : opt.tol;
        cert = phase_bound(opt.n_starts, grad_tol, opt.seed);
    } else {
        throw ParseError("bound: kind must be 'dichotomic' or 'phase'");
    }
    emit(bound_certificate_to_json(cert), opt.out);

    std::ostringstream os;
    os.precision(10);
    os << "bound = " << cert.bound_value << ", gap to quantum 6 = "
       << (kQuantumMax - cert.bound_value) << "\nargmax phases (turns of pi):";
    for (const cd& z : cert.argmax) {
        os << ' ' << std::arg(z) / std::numbers::pi;
    }
    std::cout << os.str() << "\n";
    return kExitPass;
}

int run_catalog(const std::string& name, const std::string& matrices_dir,
                const CommonOptions& opt) {
    const CatalogEntry entry = make_catalog_entry(name);
    json out;
    if (entry.triple) {
        out = triple_to_json(*entry.triple);
        out["name"] = name;
        if (name.rfind("spin:", 0) == 0) {
            SpinParams p;
            p.two_s = unsigned(std::stoul(name.substr(5)));
            const cd phase = spin_r3_phase(p);
            out["exp_i_pi_sz_phase"] = json::array({phase.real(), phase.imag()});
        }
        if (!matrices_dir.empty()) {
            std::filesystem::create_directories(matrices_dir);
            save_matrix(matrices_dir + "/u1.json", entry.triple->u1.matrix());
            save_matrix(matrices_dir + "/u2.json", entry.triple->u2.matrix());
            save_matrix(matrices_dir + "/u3.json", entry.triple->u3.matrix());
        }
    } else {
        out = approx_triple_to_json(*entry.approx);
        out["name"] = name;
        if (!matrices_dir.empty()) {
            std::filesystem::create_directories(matrices_dir);
            save_matrix(matrices_dir + "/u1.json", entry.approx->u1);
            save_matrix(matrices_dir + "/u2.json", entry.approx->u2);
            save_matrix(matrices_dir + "/u3.json", entry.approx->u3);
        }
    }
    emit(out, opt.out);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextlab: anti-commuting unitary triples, generalized Peres-Mermin "
                 "squares, and their contextuality witnesses"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string u1_path;
    std::string u2_path;
    std::string u3_path;
    std::string lambda_primes;
    std::string catalog_name;
    std::string triple_path;
    std::string bound_kind;
    std::string matrices_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", opt.tol, "verification tolerance");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--out", opt.out, "output path");
        cmd->add_option("--format", opt.format, "stdout format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "check a triple of operator files");
    verify->add_option("--u1", u1_path)->required();
    verify->add_option("--u2", u2_path)->required();
    verify->add_option("--u3", u3_path)->required();
    verify->add_option("--sign", opt.sign, "product branch +1|-1 (default: auto)")
        ->check(CLI::IsMember({-1, 1}));
    add_common(verify);

    CLI::App* complete = app.add_subcommand(
        "complete", "build the anti-commuting partner and third operator for a unitary");
    complete->add_option("--u1", u1_path)->required();
    complete->add_option("--lambda-primes", lambda_primes,
                         "unit-modulus weights 're,im;re,im;...' per eigenvalue pair");
    complete->add_option("--sign", opt.sign, "branch of the completed operator (+1 default)")
        ->check(CLI::IsMember({-1, 1}));
    add_common(complete);

    CLI::App* violate = app.add_subcommand("violate", "scan states and report <Re X>");
    violate->add_option("--catalog", catalog_name, "catalog name, e.g. pauli, weyl:4");
    violate->add_option("--triple", triple_path, "triple JSON file");
    violate->add_option("--pure", opt.n_pure, "number of Haar-random pure states");
    violate->add_option("--mixed", opt.n_mixed, "number of random mixed states");
    add_common(violate);

    CLI::App* bound = app.add_subcommand("bound", "classical bound certificates");
    bound->add_option("kind", bound_kind, "dichotomic | phase")->required();
    bound->add_option("--starts", opt.n_starts, "ascent starts (phase bound)");
    add_common(bound);

    CLI::App* catalog = app.add_subcommand("catalog", "emit a catalog triple as JSON");
    catalog->add_option("name", catalog_name, "pauli | spin:S2 | parity:M | weyl:d | fock:...")
        ->required();
    catalog->add_option("--matrices-dir", matrices_dir, "also write u1/u2/u3 matrix files");
    add_common(catalog);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cout << json{{"error", e.what()}, {"residual", 0.0}}.dump(2) << "\n";
        return kExitParse;
    }

    try {
        if (verify->parsed()) {
            return run_verify(u1_path, u2_path, u3_path, opt);
        }
        if (complete->parsed()) {
            return run_complete(u1_path, lambda_primes, opt);
        }
        if (violate->parsed()) {
            return run_violate(catalog_name, triple_path, opt);
        }
        if (bound->parsed()) {
            return run_bound(bound_kind, opt);
        }
        if (catalog->parsed()) {
            return run_catalog(catalog_name, matrices_dir, opt);
        }
    } catch (const ParseError& e) {
        emit_error(e.what(), 0.0);
        return kExitParse;
    } catch (const RefusalError& e) {
        std::cout << json{{"error", e.what()}, {"defect", e.defect}}.dump(2) << "\n";
        return kExitRefusal;
    } catch (const ConvergenceError& e) {
        emit_error(e.what(), e.residual);
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        emit_error(e.what(), 0.0);
        return kExitParse;
    } catch (const std::exception& e) {
        emit_error(e.what(), 0.0);
        return kExitParse;
    }
    return kExitParse;
}
