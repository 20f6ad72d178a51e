#include "contextlab/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace contextlab {

namespace {

json complex_to_json(cd z) {
    return json::array({z.real(), z.imag()});
}

cd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected [re, im] pair");
    }
    return cd(j[0].get<double>(), j[1].get<double>());
}

std::string format_17g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

json matrix_to_json(const Matrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("matrix_to_json: only square matrices are serialized");
    }
    json entries = json::array();
    for (const cd& z : m.data()) {
        entries.push_back(complex_to_json(z));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw ParseError("matrix JSON needs {\"dim\": n, \"entries\": [...]}");
    }
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer()) {
        throw ParseError("matrix JSON: dim must be a positive integer");
    }
    const long long dim_ll = j["dim"].get<long long>();
    if (dim_ll <= 0) {
        throw ParseError("matrix JSON: dim must be a positive integer");
    }
    const std::size_t dim = std::size_t(dim_ll);
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != dim * dim) {
        throw ParseError("matrix JSON: entries must hold dim^2 [re, im] pairs");
    }
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim * dim; ++i) {
        m.data()[i] = complex_from_json(entries[i]);
    }
    if (!m.all_finite()) {
        throw ParseError("matrix JSON: non-finite entry");
    }
    return m;
}

json triple_to_json(const PmsTriple& t) {
    return json{{"sign", t.sign},
                {"u1", matrix_to_json(t.u1.matrix())},
                {"u2", matrix_to_json(t.u2.matrix())},
                {"u3", matrix_to_json(t.u3.matrix())},
                {"residuals",
                 {{"anticommutator_12", t.residuals.anticommutator_12},
                  {"anticommutator_13", t.residuals.anticommutator_13},
                  {"anticommutator_23", t.residuals.anticommutator_23},
                  {"product_identity", t.residuals.product_identity},
                  {"max_unitarity", t.residuals.max_unitarity}}}};
}

RawTriple triple_from_json(const json& j) {
    if (!j.is_object() || !j.contains("u1") || !j.contains("u2") || !j.contains("u3")) {
        throw ParseError("triple JSON needs u1, u2, u3 matrices");
    }
    RawTriple t;
    t.u1 = matrix_from_json(j["u1"]);
    t.u2 = matrix_from_json(j["u2"]);
    t.u3 = matrix_from_json(j["u3"]);
    t.sign = j.value("sign", 1);
    if (t.sign != 1 && t.sign != -1) {
        throw ParseError("triple JSON: sign must be +1 or -1");
    }
    return t;
}

json approx_triple_to_json(const ApproxTriple& t) {
    json out{{"sign", t.sign},
             {"u1", matrix_to_json(t.u1)},
             {"u2", matrix_to_json(t.u2)},
             {"u3", matrix_to_json(t.u3)},
             {"alphas", json::array({complex_to_json(t.alphas[0]), complex_to_json(t.alphas[1]),
                                     complex_to_json(t.alphas[2])})},
             {"cutoff", t.cutoff},
             {"truncation_quality",
              {{"max_unitarity_residual", t.quality.max_unitarity_residual},
               {"anticommutator_12", t.quality.anticommutator_12},
               {"anticommutator_13", t.quality.anticommutator_13},
               {"anticommutator_23", t.quality.anticommutator_23},
               {"product_identity", t.quality.product_identity},
               {"n_test_states", t.quality.n_test_states}}}};
    if (!t.warning.empty()) {
        out["warning"] = t.warning;
    }
    return out;
}

json canonical_form_to_json(const CanonicalForm& f) {
    json lambdas = json::array();
    json primes = json::array();
    json mults = json::array();
    for (std::size_t i = 0; i < f.block_count(); ++i) {
        lambdas.push_back(complex_to_json(f.lambdas[i]));
        primes.push_back(complex_to_json(f.lambda_primes[i]));
        mults.push_back(f.block_multiplicities[i]);
    }
    return json{{"basis", matrix_to_json(f.basis.matrix())},
                {"lambdas", std::move(lambdas)},
                {"lambda_primes", std::move(primes)},
                {"block_multiplicities", std::move(mults)},
                {"N", f.block_count()},
                {"sign", f.sign}};
}

json pairing_verdict_to_json(const PairingVerdict& v, const EigenClusters& clusters) {
    json cl = json::array();
    for (const EigenCluster& c : clusters.clusters) {
        cl.push_back(json{{"lambda", complex_to_json(c.representative)},
                          {"multiplicity", c.multiplicity}});
    }
    json pairs = json::array();
    for (const auto& [p, m] : v.pairs) {
        pairs.push_back(json::array({p, m}));
    }
    json out{{"paired", v.paired}, {"clusters", std::move(cl)}, {"pairs", std::move(pairs)}};
    if (!v.paired) {
        out["defect"] = v.defect;
    }
    return out;
}

json algebra_report_to_json(const AlgebraReport& r) {
    return json{{"commutator_branch", r.commutator_branch},
                {"max_commutator", r.max_commutator},
                {"max_anticommutator", r.max_anticommutator},
                {"product_identity", r.product_identity},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

json compatibility_report_to_json(const CompatibilityReport& r) {
    return json{{"row_residuals", r.row_residuals},
                {"col_residuals", r.col_residuals},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

json product_report_to_json(const ProductReport& r) {
    return json{{"row_residuals", r.row_residuals},
                {"col_residuals", r.col_residuals},
                {"max_residual", r.max_residual}};
}

json violation_report_to_json(const ViolationReport& r) {
    return json{{"terms",
                 {{"R1", r.rows[0]},
                  {"R2", r.rows[1]},
                  {"R3", r.rows[2]},
                  {"C1", r.cols[0]},
                  {"C2", r.cols[1]},
                  {"C3", r.cols[2]}}},
                {"total", r.total},
                {"imag_total", r.imag_total},
                {"path", r.evaluation_path},
                {"context_order", "left-to-right"},
                {"state", {{"kind", r.state_kind}, {"seed", r.state_seed}}},
                {"bound_noncontextual", r.bound_noncontextual},
                {"bound_quantum_max", r.bound_quantum_max}};
}

json scan_summary_to_json(const ScanSummary& s) {
    return json{{"n_pure", s.n_pure},
                {"n_mixed", s.n_mixed},
                {"seed", s.seed},
                {"direct", {{"min", s.min_direct}, {"max", s.max_direct}, {"mean", s.mean_direct}}},
                {"hermitian",
                 {{"min", s.min_hermitian}, {"max", s.max_hermitian}, {"mean", s.mean_hermitian}}},
                {"spread", s.spread()}};
}

std::string scan_summary_to_csv(const ScanSummary& s) {
    std::ostringstream os;
    os << "seed_index,kind,total_direct,total_hermitian\n";
    for (const ScanRow& row : s.rows) {
        os << row.index << ',' << row.kind << ',' << format_17g(row.total_direct) << ','
           << format_17g(row.total_hermitian) << '\n';
    }
    return os.str();
}

json bound_certificate_to_json(const BoundCertificate& c) {
    json argmax = json::array();
    for (const cd& z : c.argmax) {
        argmax.push_back(complex_to_json(z));
    }
    json out{{"bound_value", c.bound_value},
             {"argmax", std::move(argmax)},
             {"method", c.method},
             {"n_starts", c.n_starts},
             {"max_gradient_norm", c.max_gradient_norm},
             {"max_modulus_deviation", c.max_modulus_deviation},
             {"max_modulus_deviation_at_optimum", c.max_modulus_deviation_at_optimum}};
    if (c.method == "exhaustive") {
        out["evaluations"] = c.evaluations;
    } else {
        json starts = json::array();
        for (const AscentStart& s : c.starts) {
            starts.push_back(json{{"seed", s.seed},
                                  {"value", s.value},
                                  {"projected_gradient_norm", s.projected_gradient_norm},
                                  {"max_modulus_deviation", s.max_modulus_deviation},
                                  {"iterations", s.iterations},
                                  {"converged", s.converged}});
        }
        out["starts"] = std::move(starts);
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + origin + ": " + e.what());
    }
}

Matrix load_matrix(const std::string& path) {
    return matrix_from_json(parse_json(read_text_file(path), path));
}

void save_matrix(const std::string& path, const Matrix& m) {
    write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

} // namespace contextlab
