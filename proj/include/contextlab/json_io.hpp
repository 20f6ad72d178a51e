#ifndef CONTEXTLAB_JSON_IO_HPP
#define CONTEXTLAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "contextlab/bounds.hpp"
#include "contextlab/catalog.hpp"
#include "contextlab/pms.hpp"
#include "contextlab/spectral.hpp"

namespace contextlab {

using json = nlohmann::json;

/// {"dim": n, "entries": [[re, im], ...]} row-major, n^2 entries.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"sign": +-1, "u1": <matrix>, "u2": <matrix>, "u3": <matrix>, "residuals": {...}}
json triple_to_json(const PmsTriple& t);

/// Raw operators of a triple file; validation is the caller's business.
struct RawTriple {
    Matrix u1, u2, u3;
    int sign = +1;
};
RawTriple triple_from_json(const json& j);

json approx_triple_to_json(const ApproxTriple& t);

json canonical_form_to_json(const CanonicalForm& f);

json pairing_verdict_to_json(const PairingVerdict& v, const EigenClusters& clusters);

json algebra_report_to_json(const AlgebraReport& r);
json compatibility_report_to_json(const CompatibilityReport& r);
json product_report_to_json(const ProductReport& r);

/// {"terms": {"R1": ..., "C3": ...}, "total": ..., "path": ..., "state": {...}}
json violation_report_to_json(const ViolationReport& r);

json scan_summary_to_json(const ScanSummary& s);
/// One row per state: seed_index,kind,total_direct,total_hermitian.
std::string scan_summary_to_csv(const ScanSummary& s);

json bound_certificate_to_json(const BoundCertificate& c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

json parse_json(const std::string& text, const std::string& origin);

} // namespace contextlab

#endif
