#include "volterra/json_io.hpp"

#include <sstream>

namespace volterra {

namespace {

std::string domain_name(RootDomain d) {
    return d == RootDomain::z_domain ? "z_domain" : "x_domain";
}

void write_csv_row(std::ostringstream& out, std::initializer_list<double> cells) {
    bool first = true;
    for (double c : cells) {
        if (!first) out << ',';
        out << Json(c).dump();  // shortest round-trip float formatting
        first = false;
    }
    out << '\n';
}

}  // namespace

Json to_json(const FEigenfunction& f) {
    Json j;
    j["family"] = "f";
    j["n"] = f.n;
    j["alpha"] = f.alpha;
    j["lambda"] = f.lambda;
    j["beta"] = f.beta;
    j["coeffs"] = f.coeffs;
    return j;
}

Json to_json(const GEigenfunction& g) {
    Json j;
    j["family"] = "g";
    j["n"] = g.n;
    j["alpha"] = g.alpha;
    j["lambda"] = g.lambda;
    Json terms = Json::array();
    for (const GTerm& t : g.terms) {
        Json jt;
        jt["coefficient"] = t.coefficient;
        jt["exponent"] = t.exponent;
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    j["truncation_error_bound"] = g.truncation_error_bound;
    j["max_term_magnitude"] = g.max_term_magnitude;
    j["precision"] = g.precision == Precision::Extended ? "extended" : "double";
    return j;
}

Json to_json(const RootSet& roots) {
    Json j;
    j["domain"] = domain_name(roots.domain);
    j["values"] = roots.values;
    j["residuals"] = roots.residuals;
    j["certified_real"] = roots.certified_real;
    return j;
}

Json to_json(const GZeroScan& scan) {
    Json j;
    j["roots"] = to_json(scan.roots);
    j["interior_count"] = scan.interior_count;
    j["endpoint_zero"] = scan.endpoint_zero;
    j["endpoint_value"] = scan.endpoint_value;
    j["endpoint_bound"] = scan.endpoint_bound;
    j["conjectured_count"] = scan.conjectured_count;
    j["note"] = "exploratory scan; counts are reported, not asserted";
    return j;
}

Json to_json(const GramReport& report) {
    Json j;
    j["size"] = report.size;
    j["smallest_singular_value"] = report.smallest_singular_value;
    Json prof = Json::array();
    for (const auto& [n, d] : report.distance_profile) prof.push_back(Json::array({n, d}));
    j["distance_profile"] = std::move(prof);
    j["precision_flag"] = report.precision_flag;
    return j;
}

Json to_json(const MuntzReport& report) {
    Json j;
    j["exponents"] = report.exponents;
    j["partial_sums"] = report.partial_sums;
    j["ratios"] = report.ratios;
    j["ratio_limit"] = report.ratio_limit;
    j["tail_bound"] = report.tail_bound;
    return j;
}

Json to_json(const ConvergenceTable& table) {
    Json j;
    j["alpha"] = table.alpha;
    Json rows = Json::array();
    for (const ConvergenceRow& r : table.rows) {
        Json jr;
        jr["N"] = r.size;
        jr["moduli"] = r.moduli;
        jr["rel_errors"] = r.rel_errors;
        jr["artifact"] = r.artifact;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    j["top_error_monotone"] = table.top_error_monotone;
    return j;
}

std::string distance_profile_csv(const GramReport& report) {
    std::ostringstream out;
    out << "n,distance\n";
    for (const auto& [n, d] : report.distance_profile)
        write_csv_row(out, {static_cast<double>(n), d});
    return out.str();
}

std::string convergence_csv(const ConvergenceTable& table) {
    std::ostringstream out;
    out << "N,n,modulus,rel_error,artifact\n";
    for (const ConvergenceRow& r : table.rows)
        for (std::size_t i = 0; i < r.moduli.size(); ++i)
            write_csv_row(out, {static_cast<double>(r.size), static_cast<double>(i + 1),
                                r.moduli[i], r.rel_errors[i],
                                r.artifact[i] ? 1.0 : 0.0});
    return out.str();
}

}  // namespace volterra
