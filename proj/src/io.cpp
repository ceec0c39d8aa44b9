#include "slinv/io.hpp"

#include "slinv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace slinv::io {

using nlohmann::json;

std::string to_string(ProblemKind k) { return k == ProblemKind::robin_robin ? "robin-robin" : "robin-dirichlet"; }

ProblemKind problem_kind_from_string(const std::string& s)
{
    if (s == "robin-robin") {
        return ProblemKind::robin_robin;
    }
    if (s == "robin-dirichlet") {
        return ProblemKind::robin_dirichlet;
    }
    throw ValidationError("unknown problem kind '" + s + "'");
}

namespace {

std::vector<double> number_array(const json& doc, const char* key)
{
    const auto& v = doc.at(key);
    if (!v.is_array()) {
        throw ValidationError(std::string("'") + key + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ValidationError(std::string("'") + key + "' must contain numbers only");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

void require_ascending(const std::vector<double>& v, const char* key)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) {
            throw ValidationError(std::string("'") + key + "' is not strictly ascending at index " +
                                  std::to_string(i));
        }
    }
}

} // namespace

SpectralFile parse_spectral(const json& doc)
{
    if (!doc.is_object()) {
        throw ValidationError("spectral file must be a JSON object");
    }
    SpectralFile f;
    try {
        f.problem = problem_kind_from_string(doc.at("problem").get<std::string>());
        f.rho = number_array(doc, "rho");
        if (doc.contains("alpha")) {
            f.alpha = number_array(doc, "alpha");
        }
        if (doc.contains("mu")) {
            f.mu = number_array(doc, "mu");
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed spectral file: ") + e.what());
    }
    if (doc.contains("meta")) {
        f.meta = doc["meta"];
    }
    require_ascending(f.rho, "rho");
    require_ascending(f.mu, "mu");
    if (f.problem == ProblemKind::robin_robin) {
        if (f.alpha.size() != f.rho.size()) {
            throw ValidationError("robin-robin data need one alpha per rho");
        }
    } else {
        if (!f.alpha.empty()) {
            throw ValidationError("robin-dirichlet data carry no norming constants");
        }
        if (f.mu.empty()) {
            throw ValidationError("robin-dirichlet data need the mu spectrum");
        }
    }
    return f;
}

json to_json(const SpectralFile& f)
{
    json doc;
    doc["problem"] = to_string(f.problem);
    doc["rho"] = f.rho;
    if (!f.alpha.empty()) {
        doc["alpha"] = f.alpha;
    }
    if (!f.mu.empty()) {
        doc["mu"] = f.mu;
    }
    doc["meta"] = f.meta;
    return doc;
}

SpectralFile read_spectral_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
    return parse_spectral(doc);
}

void write_spectral_file(const std::string& path, const SpectralFile& file)
{
    std::ofstream out(path);
    if (!out) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    out << to_json(file).dump(2) << '\n';
}

spectral::SpectralDataset to_dataset(const SpectralFile& file)
{
    if (file.problem != ProblemKind::robin_robin) {
        throw ValidationError("one-spectrum solve needs robin-robin data with norming constants");
    }
    spectral::SpectralDataset d;
    d.rho = file.rho;
    d.alpha = file.alpha;
    return d;
}

spectral::TwoSpectraDataset to_two_spectra(const SpectralFile& file)
{
    if (file.mu.empty()) {
        throw ValidationError("two-spectra solve needs the mu spectrum");
    }
    spectral::TwoSpectraDataset d;
    d.rho = file.rho;
    d.mu = file.mu;
    return d;
}

Potential read_potential_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::vector<double> xs;
    std::vector<double> qs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x = 0.0;
        double q = 0.0;
        if (!(ls >> x >> q)) {
            if (xs.empty()) {
                continue; // header
            }
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected two numbers");
        }
        xs.push_back(x);
        qs.push_back(q);
    }
    if (xs.size() < 2) {
        throw ValidationError(path + ": need at least two samples");
    }
    return potentials::tabulated(std::move(xs), std::move(qs), path);
}

Potential resolve_potential(const std::string& spec)
{
    const auto names = potentials::builtin_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) {
        return potentials::by_name(spec);
    }
    if (std::ifstream(spec).good()) {
        return read_potential_csv(spec);
    }
    throw InvalidArgument("'" + spec + "' is neither a builtin potential nor a readable CSV file");
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_reconstruction_csv(std::ostream& out, const recovery::Reconstruction& r, const Potential* reference)
{
    out << "x,q_recovered";
    if (reference != nullptr) {
        out << ",q_reference,abs_error";
    }
    out << '\n';
    for (std::size_t i = 0; i < r.mesh.size(); ++i) {
        out << format_number(r.mesh[i]) << ',' << format_number(r.q[i]);
        if (reference != nullptr) {
            const double q = (*reference)(r.mesh[i]);
            out << ',' << format_number(q) << ',' << format_number(std::abs(r.q[i] - q));
        }
        out << '\n';
    }
}

double l1_error(const recovery::Reconstruction& r, const Potential& reference)
{
    std::vector<double> err(r.mesh.size());
    for (std::size_t i = 0; i < r.mesh.size(); ++i) {
        err[i] = std::abs(r.q[i] - reference(r.mesh[i]));
    }
    return recovery::integrate_over_interval(r.mesh, err);
}

json diagnostics_json(const pipeline::Result& result, std::optional<double> l1)
{
    const auto& r = result.reconstruction;
    const auto& d = result.diagnostics;
    json j;
    j["omega"] = r.omega;
    j["h"] = r.h;
    j["H"] = r.H;
    j["lambda0"] = r.lambda0;
    j["method"] = recovery::to_string(r.method);
    j["equations"] = r.N + 1;
    j["M"] = r.M;
    j["omega_fit"] = d.omega_fit;
    if (d.omega_h0_available) {
        j["omega_h0"] = d.omega_h0;
    }
    j["fit_terms"] = d.fit_terms;
    j["fit_residuals"] = d.fit_residuals;
    if (d.mu_fit_terms > 0) {
        j["mu_fit_terms"] = d.mu_fit_terms;
        j["mu_fit_residuals"] = d.mu_fit_residuals;
        j["omega1_fit"] = d.omega1_fit;
        j["omega1_series"] = d.omega1_series;
        j["g_terms"] = d.g_terms;
        j["g_cond"] = d.g_cond;
    }
    j["h_terms"] = d.h_terms;
    j["h_cond"] = d.h_cond;
    j["main_cond_min"] = d.main_cond_min;
    j["main_cond_max"] = d.main_cond_max;
    j["diff_terms_direct"] = d.diff_terms_direct;
    j["diff_terms_flipped"] = d.diff_terms_flipped;
    j["diff_fallback"] = d.diff_fallback;
    j["h_reverse"] = d.h_reverse;
    j["H_integral"] = d.H_integral;
    j["exact_count"] = d.exact_count;
    j["total_count"] = d.total_count;
    if (l1) {
        j["l1_error"] = *l1;
    }
    return j;
}

} // namespace slinv::io
