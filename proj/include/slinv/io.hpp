#pragma once

#include "slinv/pipeline.hpp"
#include "slinv/potential.hpp"
#include "slinv/spectral.hpp"

#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace slinv::io {

/// "robin-robin": rho and alpha (one spectrum with norming constants).
/// "robin-dirichlet": rho of the Robin-Robin problem and mu of the
/// Robin-Dirichlet problem (two spectra).
enum class ProblemKind { robin_robin, robin_dirichlet };

std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

struct SpectralFile {
    ProblemKind problem{ProblemKind::robin_robin};
    std::vector<double> rho; // signed: rho = -sqrt(-lambda) for negative eigenvalues
    std::vector<double> alpha;
    std::vector<double> mu;
    nlohmann::json meta = nlohmann::json::object();
};

/// Throws ValidationError on missing or inconsistent fields.
SpectralFile parse_spectral(const nlohmann::json& doc);
nlohmann::json to_json(const SpectralFile& file);

SpectralFile read_spectral_file(const std::string& path);
void write_spectral_file(const std::string& path, const SpectralFile& file);

spectral::SpectralDataset to_dataset(const SpectralFile& file);
spectral::TwoSpectraDataset to_two_spectra(const SpectralFile& file);

/// Two-column CSV "x,q" (header optional) into a tabulated potential.
Potential read_potential_csv(const std::string& path);

/// Builtin name, or a CSV path when no builtin matches.
Potential resolve_potential(const std::string& spec);

/// x,q_recovered[,q_reference,abs_error] with 17 significant digits.
void write_reconstruction_csv(std::ostream& out, const recovery::Reconstruction& r,
                              const Potential* reference = nullptr);

/// L1 error of the reconstruction against a reference potential.
double l1_error(const recovery::Reconstruction& r, const Potential& reference);

/// Wall time is left out so repeated runs give identical files.
nlohmann::json diagnostics_json(const pipeline::Result& result, std::optional<double> l1 = std::nullopt);

/// Fixed 17-significant-digit formatting used by all text outputs.
std::string format_number(double v);

} // namespace slinv::io
