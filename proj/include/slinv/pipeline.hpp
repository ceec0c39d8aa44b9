#pragma once

#include "slinv/glsystem.hpp"
#include "slinv/recovery.hpp"
#include "slinv/spectral.hpp"

#include <string>
#include <vector>

namespace slinv::pipeline {

enum class OmegaMethod { fit, h0 };

std::string to_string(OmegaMethod m);
OmegaMethod omega_method_from_string(const std::string& s);

struct SolveConfig {
    int N{7};           // truncation order, N + 1 equations
    int M{5000};        // data are extended with asymptotic values up to this index
    int mesh_size{201}; // points per half-interval solve and in the output mesh
    int first_fit_index{-1};
    int max_fit_terms{6};
    int min_fit_terms{2};
    double fit_improvement{10.0};
    double cond_threshold{10.0};    // boundary systems with omega known
    double h0_cond_threshold{200.0}; // omega-free system used for the -h_0 estimate
    /// Unknown cap for the boundary systems on augmented data; negative means the
    /// number of exact pairs. Non-smooth q gives slowly decaying h_n, so 30 is too few.
    int max_unknowns{-1};
    int h0_max_unknowns{30}; // cap for the omega-free system on exact data
    bool flip{true};
    double flip_extent{0.55}; // a / pi for each half solve when flipping
    recovery::DiffMethod diff{recovery::DiffMethod::chebyshev_filtered};
    double cheb_threshold{1e-10};
    OmegaMethod omega_method{OmegaMethod::fit};
    glsystem::Execution execution{glsystem::Execution::parallel};
    int integration_intervals{4096};

    /// Throws InvalidArgument on out-of-range settings.
    void check() const;
};

struct Diagnostics {
    double omega_fit{0.0};
    double omega_h0{0.0};
    bool omega_h0_available{false};
    double omega_used{0.0};
    double omega1_fit{0.0};
    double omega1_series{0.0};
    int fit_terms{0};
    int mu_fit_terms{0};
    std::vector<double> fit_residuals;
    std::vector<double> mu_fit_residuals;
    int h_terms{0};
    double h_cond{0.0};
    int g_terms{0};
    double g_cond{0.0};
    double main_cond_min{0.0};
    double main_cond_max{0.0};
    int diff_terms_direct{0};
    int diff_terms_flipped{0};
    bool diff_fallback{false}; // Chebyshev series did not decay; the spline was used
    double h_reverse{0.0}; // g0'(0) of the flipped solve, an independent estimate of H
    double H_integral{0.0}; // omega - h - (1/2) int q (equals H in the one-spectrum case)
    double lambda0{0.0};
    int exact_count{0};
    int total_count{0};
    double seconds{0.0};
};

struct Result {
    recovery::Reconstruction reconstruction;
    Diagnostics diagnostics;
    /// g0 of the direct solve on its own mesh (x in [0, a]), shifted problem.
    std::vector<double> g0_mesh;
    std::vector<double> g0;
};

/// Potential and boundary constants from eigenvalues and norming constants.
/// Throws ValidationError when the data are inadmissible.
Result solve_problem1(const spectral::SpectralDataset& data, const SolveConfig& config = {});

/// Potential and boundary constants from the Robin-Robin and Robin-Dirichlet spectra.
Result solve_problem2(const spectral::TwoSpectraDataset& data, const SolveConfig& config = {});

/// Norming constants of the reflected problem q(pi - x), h and H exchanged, for
/// the exact pairs of `data` (eigenvalues are unchanged).
spectral::SpectralDataset flip_dataset(const spectral::SpectralDataset& data, const SolveConfig& config = {});

/// Mesh used for the half-interval solves on [0, a] (Chebyshev-Lobatto for the
/// Chebyshev method, uniform for the spline); the first point is 0.
std::vector<double> solve_mesh(double a, int count, recovery::DiffMethod method);

/// Uniform output mesh on [0, pi].
std::vector<double> output_mesh(int count);

} // namespace slinv::pipeline
