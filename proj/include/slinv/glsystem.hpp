#pragma once

#include "slinv/spectral.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace slinv::glsystem {

enum class Variant {
    /// Gelfand-Levitan equation with the accelerated kernel; needs omega. Scaled,
    /// unknowns xi_k = g_k / (sqrt(4k+1) sqrt(x)), matrix I + L_N.
    modified,
    /// Integrated Gelfand-Levitan equation; no omega, unknowns g_k directly.
    integrated,
};

/// Truncated linear system for the Fourier-Legendre coefficients at one x.
struct MainSystem {
    double x{0.0};
    int N{0};
    Variant variant{Variant::modified};
    Eigen::MatrixXd matrix; // (N+1) x (N+1)
    Eigen::VectorXd rhs;
};

struct SolutionSlice {
    double x{0.0};
    std::vector<double> g;  // g_0(x) .. g_N(x)
    std::vector<double> xi; // g_k / (sqrt(4k+1) sqrt(x))
    double cond{0.0};
    std::vector<double> singular_values;
};

/// Modified system at x from shifted data (rho_0 = 0). The n-series runs over
/// every entry of `data` (exact and asymptotic alike).
/// Throws InvalidArgument if x <= 0, N < 0, N >= M or rho_0 != 0.
MainSystem assemble_modified(double x, const spectral::SpectralDataset& data, double omega, int N);

/// Integrated system at x, comparison mode. Same preconditions.
MainSystem assemble_integrated(double x, const spectral::SpectralDataset& data, int N);

/// Dense solve. Throws NumericalError when the matrix is numerically singular.
SolutionSlice solve_slice(const MainSystem& system);

/// Partial sums sum_{n<=N} g_n(x) / x, approximating G(x, x).
std::vector<double> evaluate_kernel_diagonal(std::span<const SolutionSlice> slices);

enum class Execution { serial, parallel };

struct MeshOptions {
    int N{7};
    Variant variant{Variant::modified};
    Execution execution{Execution::parallel};
};

/// Assembles and solves at every mesh point (all > 0). Results are in mesh order
/// and do not depend on the execution mode.
std::vector<SolutionSlice> solve_on_mesh(std::span<const double> mesh, const spectral::SpectralDataset& data,
                                         double omega, const MeshOptions& options = {});

} // namespace slinv::glsystem
