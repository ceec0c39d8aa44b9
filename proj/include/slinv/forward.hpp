#pragma once

#include "slinv/potential.hpp"

#include <span>
#include <vector>

namespace slinv::forward {

enum class RightBoundary { robin, dirichlet };

/// -y'' + q y = lambda y,  y'(0) - h y(0) = 0, and at pi either
/// y'(pi) + H y(pi) = 0 (robin) or y(pi) = 0 (dirichlet).
struct ForwardProblem {
    Potential potential;
    double h{0.0};
    double H{0.0};
    RightBoundary bc_right{RightBoundary::robin};
    int count{1};
};

struct ForwardOptions {
    /// Largest Magnus step on [0, pi].
    double max_step{0.01};
    /// Step bound relative to the local wavelength: step * sqrt(|lambda| + max|q|) <= this.
    double oscillation_step{0.8};
    /// Relative tolerance of the eigenvalue refinement (in lambda).
    double lambda_tolerance{1e-15};
};

/// Eigenvalues lambda_n, their square roots rho_n and, for the Robin case,
/// norming constants alpha_n = integral_0^pi phi(rho_n, x)^2 dx.
struct ForwardSpectrum {
    std::vector<double> lambda;
    std::vector<double> rho;
    std::vector<double> alpha; // empty when bc_right == dirichlet
};

/// phi(lambda, x) and its x-derivative, phi(0) = 1, phi'(0) = h.
struct SolutionValue {
    double phi{0.0};
    double dphi{0.0};
};

/// Computes the first `count` eigenpairs. Each eigenvalue is located through the
/// Pruefer angle at pi, which is strictly increasing in lambda, so no root can be
/// skipped; refinement is a bracketed TOMS 748 solve. Norming constants come from
/// alpha_n = -phi(pi) dPhi/dlambda with Phi = phi'(pi) + H phi(pi), the derivative
/// taken by a complex step through the same integrator.
/// Throws NumericalError on failed bracketing or non-convergence,
/// InvalidArgument when count < 1.
ForwardSpectrum solve_forward(const ForwardProblem& problem, const ForwardOptions& options = {});

/// The n-th eigenvalue only.
double eigenvalue(const ForwardProblem& problem, int n, const ForwardOptions& options = {});

/// phi and phi' at each of the (sorted, within [0, pi]) points xs.
std::vector<SolutionValue> evaluate_solution(const Potential& potential, double h, double lambda,
                                             std::span<const double> xs, const ForwardOptions& options = {});

/// Unscaled Pruefer angle theta(pi) with phi = r sin(theta), phi' = r cos(theta),
/// theta(0) = arccot(h). Continuous and strictly increasing in lambda.
double prufer_angle_at_pi(const Potential& potential, double h, double lambda, const ForwardOptions& options = {});

/// Number of zeros of phi(lambda, .) in (0, pi).
int zero_count(const Potential& potential, double h, double lambda, const ForwardOptions& options = {});

} // namespace slinv::forward
