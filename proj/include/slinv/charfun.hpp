#pragma once

#include <optional>
#include <span>
#include <vector>

namespace slinv::charfun {

/// How many unknowns an overdetermined boundary system keeps.
struct SystemOptions {
    /// Unknowns are dropped from the top until cond(A) falls below this.
    double cond_threshold{10.0};
    /// Starting cap on the number of unknowns (further capped by the row count).
    int max_unknowns{30};
    /// Relative singular-value cutoff of the pseudoinverse.
    double rel_cutoff{1e-13};
};

/// Result of one overdetermined solve. Coefficients are unscaled.
struct CoefficientSolve {
    std::vector<double> coefficients;
    double cond{0.0};
    std::vector<double> singular_values;
    double residual{0.0};
};

struct HnSolve : CoefficientSolve {
    double omega{0.0};
    bool omega_given{false};
};

/// h_n = gamma_n(pi) + H g_n(pi) from Phi(rho_k) = 0, k = 1..M, where
/// Phi(rho) = -rho sin(rho pi) + omega cos(rho pi) + sum (-1)^n h_n j_2n(rho pi).
///
/// Without `omega` the relation omega = -h_0 is built into the first column and
/// omega is returned from the solution. With `omega`, h_0 = -omega is fixed and
/// only h_1, h_2, ... are unknowns. Leaving h_0 free there would be hopeless:
/// its column j_0(rho_k pi) nearly vanishes for rho_k close to integers.
/// Expects shifted data (rho_0 = 0). Throws InvalidArgument for fewer than two
/// entries and NumericalError if even a single unknown violates the threshold.
HnSolve recover_hn(std::span<const double> rho, const SystemOptions& options = {},
                   std::optional<double> omega = std::nullopt);

/// g_n(pi) from phi(mu_k, pi) = 0, k = 0..M:
/// sum (-1)^n g_n(pi) j_2n(mu_k pi) = -cos(mu_k pi).
CoefficientSolve recover_gn_pi(std::span<const double> mu, const SystemOptions& options = {});

/// Everything known at x = pi about the transmutation kernel.
struct BoundaryCoefficients {
    std::vector<double> h;    // h_n
    std::vector<double> g_pi; // g_n(pi), empty in the one-spectrum case
    double omega{0.0};
};

/// Phi(rho); vanishes at the square-root eigenvalues.
double evaluate_char_function(double rho, const BoundaryCoefficients& c);

/// phi(rho, pi) from the g_n(pi) series.
double phi_at_pi(double rho, const BoundaryCoefficients& c);

/// (1 + pi omega) sin(rho pi) + pi rho cos(rho pi)
///   + sum (-1)^k h_k (pi j_2k+1(rho pi) - (2k / rho) j_2k(rho pi)),
/// which equals -2 rho dPhi/dlambda up to the sign convention; rho != 0.
double norming_bracket(double rho, const BoundaryCoefficients& c);

/// pi + omega pi^2 / 3 + h_1 pi^2 / 15, the rho -> 0 limit of the bracket over rho.
double norming_bracket_at_zero(const BoundaryCoefficients& c);

/// Norming constants from the two boundary series. rho[0] must be 0 and every
/// other entry non-zero (InvalidArgument otherwise).
std::vector<double> compute_norming_constants(std::span<const double> rho, const BoundaryCoefficients& c);

/// Norming constants of the reflected problem q(pi - x) with h and H exchanged.
/// Throws InvalidArgument on non-positive alpha or size mismatch.
std::vector<double> flip_norming_constants(std::span<const double> rho, std::span<const double> alpha,
                                           const BoundaryCoefficients& c);

/// omega_1 = sum g_n(pi) / pi.
double recover_omega1_from_gn(std::span<const double> g_pi);

} // namespace slinv::charfun
