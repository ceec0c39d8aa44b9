#pragma once

#include <span>
#include <string>
#include <vector>

namespace slinv::spectral {

enum class Origin { exact, asymptotic };

/// Eigenvalue square roots and norming constants of the Robin-Robin problem.
///
/// Negative eigenvalues are stored with a signed square root, i.e.
/// lambda_n = rho_n * |rho_n|. After shift_to_zero all entries are >= 0.
struct SpectralDataset {
    std::vector<double> rho;
    std::vector<double> alpha;
    std::vector<Origin> origin; // empty means all exact
    double shift{0.0};          // lambda_0 removed by shift_to_zero

    int last_index() const { return static_cast<int>(rho.size()) - 1; }
    int exact_count() const;
};

/// Spectra of the Robin-Robin (rho) and Robin-Dirichlet (mu) problems.
struct TwoSpectraDataset {
    std::vector<double> rho;
    std::vector<double> mu;
    std::vector<Origin> rho_origin;
    std::vector<Origin> mu_origin;
    double shift{0.0};
};

struct Violation {
    std::string criterion;
    std::string detail;
};

/// lambda from a signed square root.
inline double signed_square(double r) { return r < 0.0 ? -r * r : r * r; }

/// Admissibility report; an empty list means no check failed.
std::vector<Violation> validate(const SpectralDataset& data);
std::vector<Violation> validate(const TwoSpectraDataset& data);

/// Moves lambda_0 to zero: rho'_n = sqrt(lambda_n - lambda_0). Norming constants
/// are unchanged. The removed lambda_0 is added to `shift`.
SpectralDataset shift_to_zero(const SpectralDataset& data);
TwoSpectraDataset shift_to_zero(const TwoSpectraDataset& data);

struct FitOptions {
    /// First index used in the fit; negative selects floor(N1 / 2).
    int first_index{-1};
    /// Upper bound on the number of fitted terms.
    int max_terms{6};
    /// Term counts up to this one are always kept (when the data allow). Kinks in q
    /// leave an oscillating remainder that hides the gain of the second term.
    int min_terms{2};
    /// A further term is kept only if it shrinks the residual by this factor.
    double improvement{10.0};
};

/// Least-squares fit of a finite inverse-power series in n.
struct SeriesFit {
    std::vector<double> coefficients; // one per power, in increasing order
    std::vector<int> powers;
    int terms{0};
    int first_index{0};
    int last_index{0};
    std::vector<double> residual_norms; // one per tried term count, starting at 1 term
};

/// rho_n - n ~ sum_j c_j / n^(2j-1) over n in [N_s, N1]; the number of terms K is
/// raised while each step improves the residual by the configured factor.
/// Throws NumericalError when fewer than three indices are available.
SeriesFit fit_eigenvalue_asymptotics(std::span<const double> rho, const FitOptions& options = {});

/// alpha_n - pi/2 ~ sum_{j<K} c_j / n^(2j) with K fixed by the eigenvalue fit.
/// K = 1 gives an empty fit.
SeriesFit fit_norming_asymptotics(std::span<const double> alpha, int first_index, int K);

/// mu_n - n - 1/2 ~ sum_j c_j / n^j (all powers), at most 5 terms.
SeriesFit fit_mu_asymptotics(std::span<const double> mu, const FitOptions& options = {});

/// Fitted high-index behaviour of the spectral data.
struct AsymptoticModel {
    std::vector<double> omega_odd;   // coefficients of 1/n, 1/n^3, ...
    std::vector<double> alpha_even;  // coefficients of 1/n^2, 1/n^4, ...
    std::vector<double> omega1_all;  // coefficients of 1/n, 1/n^2, ... (mu spectrum)
    int K{0};
    std::vector<double> residual_norms;
    std::vector<double> mu_residual_norms;

    double omega() const;
    double omega1() const;
    double rho_at(int n) const;
    double alpha_at(int n) const;
    double mu_at(int n) const;
};

/// Fits both the eigenvalue and the norming-constant asymptotics of `data`.
AsymptoticModel fit_model(const SpectralDataset& data, const FitOptions& options = {});

/// Appends model values for n = N1+1 .. M, flagged asymptotic.
/// When M <= N1 the data is returned unchanged.
SpectralDataset augment_with_asymptotics(const SpectralDataset& data, const AsymptoticModel& model, int M);
TwoSpectraDataset augment_with_asymptotics(const TwoSpectraDataset& data, const AsymptoticModel& model, int M);

} // namespace slinv::spectral
