#include "slinv/charfun.hpp"

#include "slinv/errors.hpp"
#include "slinv/linalg.hpp"
#include "slinv/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slinv::charfun {

namespace {

constexpr double kPi = std::numbers::pi;

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Shrinks the column count until the condition number is acceptable, then solves.
CoefficientSolve solve_with_policy(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const SystemOptions& opt,
                                   const char* what, Eigen::Index index_offset = 0)
{
    Eigen::Index cols = A.cols();
    while (cols > 0) {
        const double c = linalg::condition_number(A.leftCols(cols));
        if (c < opt.cond_threshold) {
            break;
        }
        --cols;
    }
    if (cols == 0) {
        throw NumericalError(std::string(what) + ": condition threshold unattainable");
    }
    const linalg::LeastSquares ls = linalg::pinv_solve(A.leftCols(cols), b, opt.rel_cutoff);
    CoefficientSolve out;
    out.coefficients.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index n = 0; n < cols; ++n) {
        const auto k = static_cast<double>(n + index_offset);
        out.coefficients[static_cast<std::size_t>(n)] = ls.x(n) * std::sqrt(4.0 * k + 1.0);
    }
    out.cond = ls.cond;
    out.singular_values = ls.singular_values;
    out.residual = ls.residual;
    return out;
}

Eigen::Index starting_columns(Eigen::Index rows, const SystemOptions& opt)
{
    return std::max<Eigen::Index>(1, std::min<Eigen::Index>(rows, opt.max_unknowns));
}

double coefficient(const std::vector<double>& v, std::size_t i)
{
    return i < v.size() ? v[i] : 0.0;
}

} // namespace

HnSolve recover_hn(std::span<const double> rho, const SystemOptions& options, std::optional<double> omega)
{
    if (rho.size() < 2) {
        throw InvalidArgument("recover_hn: need at least two eigenvalues");
    }
    const auto rows = static_cast<Eigen::Index>(rho.size() - 1);
    const bool given = omega.has_value();
    const double w = omega.value_or(0.0);
    // With omega known, h_0 = -omega is fixed and column n holds h_{n+1}.
    const Eigen::Index first = given ? 1 : 0;
    const Eigen::Index cols = starting_columns(rows, options);
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);

#pragma omp parallel
    {
        std::vector<double> j(static_cast<std::size_t>(2 * (cols + first) - 1));
#pragma omp for schedule(static)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double rk = rho[static_cast<std::size_t>(r + 1)];
            const double z = rk * kPi;
            specfun::spherical_bessel_fill(z, j);
            const double c = std::cos(z);
            const double s = std::sin(z);
            for (Eigen::Index i = 0; i < cols; ++i) {
                const Eigen::Index n = i + first;
                const double col =
                    parity(static_cast<int>(n)) * std::sqrt(4.0 * n + 1.0) * j[static_cast<std::size_t>(2 * n)];
                A(r, i) = given ? col : -col;
            }
            if (given) {
                b(r) = rk * s - w * c + w * j[0];
            } else {
                A(r, 0) = c - j[0];
                b(r) = -rk * s;
            }
        }
    }

    HnSolve out;
    static_cast<CoefficientSolve&>(out) = solve_with_policy(A, b, options, "recover_hn", first);
    out.omega_given = given;
    if (given) {
        out.coefficients.insert(out.coefficients.begin(), -w);
        out.omega = w;
    } else {
        out.omega = -out.coefficients.front();
    }
    return out;
}

CoefficientSolve recover_gn_pi(std::span<const double> mu, const SystemOptions& options)
{
    if (mu.empty()) {
        throw InvalidArgument("recover_gn_pi: empty spectrum");
    }
    const auto rows = static_cast<Eigen::Index>(mu.size());
    const Eigen::Index cols = starting_columns(rows, options);
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
#pragma omp parallel
    {
        std::vector<double> j(static_cast<std::size_t>(2 * cols - 1));
#pragma omp for schedule(static)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double z = mu[static_cast<std::size_t>(r)] * kPi;
            specfun::spherical_bessel_fill(z, j);
            for (Eigen::Index n = 0; n < cols; ++n) {
                A(r, n) = parity(static_cast<int>(n)) * std::sqrt(4.0 * n + 1.0) * j[static_cast<std::size_t>(2 * n)];
            }
            b(r) = -std::cos(z);
        }
    }
    return solve_with_policy(A, b, options, "recover_gn_pi");
}

double evaluate_char_function(double rho, const BoundaryCoefficients& c)
{
    const double z = rho * kPi;
    double value = -rho * std::sin(z) + c.omega * std::cos(z);
    if (!c.h.empty()) {
        std::vector<double> j(2 * c.h.size() - 1);
        specfun::spherical_bessel_fill(z, j);
        for (std::size_t n = 0; n < c.h.size(); ++n) {
            value += parity(static_cast<int>(n)) * c.h[n] * j[2 * n];
        }
    }
    return value;
}

double phi_at_pi(double rho, const BoundaryCoefficients& c)
{
    const double z = rho * kPi;
    double value = std::cos(z);
    if (!c.g_pi.empty()) {
        std::vector<double> j(2 * c.g_pi.size() - 1);
        specfun::spherical_bessel_fill(z, j);
        for (std::size_t n = 0; n < c.g_pi.size(); ++n) {
            value += parity(static_cast<int>(n)) * c.g_pi[n] * j[2 * n];
        }
    }
    return value;
}

double norming_bracket(double rho, const BoundaryCoefficients& c)
{
    if (rho == 0.0) {
        throw InvalidArgument("norming_bracket: rho must be non-zero");
    }
    const double z = rho * kPi;
    double value = (1.0 + kPi * c.omega) * std::sin(z) + kPi * rho * std::cos(z);
    if (!c.h.empty()) {
        std::vector<double> j(2 * c.h.size());
        specfun::spherical_bessel_fill(z, j);
        for (std::size_t k = 0; k < c.h.size(); ++k) {
            value += parity(static_cast<int>(k)) * c.h[k] *
                     (kPi * j[2 * k + 1] - (2.0 * static_cast<double>(k) / rho) * j[2 * k]);
        }
    }
    return value;
}

double norming_bracket_at_zero(const BoundaryCoefficients& c)
{
    return kPi + c.omega * kPi * kPi / 3.0 + coefficient(c.h, 1) * kPi * kPi / 15.0;
}

std::vector<double> compute_norming_constants(std::span<const double> rho, const BoundaryCoefficients& c)
{
    if (rho.empty() || rho.front() != 0.0) {
        throw InvalidArgument("compute_norming_constants: data must be shifted so that rho_0 = 0");
    }
    std::vector<double> alpha(rho.size());
    alpha[0] = (1.0 + coefficient(c.g_pi, 0)) * norming_bracket_at_zero(c);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (std::size_t n = 1; n < rho.size(); ++n) {
        const double r = rho[n];
        if (r == 0.0) {
            bad = true;
            continue;
        }
        alpha[n] = phi_at_pi(r, c) * norming_bracket(r, c) / (2.0 * r);
    }
    if (bad) {
        throw InvalidArgument("compute_norming_constants: zero rho_n for n >= 1");
    }
    return alpha;
}

std::vector<double> flip_norming_constants(std::span<const double> rho, std::span<const double> alpha,
                                           const BoundaryCoefficients& c)
{
    if (rho.size() != alpha.size() || rho.empty()) {
        throw InvalidArgument("flip_norming_constants: rho and alpha must be non-empty and of equal length");
    }
    if (rho.front() != 0.0) {
        throw InvalidArgument("flip_norming_constants: data must be shifted so that rho_0 = 0");
    }
    for (double a : alpha) {
        if (!(a > 0.0)) {
            throw InvalidArgument("flip_norming_constants: norming constants must be positive");
        }
    }
    std::vector<double> out(rho.size());
    const double b0 = norming_bracket_at_zero(c);
    out[0] = b0 * b0 / alpha[0];
#pragma omp parallel for schedule(static)
    for (std::size_t n = 1; n < rho.size(); ++n) {
        const double b = norming_bracket(rho[n], c);
        out[n] = b * b / (4.0 * alpha[n] * rho[n] * rho[n]);
    }
    return out;
}

double recover_omega1_from_gn(std::span<const double> g_pi)
{
    double s = 0.0;
    for (double g : g_pi) {
        s += g;
    }
    return s / kPi;
}

} // namespace slinv::charfun
