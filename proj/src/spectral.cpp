#include "slinv/spectral.hpp"

#include "slinv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slinv::spectral {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string at(const char* what, std::size_t n)
{
    std::ostringstream os;
    os << what << " at index " << n;
    return os.str();
}

// Flags n |x_n - base_n| that keeps growing into the tail of the data.
bool tail_grows(std::span<const double> v, double offset)
{
    const std::size_t n_total = v.size();
    if (n_total < 8) {
        return false;
    }
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t n = 1; n < n_total; ++n) {
        const double t = static_cast<double>(n) * std::abs(v[n] - static_cast<double>(n) - offset);
        if (n < n_total / 2) {
            head = std::max(head, t);
        } else if (n >= 3 * n_total / 4) {
            tail = std::max(tail, t);
        }
    }
    return tail > 10.0 * (head + 1.0);
}

void check_increasing(std::span<const double> v, const char* name, std::vector<Violation>& out)
{
    for (std::size_t n = 0; n < v.size(); ++n) {
        if (!std::isfinite(v[n])) {
            out.push_back({"finite", at(name, n)});
            continue;
        }
        if (n > 0 && v[n] == v[n - 1]) {
            out.push_back({"distinct eigenvalues", at(name, n)});
        } else if (n > 0 && v[n] < v[n - 1]) {
            out.push_back({"increasing eigenvalues", at(name, n)});
        }
    }
}

int resolve_first(int first, int last)
{
    return first < 0 ? last / 2 : first;
}

// Least squares for y_n ~ sum_p c_p / n^p, n = first..last (n >= 1).
// Columns are scaled by (first/n)^p so every column has entries of order one.
SeriesFit solve_series(std::span<const double> y_all, std::span<const double> base, int first, int last,
                       const std::vector<int>& powers)
{
    const int lo = std::max(first, 1);
    const int rows = last - lo + 1;
    const auto cols = static_cast<Eigen::Index>(powers.size());
    SeriesFit fit;
    fit.powers = powers;
    fit.terms = static_cast<int>(powers.size());
    fit.first_index = lo;
    fit.last_index = last;
    Eigen::VectorXd y(rows);
    for (int n = lo; n <= last; ++n) {
        y(n - lo) = y_all[static_cast<std::size_t>(n)] - base[static_cast<std::size_t>(n)];
    }
    if (cols == 0) {
        fit.residual_norms.push_back(y.norm());
        return fit;
    }
    Eigen::MatrixXd A(rows, cols);
    for (int n = lo; n <= last; ++n) {
        const double r = static_cast<double>(lo) / n;
        for (Eigen::Index j = 0; j < cols; ++j) {
            A(n - lo, j) = std::pow(r, powers[static_cast<std::size_t>(j)]);
        }
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    fit.residual_norms.push_back((A * c - y).norm());
    fit.coefficients.resize(powers.size());
    for (Eigen::Index j = 0; j < cols; ++j) {
        // undo the column scaling: c_j (lo/n)^p = (c_j lo^p) / n^p
        fit.coefficients[static_cast<std::size_t>(j)] =
            c(j) * std::pow(static_cast<double>(lo), powers[static_cast<std::size_t>(j)]);
    }
    return fit;
}

template <class PowerFn>
SeriesFit greedy_fit(std::span<const double> values, std::span<const double> base, const FitOptions& options,
                     int cap, PowerFn power_of, const char* what)
{
    const int last = static_cast<int>(values.size()) - 1;
    const int first = std::max(resolve_first(options.first_index, last), 1);
    if (last - first < 2) {
        throw NumericalError(std::string(what) + ": too few indices for an asymptotic fit");
    }
    const int k_cap = std::max(1, std::min({options.max_terms, last - first - 1, cap}));
    auto powers_for = [&](int K) {
        std::vector<int> p;
        for (int j = 1; j <= K; ++j) {
            p.push_back(power_of(j));
        }
        return p;
    };
    SeriesFit best = solve_series(values, base, first, last, powers_for(1));
    std::vector<double> norms = best.residual_norms;
    for (int K = 2; K <= k_cap; ++K) {
        const double prev = norms.back();
        if (prev == 0.0) {
            break;
        }
        SeriesFit next = solve_series(values, base, first, last, powers_for(K));
        norms.push_back(next.residual_norms.front());
        if (K > options.min_terms && next.residual_norms.front() * options.improvement > prev) {
            break;
        }
        best = std::move(next);
    }
    best.residual_norms = std::move(norms);
    return best;
}

double series_value(const std::vector<double>& c, int n, int first_power, int step)
{
    double s = 0.0;
    const double inv = 1.0 / n;
    double p = std::pow(inv, first_power);
    const double ps = std::pow(inv, step);
    for (double v : c) {
        s += v * p;
        p *= ps;
    }
    return s;
}

std::vector<double> iota_base(std::size_t size, double offset)
{
    std::vector<double> b(size);
    for (std::size_t n = 0; n < size; ++n) {
        b[n] = static_cast<double>(n) + offset;
    }
    return b;
}

} // namespace

int SpectralDataset::exact_count() const
{
    if (origin.empty()) {
        return static_cast<int>(rho.size());
    }
    return static_cast<int>(std::count(origin.begin(), origin.end(), Origin::exact));
}

std::vector<Violation> validate(const SpectralDataset& data)
{
    std::vector<Violation> out;
    if (data.rho.empty()) {
        out.push_back({"non-empty", "no eigenvalues"});
        return out;
    }
    if (data.alpha.size() != data.rho.size()) {
        out.push_back({"matching sizes", "rho and alpha differ in length"});
    }
    check_increasing(data.rho, "rho", out);
    for (std::size_t n = 0; n < data.alpha.size(); ++n) {
        if (!(data.alpha[n] > 0.0) || !std::isfinite(data.alpha[n])) {
            out.push_back({"positive norming constants", at("alpha", n)});
        }
    }
    if (tail_grows(data.rho, 0.0)) {
        out.push_back({"bounded n(rho_n - n)", "n(rho_n - n) grows over the data"});
    }
    return out;
}

std::vector<Violation> validate(const TwoSpectraDataset& data)
{
    std::vector<Violation> out;
    if (data.rho.empty() || data.mu.empty()) {
        out.push_back({"non-empty", "both spectra are required"});
        return out;
    }
    check_increasing(data.rho, "rho", out);
    check_increasing(data.mu, "mu", out);
    for (std::size_t n = 0; n < data.mu.size(); ++n) {
        const double nu = signed_square(data.mu[n]);
        if (n < data.rho.size() && !(signed_square(data.rho[n]) < nu)) {
            out.push_back({"interlacing lambda_n < nu_n", at("mu", n)});
        }
        if (n + 1 < data.rho.size() && !(nu < signed_square(data.rho[n + 1]))) {
            out.push_back({"interlacing nu_n < lambda_n+1", at("mu", n)});
        }
    }
    if (tail_grows(data.rho, 0.0)) {
        out.push_back({"bounded n(rho_n - n)", "n(rho_n - n) grows over the data"});
    }
    if (tail_grows(data.mu, 0.5)) {
        out.push_back({"bounded n(mu_n - n - 1/2)", "n(mu_n - n - 1/2) grows over the data"});
    }
    return out;
}

namespace {

std::vector<double> shifted_roots(const std::vector<double>& r, double lambda0)
{
    std::vector<double> out(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) {
        out[n] = std::sqrt(std::max(0.0, signed_square(r[n]) - lambda0));
    }
    return out;
}

} // namespace

SpectralDataset shift_to_zero(const SpectralDataset& data)
{
    if (data.rho.empty()) {
        throw InvalidArgument("shift_to_zero: empty dataset");
    }
    SpectralDataset out = data;
    const double lambda0 = signed_square(data.rho.front());
    if (lambda0 == 0.0) {
        return out;
    }
    out.rho = shifted_roots(data.rho, lambda0);
    out.rho.front() = 0.0;
    out.shift += lambda0;
    return out;
}

TwoSpectraDataset shift_to_zero(const TwoSpectraDataset& data)
{
    if (data.rho.empty()) {
        throw InvalidArgument("shift_to_zero: empty dataset");
    }
    TwoSpectraDataset out = data;
    const double lambda0 = signed_square(data.rho.front());
    if (lambda0 == 0.0) {
        return out;
    }
    out.rho = shifted_roots(data.rho, lambda0);
    out.rho.front() = 0.0;
    out.mu = shifted_roots(data.mu, lambda0);
    out.shift += lambda0;
    return out;
}

SeriesFit fit_eigenvalue_asymptotics(std::span<const double> rho, const FitOptions& options)
{
    const auto base = iota_base(rho.size(), 0.0);
    return greedy_fit(rho, base, options, options.max_terms, [](int j) { return 2 * j - 1; }, "eigenvalue fit");
}

SeriesFit fit_norming_asymptotics(std::span<const double> alpha, int first_index, int K)
{
    const int last = static_cast<int>(alpha.size()) - 1;
    const int first = std::max(resolve_first(first_index, last), 1);
    if (K < 1) {
        throw InvalidArgument("norming fit: K must be at least 1");
    }
    if (last - first + 1 < K - 1) {
        throw NumericalError("norming fit: too few indices for the requested order");
    }
    std::vector<int> powers;
    for (int j = 1; j <= K - 1; ++j) {
        powers.push_back(2 * j);
    }
    std::vector<double> base(alpha.size(), kHalfPi);
    return solve_series(alpha, base, first, last, powers);
}

SeriesFit fit_mu_asymptotics(std::span<const double> mu, const FitOptions& options)
{
    const auto base = iota_base(mu.size(), 0.5);
    return greedy_fit(mu, base, options, 5, [](int j) { return j; }, "mu fit");
}

double AsymptoticModel::omega() const
{
    return omega_odd.empty() ? 0.0 : std::numbers::pi * omega_odd.front();
}

double AsymptoticModel::omega1() const
{
    return omega1_all.empty() ? 0.0 : std::numbers::pi * omega1_all.front();
}

double AsymptoticModel::rho_at(int n) const
{
    return n + series_value(omega_odd, n, 1, 2);
}

double AsymptoticModel::alpha_at(int n) const
{
    return kHalfPi + series_value(alpha_even, n, 2, 2);
}

double AsymptoticModel::mu_at(int n) const
{
    return n + 0.5 + series_value(omega1_all, n, 1, 1);
}

AsymptoticModel fit_model(const SpectralDataset& data, const FitOptions& options)
{
    AsymptoticModel m;
    const SeriesFit rf = fit_eigenvalue_asymptotics(data.rho, options);
    m.omega_odd = rf.coefficients;
    m.K = rf.terms;
    m.residual_norms = rf.residual_norms;
    const SeriesFit af = fit_norming_asymptotics(data.alpha, options.first_index, m.K);
    m.alpha_even = af.coefficients;
    return m;
}

SpectralDataset augment_with_asymptotics(const SpectralDataset& data, const AsymptoticModel& model, int M)
{
    SpectralDataset out = data;
    const int last = data.last_index();
    if (M <= last) {
        return out;
    }
    if (out.origin.empty()) {
        out.origin.assign(data.rho.size(), Origin::exact);
    }
    const auto extra = static_cast<std::size_t>(M - last);
    out.rho.reserve(out.rho.size() + extra);
    out.alpha.reserve(out.alpha.size() + extra);
    for (int n = last + 1; n <= M; ++n) {
        out.rho.push_back(model.rho_at(n));
        out.alpha.push_back(model.alpha_at(n));
        out.origin.push_back(Origin::asymptotic);
    }
    return out;
}

TwoSpectraDataset augment_with_asymptotics(const TwoSpectraDataset& data, const AsymptoticModel& model, int M)
{
    TwoSpectraDataset out = data;
    if (out.rho_origin.empty()) {
        out.rho_origin.assign(data.rho.size(), Origin::exact);
    }
    if (out.mu_origin.empty()) {
        out.mu_origin.assign(data.mu.size(), Origin::exact);
    }
    for (int n = static_cast<int>(data.rho.size()); n <= M; ++n) {
        out.rho.push_back(model.rho_at(n));
        out.rho_origin.push_back(Origin::asymptotic);
    }
    for (int n = static_cast<int>(data.mu.size()); n <= M; ++n) {
        out.mu.push_back(model.mu_at(n));
        out.mu_origin.push_back(Origin::asymptotic);
    }
    return out;
}

} // namespace slinv::spectral
