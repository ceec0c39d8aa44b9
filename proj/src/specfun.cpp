#include "slinv/specfun.hpp"

#include "slinv/errors.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace slinv::specfun {

namespace {

constexpr double kRescaleAbove = 1e100;
constexpr double kRescaleBy = 1e-100;

// Recurrence start for Miller's algorithm. The sqrt term is the usual
// margin that makes the dominant solution swamp the minimal one by ~40 digits.
int miller_start(int n, double z)
{
    const double top = std::max(static_cast<double>(n), z);
    return static_cast<int>(top + std::ceil(std::sqrt(40.0 * (top + 1.0)))) + 16;
}

void fill_upward(double z, std::span<double> out)
{
    const double s = std::sin(z);
    const double c = std::cos(z);
    out[0] = s / z;
    if (out.size() == 1) {
        return;
    }
    out[1] = s / (z * z) - c / z;
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        out[k + 1] = static_cast<double>(2 * k + 1) / z * out[k] - out[k - 1];
    }
}

void fill_miller(double z, std::span<double> out)
{
    const int n_out = static_cast<int>(out.size()) - 1;
    const int start = miller_start(n_out, z);

    double f_next = 0.0; // f_{k+1}
    double f_cur = 1.0; // f_k, arbitrary seed at k = start
    double norm = 0.0;
    for (auto& v : out) {
        v = 0.0;
    }
    for (int k = start; k >= 0; --k) {
        if (k <= n_out) {
            out[static_cast<std::size_t>(k)] = f_cur;
        }
        norm += static_cast<double>(2 * k + 1) * f_cur * f_cur;
        if (k == 0) {
            break;
        }
        const double f_prev = static_cast<double>(2 * k + 1) / z * f_cur - f_next;
        f_next = f_cur;
        f_cur = f_prev;
        if (std::abs(f_cur) > kRescaleAbove) {
            f_cur *= kRescaleBy;
            f_next *= kRescaleBy;
            norm *= kRescaleBy * kRescaleBy;
            for (int j = k; j <= n_out; ++j) {
                out[static_cast<std::size_t>(j)] *= kRescaleBy;
            }
        }
    }

    double scale = 1.0 / std::sqrt(norm);
    // Fix the sign with whichever closed form is better conditioned.
    const double s = std::sin(z);
    const double c = std::cos(z);
    const double j0 = s / z;
    const double j1 = s / (z * z) - c / z;
    const double f0 = out[0];
    const double f1 = n_out >= 1 ? out[1] : 0.0;
    const bool use_j0 = std::abs(j0) >= std::abs(j1) || n_out < 1;
    const double sign_ref = use_j0 ? j0 * f0 : j1 * f1;
    if (sign_ref < 0.0) {
        scale = -scale;
    }
    for (auto& v : out) {
        v *= scale;
    }
}

} // namespace

double spherical_bessel_series(int n, double z) noexcept
{
    if (n < 0) {
        return 0.0;
    }
    // z^n / (2n+1)!! built up factor by factor so that underflow is graceful.
    double lead = 1.0;
    for (int k = 1; k <= n; ++k) {
        lead *= z / static_cast<double>(2 * k + 1);
    }
    if (lead == 0.0) {
        return 0.0;
    }
    const double mz2 = -0.5 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= mz2 / (static_cast<double>(k) * static_cast<double>(2 * n + 2 * k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return lead * sum;
}

void spherical_bessel_fill(double z, std::span<double> out) noexcept
{
    if (out.empty()) {
        return;
    }
    const int n_out = static_cast<int>(out.size()) - 1;
    const double az = std::abs(z);
    if (az == 0.0) {
        out[0] = 1.0;
        for (std::size_t k = 1; k < out.size(); ++k) {
            out[k] = 0.0;
        }
        return;
    }
    if (az < kSmallArgument) {
        for (int k = 0; k <= n_out; ++k) {
            out[static_cast<std::size_t>(k)] = spherical_bessel_series(k, az);
        }
    } else if (az >= static_cast<double>(n_out)) {
        fill_upward(az, out);
    } else {
        fill_miller(az, out);
    }
    if (z < 0.0) {
        for (std::size_t k = 1; k < out.size(); k += 2) {
            out[k] = -out[k];
        }
    }
}

BesselSequence spherical_bessel_sequence(double z, int N)
{
    if (N < 0) {
        throw InvalidArgument("spherical_bessel_sequence: negative order " + std::to_string(N));
    }
    BesselSequence seq{z, std::vector<double>(static_cast<std::size_t>(N) + 1)};
    spherical_bessel_fill(z, seq.values);
    return seq;
}

double legendre(int n, double t)
{
    if (!(std::abs(t) <= 1.0)) {
        throw InvalidArgument("legendre: argument outside [-1, 1]");
    }
    if (n < 0) {
        return 0.0;
    }
    if (n == 0) {
        return 1.0;
    }
    double p_prev = 1.0;
    double p = t;
    for (int k = 1; k < n; ++k) {
        const double p_next = (static_cast<double>(2 * k + 1) * t * p - static_cast<double>(k) * p_prev) /
                              static_cast<double>(k + 1);
        p_prev = p;
        p = p_next;
    }
    return p;
}

void legendre_fill(double t, std::span<double> out)
{
    if (!(std::abs(t) <= 1.0)) {
        throw InvalidArgument("legendre_fill: argument outside [-1, 1]");
    }
    if (out.empty()) {
        return;
    }
    out[0] = 1.0;
    if (out.size() == 1) {
        return;
    }
    out[1] = t;
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        out[k + 1] = (static_cast<double>(2 * k + 1) * t * out[k] - static_cast<double>(k) * out[k - 1]) /
                     static_cast<double>(k + 1);
    }
}

} // namespace slinv::specfun
