#pragma once

#include <span>
#include <vector>

namespace slinv::specfun {

/// Spherical Bessel values j_0(z)..j_N(z) for one real argument.
struct BesselSequence {
    double argument{0.0};
    std::vector<double> values;
};

/// Arguments with |z| below this use the ascending series for every order.
inline constexpr double kSmallArgument = 1e-4;

/// Fills out[k] = j_k(z) for k = 0..out.size()-1.
///
/// Three regimes are used:
///  - |z| < kSmallArgument: ascending power series per order;
///  - |z| >= N: upward recurrence from the closed forms of j_0, j_1
///    (the recurrence is stable while the order stays below the argument);
///  - otherwise: Miller backward recurrence started well above max(N, |z|),
///    rescaled on the fly and normalised with sum_k (2k+1) j_k^2 = 1.
///    Orders whose true value is below the double range come out as zero.
///
/// Allocation-free; intended for the assembly hot loops.
void spherical_bessel_fill(double z, std::span<double> out) noexcept;

/// Convenience wrapper returning j_0(z)..j_N(z).
BesselSequence spherical_bessel_sequence(double z, int N);

/// j_n(z) by the ascending power series. Accurate for |z| small relative to
/// sqrt(n); used for the tiny-argument branch and as a test reference.
double spherical_bessel_series(int n, double z) noexcept;

/// Legendre polynomial P_n(t) by the three-term recurrence.
/// P_n for negative n is taken as zero. Throws InvalidArgument if |t| > 1.
double legendre(int n, double t);

/// Fills out[k] = P_k(t) for k = 0..out.size()-1. Requires |t| <= 1.
void legendre_fill(double t, std::span<double> out);

} // namespace slinv::specfun
