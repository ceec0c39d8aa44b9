#include "slinv/errors.hpp"
#include "slinv/specfun.hpp"

#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <vector>

using namespace slinv::specfun;

namespace {

// reference in extended precision, independent of the recurrences under test
long double reference_j(int n, double z) { return boost::math::sph_bessel(static_cast<unsigned>(n), static_cast<long double>(z)); }

double scale_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) {
        s = std::max(s, std::abs(x));
    }
    return s;
}

} // namespace

TEST_CASE("j_n(0) limits")
{
    std::vector<double> out(6, -1.0);
    spherical_bessel_fill(0.0, out);
    CHECK(out[0] == 1.0);
    for (std::size_t k = 1; k < out.size(); ++k) {
        CHECK(out[k] == 0.0);
    }
}

TEST_CASE("j_n matches extended precision reference across regimes")
{
    const int N = 33;
    std::vector<double> out(N + 1);
    for (double z : {1e-7, 5e-5, 2e-4, 0.01, 0.3, 1.0, 2.5, 7.0, 15.0, 31.9, 33.0, 60.0, 150.0, 1000.0, 15707.9}) {
        spherical_bessel_fill(z, out);
        const double scale = scale_of(out);
        for (int n = 0; n <= N; ++n) {
            const long double ref = reference_j(n, z);
            const double tol = 1e-14 * std::max<double>(std::abs(static_cast<double>(ref)), 1e-300) +
                               2e-15 * scale * (z > 1.0 ? 1.0 : 0.0);
            INFO("z = " << z << ", n = " << n);
            CHECK(std::abs(out[static_cast<std::size_t>(n)] - static_cast<double>(ref)) <= tol);
        }
    }
}

TEST_CASE("negative arguments follow the parity j_n(-z) = (-1)^n j_n(z)")
{
    std::vector<double> a(12);
    std::vector<double> b(12);
    spherical_bessel_fill(3.7, a);
    spherical_bessel_fill(-3.7, b);
    for (std::size_t n = 0; n < a.size(); ++n) {
        CHECK(b[n] == doctest::Approx((n % 2 == 0 ? 1.0 : -1.0) * a[n]).epsilon(1e-14));
    }
}

TEST_CASE("tiny values underflow to zero instead of garbage")
{
    std::vector<double> out(200);
    spherical_bessel_fill(0.5, out);
    for (double v : out) {
        CHECK(std::isfinite(v));
    }
    CHECK(out.back() == 0.0);
    CHECK(out[40] == doctest::Approx(static_cast<double>(reference_j(40, 0.5))).epsilon(1e-13));
}

TEST_CASE("sum rule sum (2k+1) j_k^2 = 1")
{
    std::vector<double> out(160);
    for (double z : {0.2, 4.0, 25.0, 60.0}) {
        spherical_bessel_fill(z, out);
        double s = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            s += (2.0 * k + 1.0) * out[k] * out[k];
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("series agrees with the reference at small argument")
{
    for (int n : {0, 1, 4, 11}) {
        for (double z : {1e-6, 1e-3, 0.05}) {
            const double ref = static_cast<double>(reference_j(n, z));
            CHECK(spherical_bessel_series(n, z) == doctest::Approx(ref).epsilon(1e-15));
        }
    }
}

TEST_CASE("sequence wrapper")
{
    const auto s = spherical_bessel_sequence(2.0, 5);
    CHECK(s.values.size() == 6);
    CHECK(s.argument == 2.0);
    CHECK(s.values[0] == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("Legendre polynomials")
{
    std::vector<double> out(25);
    for (double t : {-1.0, -0.73, 0.0, 0.31, 0.999, 1.0}) {
        legendre_fill(t, out);
        for (int n = 0; n < 25; ++n) {
            const double ref = boost::math::legendre_p(n, t);
            CHECK(out[static_cast<std::size_t>(n)] == doctest::Approx(ref).epsilon(1e-13));
            CHECK(legendre(n, t) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
    CHECK(legendre(-1, 0.5) == 0.0);
    CHECK_THROWS_AS(legendre(2, 1.5), slinv::InvalidArgument);
}
