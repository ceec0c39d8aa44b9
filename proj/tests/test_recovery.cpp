#include "slinv/errors.hpp"
#include "slinv/recovery.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace slinv;
using namespace slinv::recovery;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform(double lo, double hi, int count)
{
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    }
    return x;
}

template <class F>
std::vector<double> sample(const std::vector<double>& x, F f)
{
    std::vector<double> y;
    for (double v : x) {
        y.push_back(f(v));
    }
    return y;
}

} // namespace

TEST_CASE("Lobatto nodes")
{
    const auto x = chebyshev_lobatto(0.0, 2.0, 5);
    REQUIRE(x.size() == 5);
    CHECK(x.front() == 0.0);
    CHECK(x.back() == 2.0);
    CHECK(x[2] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0 - std::cos(kPi / 4.0)));
}

TEST_CASE("Chebyshev fit of a smooth function on Lobatto nodes")
{
    const auto x = chebyshev_lobatto(0.0, 2.0, 101);
    const ChebyshevFit fit(x, sample(x, [](double t) { return std::exp(t) * std::sin(t); }));
    CHECK(fit.resolved());
    CHECK(fit.terms() < 30);
    CHECK(fit.raw_coefficients().size() == 101);
    for (double t : {0.0, 0.37, 1.4, 2.0}) {
        const double e = std::exp(t);
        // truncation at 1e-10 of the leading coefficient bounds the accuracy
        CHECK(std::abs(fit.eval(t) - e * std::sin(t)) < 1e-9);
        CHECK(std::abs(fit.eval(t, 1) - e * (std::sin(t) + std::cos(t))) < 1e-7);
        CHECK(std::abs(fit.eval(t, 2) - 2.0 * e * std::cos(t)) < 1e-5);
    }
    CHECK_THROWS_AS(fit.eval(1.0, 9), InvalidArgument);
}

TEST_CASE("Chebyshev least squares off the Lobatto grid reproduces a cubic")
{
    const auto x = uniform(-1.0, 3.0, 64);
    const ChebyshevFit fit(x, sample(x, [](double t) { return t * t * t - 2.0 * t + 0.5; }));
    CHECK(fit.terms() <= 6);
    CHECK(fit.eval(2.5, 2) == doctest::Approx(15.0).epsilon(1e-10));
}

TEST_CASE("rough data are not resolved by the Chebyshev filter")
{
    const auto x = chebyshev_lobatto(0.0, kPi, 201);
    const auto y = sample(x, [](double t) { return 1e-3 * std::pow(std::abs(t - 1.0), 3.0); });
    const ChebyshevFit fit(x, y);
    CHECK_FALSE(fit.resolved());
    const auto fallback = fit_g0(x, y, DiffMethod::chebyshev_filtered);
    CHECK(dynamic_cast<const QuinticSpline*>(fallback.get()) != nullptr);
}

TEST_CASE("quintic spline reproduces quintics")
{
    const auto x = uniform(0.0, 2.0, 30);
    auto p = [](double t) { return 1.0 - t + 0.5 * t * t * t - 0.1 * std::pow(t, 5); };
    const QuinticSpline s(x, sample(x, p));
    for (double t : {0.0, 0.31, 1.0, 1.77, 2.0}) {
        CHECK(s.eval(t) == doctest::Approx(p(t)).epsilon(1e-11));
        CHECK(s.eval(t, 1) == doctest::Approx(-1.0 + 1.5 * t * t - 0.5 * std::pow(t, 4)).epsilon(1e-9).scale(1.0));
        CHECK(s.eval(t, 2) == doctest::Approx(3.0 * t - 2.0 * t * t * t).epsilon(1e-8).scale(1.0));
    }
    CHECK(s.lower() == 0.0);
    CHECK(s.upper() == 2.0);
}

TEST_CASE("spline second derivative of a smooth function")
{
    const auto x = uniform(0.0, kPi, 101);
    const auto d = differentiate_g0(x, sample(x, [](double t) { return std::sin(2.0 * t); }), DiffMethod::spline6);
    for (std::size_t i = 0; i < x.size(); i += 10) {
        CHECK(d.second[i] == doctest::Approx(-4.0 * std::sin(2.0 * x[i])).scale(1.0).epsilon(1e-5));
        CHECK(d.first[i] == doctest::Approx(2.0 * std::cos(2.0 * x[i])).scale(1.0).epsilon(1e-7));
    }
}

TEST_CASE("fit input checks")
{
    const std::vector<double> few{0.0, 1.0, 2.0};
    CHECK_THROWS_AS(fit_g0(few, few, DiffMethod::spline6), InvalidArgument);
    auto x = uniform(0.0, 1.0, 30);
    x[5] = x[4];
    CHECK_THROWS_AS(fit_g0(x, x, DiffMethod::spline6), InvalidArgument);
}

TEST_CASE("potential from g0 and g0''")
{
    const std::vector<double> g{0.0, 0.5, -0.25};
    const std::vector<double> g2{1.0, 3.0, 1.5};
    const auto q = recover_potential(g, g2);
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 2.0);
    CHECK(q[2] == 2.0);
    CHECK_THROWS_AS(recover_potential(std::vector<double>{-1.0}, std::vector<double>{1.0}), NumericalError);
    CHECK(recover_h(0.7) == 0.7);
}

TEST_CASE("integration over [0, pi]")
{
    const auto x = uniform(0.0, kPi, 41);
    // Simpson is exact on cubics
    const auto y = sample(x, [](double t) { return t * t * t - t; });
    CHECK(integrate_over_interval(x, y) == doctest::Approx(std::pow(kPi, 4) / 4.0 - kPi * kPi / 2.0).epsilon(1e-13));
    // odd interval count falls back to the trapezoid rule, exact on lines
    const auto x2 = uniform(0.0, kPi, 40);
    CHECK(integrate_over_interval(x2, sample(x2, [](double t) { return 2.0 * t + 1.0; })) ==
          doctest::Approx(kPi * kPi + kPi).epsilon(1e-13));
    const auto half = uniform(0.0, 1.0, 11);
    CHECK_THROWS_AS(integrate_over_interval(half, half), InvalidArgument);

    const auto ones = sample(x, [](double) { return 2.0; });
    CHECK(recover_H(5.0, 1.0, x, ones) == doctest::Approx(5.0 - 1.0 - kPi));
}

TEST_CASE("halves are joined at pi/2")
{
    const auto mesh = uniform(0.0, kPi, 5);
    const auto q = combine_halves([](double x) { return x; }, [](double x) { return 10.0 + x; }, 0.55 * kPi, mesh);
    CHECK(q[0] == 0.0);
    CHECK(q[1] == doctest::Approx(kPi / 4));
    CHECK(q[2] == doctest::Approx(0.5 * (kPi / 2 + 10.0 + kPi / 2)));
    CHECK(q[3] == doctest::Approx(10.0 + kPi / 4));
    CHECK(q[4] == doctest::Approx(10.0));
    CHECK_THROWS_AS(combine_halves([](double) { return 0.0; }, [](double) { return 0.0; }, 1.0, mesh),
                    InvalidArgument);
}

TEST_CASE("unshift restores lambda_0")
{
    Reconstruction r;
    r.q = {1.0, 2.0};
    r.omega = 0.5;
    const auto u = unshift(r, 3.0);
    CHECK(u.q[0] == 4.0);
    CHECK(u.q[1] == 5.0);
    CHECK(u.lambda0 == 3.0);
    CHECK(u.omega == doctest::Approx(0.5 + 1.5 * kPi));
}

TEST_CASE("method names")
{
    CHECK(diff_method_from_string("spline6") == DiffMethod::spline6);
    CHECK(diff_method_from_string("cheb") == DiffMethod::chebyshev_filtered);
    CHECK(diff_method_from_string(to_string(DiffMethod::chebyshev_filtered)) == DiffMethod::chebyshev_filtered);
    CHECK_THROWS_AS(diff_method_from_string("fd"), InvalidArgument);
}
