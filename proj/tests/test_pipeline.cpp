#include "slinv/errors.hpp"
#include "slinv/forward.hpp"
#include "slinv/pipeline.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <cmath>

using namespace slinv;
using oracle::kPi;

namespace {

spectral::SpectralDataset free_data(int count)
{
    spectral::SpectralDataset d;
    for (int n = 0; n < count; ++n) {
        d.rho.push_back(n);
        d.alpha.push_back(n == 0 ? kPi : kPi / 2.0);
    }
    return d;
}

spectral::SpectralDataset oracle_data(const Potential& q, double h, double H, int count)
{
    const auto s = forward::solve_forward({q, h, H, forward::RightBoundary::robin, count});
    spectral::SpectralDataset d;
    d.rho = s.rho;
    d.alpha = s.alpha;
    return d;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double l1(const recovery::Reconstruction& r, const Potential& q)
{
    std::vector<double> e;
    for (std::size_t i = 0; i < r.mesh.size(); ++i) {
        e.push_back(std::abs(r.q[i] - q(r.mesh[i])));
    }
    return recovery::integrate_over_interval(r.mesh, e);
}

} // namespace

TEST_CASE("free data reconstruct the zero potential")
{
    for (int count : {5, 50, 200}) {
        for (bool flip : {true, false}) {
            pipeline::SolveConfig c;
            c.flip = flip;
            const auto r = pipeline::solve_problem1(free_data(count), c).reconstruction;
            INFO("count = " << count << ", flip = " << flip);
            CHECK(max_abs(r.q) <= 1e-9);
            CHECK(std::abs(r.h) <= 1e-9);
            CHECK(std::abs(r.H) <= 1e-9);
        }
    }
}

TEST_CASE("smooth potential from one spectrum")
{
    pipeline::SolveConfig c;
    const auto res = pipeline::solve_problem1(oracle_data(potentials::sin2x(), 1.0, 0.5, 101), c);
    const auto& r = res.reconstruction;
    CHECK(r.mesh.size() == 201);
    CHECK(l1(r, potentials::sin2x()) < 1e-5);
    CHECK(r.h == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.H == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.omega == doctest::Approx(1.5 + kPi).epsilon(1e-9));
    CHECK(res.diagnostics.h_reverse == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(res.diagnostics.fit_terms >= 2);
    CHECK_FALSE(res.diagnostics.diff_fallback);
    CHECK(res.g0_mesh.size() == res.g0.size());
}

TEST_CASE("a negative first eigenvalue is handled by the shift")
{
    const auto q = potentials::shifted(potentials::cos2x(), -3.0);
    pipeline::SolveConfig c;
    const auto r = pipeline::solve_problem1(oracle_data(q, 0.0, 0.0, 101), c).reconstruction;
    CHECK(r.lambda0 < 0.0);
    CHECK(l1(r, q) < 1e-5);
}

TEST_CASE("results do not depend on the execution mode and repeat exactly")
{
    const auto d = oracle_data(potentials::sin2x(), 1.0, 0.5, 51);
    pipeline::SolveConfig a;
    a.M = 1000;
    a.mesh_size = 61;
    pipeline::SolveConfig b = a;
    b.execution = glsystem::Execution::serial;
    const auto ra = pipeline::solve_problem1(d, a).reconstruction;
    const auto rb = pipeline::solve_problem1(d, b).reconstruction;
    const auto rc = pipeline::solve_problem1(d, a).reconstruction;
    CHECK(ra.q == rb.q);
    CHECK(ra.q == rc.q);
    CHECK(ra.h == rb.h);
    CHECK(ra.H == rb.H);
}

TEST_CASE("two spectra of the free Robin problem")
{
    spectral::TwoSpectraDataset d;
    d.rho = oracle::free_rho(1.0, 0.5, 101);
    d.mu = oracle::free_mu(1.0, 101);
    pipeline::SolveConfig c;
    const auto res = pipeline::solve_problem2(d, c);
    const auto& r = res.reconstruction;
    CHECK(max_abs(r.q) < 1e-5);
    CHECK(r.h == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.H == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.diagnostics.omega1_fit == doctest::Approx(1.0 - kPi * r.lambda0 / 2.0).epsilon(1e-8));
}

TEST_CASE("flipping a dataset twice returns it")
{
    const auto d = oracle_data(potentials::sin2x(), 1.0, 0.5, 101);
    pipeline::SolveConfig c;
    const auto once = pipeline::flip_dataset(d, c);
    const auto twice = pipeline::flip_dataset(once, c);
    for (int n = 0; n <= 50; ++n) {
        CHECK(twice.alpha[static_cast<std::size_t>(n)] ==
              doctest::Approx(d.alpha[static_cast<std::size_t>(n)]).epsilon(1e-8));
    }
    CHECK(once.rho == d.rho);
}

TEST_CASE("configuration and data checks")
{
    pipeline::SolveConfig c;
    c.N = -1;
    CHECK_THROWS_AS(c.check(), InvalidArgument);
    c = {};
    c.flip_extent = 0.3;
    CHECK_THROWS_AS(c.check(), InvalidArgument);
    c = {};
    c.mesh_size = 3;
    CHECK_THROWS_AS(c.check(), InvalidArgument);

    auto d = free_data(20);
    d.alpha[3] = 0.0;
    CHECK_THROWS_AS(pipeline::solve_problem1(d), ValidationError);
    spectral::TwoSpectraDataset t;
    t.rho = {0.0, 1.0, 2.0};
    t.mu = {1.5, 1.6, 2.5};
    CHECK_THROWS_AS(pipeline::solve_problem2(t), ValidationError);

    CHECK(pipeline::omega_method_from_string("h0") == pipeline::OmegaMethod::h0);
    CHECK(pipeline::to_string(pipeline::OmegaMethod::fit) == "fit");
    CHECK_THROWS_AS(pipeline::omega_method_from_string("guess"), InvalidArgument);
}

TEST_CASE("meshes")
{
    const auto u = pipeline::output_mesh(5);
    CHECK(u.front() == 0.0);
    CHECK(u.back() == kPi);
    const auto m = pipeline::solve_mesh(2.0, 11, recovery::DiffMethod::chebyshev_filtered);
    CHECK(m.front() == 0.0);
    CHECK(m.back() == doctest::Approx(2.0));
}
