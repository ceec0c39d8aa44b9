#include "slinv/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace slinv::linalg;

TEST_CASE("overdetermined consistent system is solved exactly")
{
    Eigen::MatrixXd A(5, 2);
    A << 1, 0, 0, 1, 1, 1, 1, -1, 2, 1;
    const Eigen::Vector2d x(0.5, -2.0);
    const Eigen::VectorXd b = A * x;
    const auto ls = pinv_solve(A, b);
    CHECK(ls.rank == 2);
    CHECK(ls.x(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ls.x(1) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(ls.residual < 1e-13);
}

TEST_CASE("least squares matches the normal equations")
{
    Eigen::MatrixXd A(4, 2);
    A << 1, 1, 1, 2, 1, 3, 1, 4;
    Eigen::VectorXd b(4);
    b << 6, 5, 7, 10;
    const auto ls = pinv_solve(A, b);
    const Eigen::VectorXd ref = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    CHECK(ls.x(0) == doctest::Approx(ref(0)).epsilon(1e-13));
    CHECK(ls.x(1) == doctest::Approx(ref(1)).epsilon(1e-13));
}

TEST_CASE("rank deficiency is cut off and gives the minimum-norm answer")
{
    Eigen::MatrixXd A(3, 2);
    A << 1, 1, 2, 2, 3, 3;
    Eigen::VectorXd b(3);
    b << 2, 4, 6;
    const auto ls = pinv_solve(A, b);
    CHECK(ls.rank == 1);
    CHECK(ls.x(0) == doctest::Approx(1.0));
    CHECK(ls.x(1) == doctest::Approx(1.0));
    CHECK(condition_number(A) > 1e15);
}

TEST_CASE("condition number and singular values of a diagonal matrix")
{
    const Eigen::MatrixXd A = Eigen::Vector3d(4.0, -0.5, 2.0).asDiagonal();
    const auto sv = singular_values(A);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(4.0));
    CHECK(sv[1] == doctest::Approx(2.0));
    CHECK(sv[2] == doctest::Approx(0.5));
    CHECK(condition_number(A) == doctest::Approx(8.0));
}
