#pragma once

#include <Eigen/Dense>

#include <vector>

namespace slinv::linalg {

struct LeastSquares {
    Eigen::VectorXd x;
    std::vector<double> singular_values; // descending
    double cond{0.0};                    // largest / smallest singular value
    double residual{0.0};                // ||A x - b||_2
    int rank{0};
};

/// Minimum-norm least-squares solution through the SVD pseudoinverse.
/// Singular values below rel_cutoff * s_max are treated as zero.
LeastSquares pinv_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rel_cutoff = 1e-13);

/// 2-norm condition number; infinity for rank-deficient input.
double condition_number(const Eigen::MatrixXd& A);

/// Singular values, descending.
std::vector<double> singular_values(const Eigen::MatrixXd& A);

} // namespace slinv::linalg
