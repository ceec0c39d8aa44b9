#include "slinv/linalg.hpp"

#include <limits>

namespace slinv::linalg {

LeastSquares pinv_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rel_cutoff)
{
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    LeastSquares out;
    out.singular_values.assign(s.data(), s.data() + s.size());
    if (s.size() == 0) {
        out.x = Eigen::VectorXd::Zero(A.cols());
        out.residual = b.norm();
        return out;
    }
    const double cut = rel_cutoff * s(0);
    Eigen::VectorXd utb = svd.matrixU().transpose() * b;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut) {
            utb(i) /= s(i);
            ++out.rank;
        } else {
            utb(i) = 0.0;
        }
    }
    out.x = svd.matrixV() * utb;
    const double smin = s(s.size() - 1);
    out.cond = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
    out.residual = (A * out.x - b).norm();
    return out;
}

std::vector<double> singular_values(const Eigen::MatrixXd& A)
{
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    const Eigen::VectorXd& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double condition_number(const Eigen::MatrixXd& A)
{
    const auto s = singular_values(A);
    if (s.empty()) {
        return 0.0;
    }
    return s.back() > 0.0 ? s.front() / s.back() : std::numeric_limits<double>::infinity();
}

} // namespace slinv::linalg
