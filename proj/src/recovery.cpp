#include "slinv/recovery.hpp"

#include "slinv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slinv::recovery {

namespace {

constexpr double kCoefficientFloor = 1e-13;

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 6; // spline order (degree + 1)
constexpr int kMaxDerivative = 3;

void check_mesh(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw InvalidArgument("mesh and values differ in length");
    }
    if (x.size() < 20) {
        throw InvalidArgument("differentiation needs at least 20 mesh points");
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            throw InvalidArgument("mesh must be strictly increasing");
        }
    }
}

bool is_lobatto(std::span<const double> x)
{
    const auto ref = chebyshev_lobatto(x.front(), x.back(), static_cast<int>(x.size()));
    const double tol = 1e-10 * (x.back() - x.front());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(ref[i] - x[i]) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<double> differentiate_series(const std::vector<double>& c, double scale)
{
    const auto p = static_cast<int>(c.size()) - 1;
    if (p <= 0) {
        return {0.0};
    }
    std::vector<double> d(static_cast<std::size_t>(p) + 1, 0.0);
    for (int k = p; k >= 1; --k) {
        const double next = (k + 1 <= p) ? d[static_cast<std::size_t>(k + 1)] : 0.0;
        d[static_cast<std::size_t>(k - 1)] = next + 2.0 * k * c[static_cast<std::size_t>(k)];
    }
    d[0] *= 0.5;
    d.pop_back();
    for (double& v : d) {
        v *= scale;
    }
    return d;
}

double clenshaw(const std::vector<double>& c, double t)
{
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b0 = 2.0 * t * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + c[0];
}

// Index i with knots[i] <= x < knots[i+1], clamped to the last non-empty span.
std::size_t find_span(const std::vector<double>& knots, std::size_t n_coeffs, double x)
{
    const std::size_t lo = kOrder - 1;
    const std::size_t hi = n_coeffs - 1;
    if (x >= knots[hi + 1]) {
        return hi;
    }
    if (x <= knots[lo]) {
        return lo;
    }
    const auto it = std::upper_bound(knots.begin() + static_cast<long>(lo), knots.begin() + static_cast<long>(hi) + 1, x);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
}

// Non-zero B-spline values and derivatives at x on span i (Piegl & Tiller A2.3).
// ders[k][j] is the k-th derivative of basis function i - p + j.
void basis_derivatives(const std::vector<double>& U, std::size_t i, double x, int nd,
                       double ders[kMaxDerivative + 1][kOrder])
{
    constexpr int p = kOrder - 1;
    double ndu[kOrder][kOrder];
    double left[kOrder];
    double right[kOrder];
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - U[i + 1 - static_cast<std::size_t>(j)];
        right[j] = U[i + static_cast<std::size_t>(j)] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int j = 0; j <= p; ++j) {
        ders[0][j] = ndu[j][p];
    }
    double a[2][kOrder];
    for (int r = 0; r <= p; ++r) {
        int s1 = 0;
        int s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= nd; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double f = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j) {
            ders[k][j] *= f;
        }
        f *= (p - k);
    }
}

} // namespace

std::string to_string(DiffMethod m)
{
    return m == DiffMethod::spline6 ? "spline6" : "cheb";
}

DiffMethod diff_method_from_string(const std::string& s)
{
    if (s == "spline6") {
        return DiffMethod::spline6;
    }
    if (s == "cheb" || s == "chebyshev_filtered") {
        return DiffMethod::chebyshev_filtered;
    }
    throw InvalidArgument("unknown differentiation method '" + s + "'");
}

std::vector<double> chebyshev_lobatto(double lo, double hi, int count)
{
    if (count < 2) {
        throw InvalidArgument("chebyshev_lobatto: need at least two nodes");
    }
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double t = -std::cos(kPi * j / (count - 1));
        x[static_cast<std::size_t>(j)] = lo + 0.5 * (hi - lo) * (t + 1.0);
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

ChebyshevFit::ChebyshevFit(std::span<const double> x, std::span<const double> y, double rel_threshold)
    : lo_(x.front()), hi_(x.back())
{
    check_mesh(x, y);
    const auto n = static_cast<int>(x.size());
    if (is_lobatto(x)) {
        // Node j sits at theta_j = pi - j pi / (n - 1).
        raw_.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
                const double theta = kPi - kPi * j / (n - 1);
                s += w * y[static_cast<std::size_t>(j)] * std::cos(k * theta);
            }
            raw_[static_cast<std::size_t>(k)] = 2.0 * s / (n - 1);
        }
        raw_.front() *= 0.5;
        raw_.back() *= 0.5;
    } else {
        const int degree = std::min(n - 1, static_cast<int>(2.0 * std::sqrt(static_cast<double>(n))));
        Eigen::MatrixXd A(n, degree + 1);
        Eigen::VectorXd b(n);
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * (x[static_cast<std::size_t>(j)] - lo_) / (hi_ - lo_) - 1.0;
            double tkm1 = 1.0;
            double tk = t;
            A(j, 0) = 1.0;
            if (degree >= 1) {
                A(j, 1) = t;
            }
            for (int k = 2; k <= degree; ++k) {
                const double next = 2.0 * t * tk - tkm1;
                tkm1 = tk;
                tk = next;
                A(j, k) = tk;
            }
            b(j) = y[static_cast<std::size_t>(j)];
        }
        const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
        raw_.assign(c.data(), c.data() + c.size());
    }

    double biggest = 0.0;
    for (double c : raw_) {
        biggest = std::max(biggest, std::abs(c));
    }
    std::size_t keep = raw_.size();
    // g0 is O(1) at most, so coefficients below the floor are rounding noise
    const double cut = std::max(rel_threshold * biggest, kCoefficientFloor);
    for (std::size_t k = 1; k + 1 < raw_.size(); ++k) {
        if (std::abs(raw_[k]) < cut && std::abs(raw_[k + 1]) < cut) {
            keep = k;
            truncated_ = true;
            break;
        }
    }
    if (biggest == 0.0) {
        keep = 1;
        truncated_ = true;
    }
    coeffs_.assign(raw_.begin(), raw_.begin() + static_cast<long>(keep));
    derivs_.push_back(coeffs_);
    const double scale = 2.0 / (hi_ - lo_);
    for (int k = 1; k <= kMaxDerivative; ++k) {
        derivs_.push_back(differentiate_series(derivs_.back(), scale));
    }
}

double ChebyshevFit::eval(double x, int order) const
{
    if (order < 0 || order > kMaxDerivative) {
        throw InvalidArgument("ChebyshevFit: derivative order out of range");
    }
    const double t = std::clamp(2.0 * (x - lo_) / (hi_ - lo_) - 1.0, -1.0, 1.0);
    return clenshaw(derivs_[static_cast<std::size_t>(order)], t);
}

QuinticSpline::QuinticSpline(std::span<const double> x, std::span<const double> y)
{
    check_mesh(x, y);
    const std::size_t n = x.size();
    knots_.assign(kOrder, x.front());
    for (std::size_t i = 0; i + kOrder < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 1; j < kOrder; ++j) {
            s += x[i + j];
        }
        knots_.push_back(s / (kOrder - 1));
    }
    knots_.insert(knots_.end(), kOrder, x.back());

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    double ders[kMaxDerivative + 1][kOrder];
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t span = find_span(knots_, n, x[r]);
        basis_derivatives(knots_, span, x[r], 0, ders);
        for (int j = 0; j < kOrder; ++j) {
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(span - kOrder + 1 + static_cast<std::size_t>(j))) =
                ders[0][j];
        }
        b(static_cast<Eigen::Index>(r)) = y[r];
    }
    const Eigen::VectorXd c = A.partialPivLu().solve(b);
    coeffs_.assign(c.data(), c.data() + c.size());
}

double QuinticSpline::eval(double x, int order) const
{
    if (order < 0 || order > kMaxDerivative) {
        throw InvalidArgument("QuinticSpline: derivative order out of range");
    }
    const double xc = std::clamp(x, knots_.front(), knots_.back());
    const std::size_t span = find_span(knots_, coeffs_.size(), xc);
    double ders[kMaxDerivative + 1][kOrder];
    basis_derivatives(knots_, span, xc, order, ders);
    double s = 0.0;
    for (int j = 0; j < kOrder; ++j) {
        s += ders[order][j] * coeffs_[span - kOrder + 1 + static_cast<std::size_t>(j)];
    }
    return s;
}

std::unique_ptr<SmoothFit> fit_g0(std::span<const double> mesh, std::span<const double> g0, DiffMethod method,
                                  double cheb_threshold)
{
    if (method == DiffMethod::spline6) {
        return std::make_unique<QuinticSpline>(mesh, g0);
    }
    auto cheb = std::make_unique<ChebyshevFit>(mesh, g0, cheb_threshold);
    if (!cheb->resolved()) {
        return std::make_unique<QuinticSpline>(mesh, g0);
    }
    return cheb;
}

Derivatives differentiate_g0(std::span<const double> mesh, std::span<const double> g0, DiffMethod method)
{
    const auto fit = fit_g0(mesh, g0, method);
    Derivatives d;
    d.first.reserve(mesh.size());
    d.second.reserve(mesh.size());
    for (double x : mesh) {
        d.first.push_back(fit->eval(x, 1));
        d.second.push_back(fit->eval(x, 2));
    }
    return d;
}

std::vector<double> recover_potential(std::span<const double> g0, std::span<const double> g0_second)
{
    if (g0.size() != g0_second.size()) {
        throw InvalidArgument("recover_potential: size mismatch");
    }
    std::vector<double> q(g0.size());
    for (std::size_t i = 0; i < g0.size(); ++i) {
        const double phi = 1.0 + g0[i];
        if (std::abs(phi) < 1e-8) {
            throw NumericalError("recover_potential: 1 + g0 vanishes; the data do not describe an admissible problem");
        }
        q[i] = g0_second[i] / phi;
    }
    return q;
}

double integrate_over_interval(std::span<const double> mesh, std::span<const double> q)
{
    if (mesh.size() != q.size() || mesh.size() < 2) {
        throw InvalidArgument("integrate_over_interval: need matching mesh and values");
    }
    if (std::abs(mesh.front()) > 1e-9 || std::abs(mesh.back() - kPi) > 1e-9) {
        throw InvalidArgument("integrate_over_interval: mesh must span [0, pi]");
    }
    const std::size_t intervals = mesh.size() - 1;
    const double h = (mesh.back() - mesh.front()) / static_cast<double>(intervals);
    bool uniform = intervals % 2 == 0;
    for (std::size_t i = 1; uniform && i < mesh.size(); ++i) {
        uniform = std::abs(mesh[i] - mesh[i - 1] - h) < 1e-9 * h;
    }
    double s = 0.0;
    if (uniform) {
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            s += w * q[i];
        }
        return s * h / 3.0;
    }
    for (std::size_t i = 1; i < mesh.size(); ++i) {
        s += 0.5 * (q[i] + q[i - 1]) * (mesh[i] - mesh[i - 1]);
    }
    return s;
}

double recover_H(double omega, double h, std::span<const double> mesh, std::span<const double> q)
{
    return omega - h - 0.5 * integrate_over_interval(mesh, q);
}

std::vector<double> combine_halves(const std::function<double(double)>& direct,
                                   const std::function<double(double)>& flipped, double a,
                                   std::span<const double> out_mesh)
{
    if (a < kPi / 2.0) {
        throw InvalidArgument("combine_halves: both halves must reach pi/2");
    }
    std::vector<double> q;
    q.reserve(out_mesh.size());
    const double mid = kPi / 2.0;
    for (double x : out_mesh) {
        if (x < -1e-12 || x > kPi + 1e-12) {
            throw InvalidArgument("combine_halves: output point outside [0, pi]");
        }
        if (std::abs(x - mid) <= 1e-12) {
            q.push_back(0.5 * (direct(mid) + flipped(mid)));
        } else if (x < mid) {
            q.push_back(direct(x));
        } else {
            q.push_back(flipped(kPi - x));
        }
    }
    return q;
}

Reconstruction unshift(Reconstruction r, double lambda0)
{
    for (double& v : r.q) {
        v += lambda0;
    }
    r.omega += kPi * lambda0 / 2.0;
    r.lambda0 += lambda0;
    return r;
}

} // namespace slinv::recovery
