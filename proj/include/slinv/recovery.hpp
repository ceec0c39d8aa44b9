#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace slinv::recovery {

enum class DiffMethod { spline6, chebyshev_filtered };

std::string to_string(DiffMethod m);
/// Accepts "spline6" and "cheb" / "chebyshev_filtered"; throws InvalidArgument otherwise.
DiffMethod diff_method_from_string(const std::string& s);

/// A differentiable model of sampled data on [lower(), upper()].
class SmoothFit {
  public:
    virtual ~SmoothFit() = default;
    /// Value (order 0) or derivative of the given order at x.
    virtual double eval(double x, int order = 0) const = 0;
    virtual double lower() const = 0;
    virtual double upper() const = 0;
    /// Number of retained basis functions.
    virtual int terms() const = 0;
};

/// Chebyshev series on [lo, hi], truncated once two consecutive coefficients
/// drop below `rel_threshold` times the largest one.
/// On Chebyshev-Lobatto nodes the coefficients are exact interpolation
/// coefficients; on any other mesh a least-squares fit of degree
/// min(n - 1, 2 sqrt(n)) is used instead.
class ChebyshevFit final : public SmoothFit {
  public:
    ChebyshevFit(std::span<const double> x, std::span<const double> y, double rel_threshold = 1e-10);
    double eval(double x, int order = 0) const override;
    double lower() const override { return lo_; }
    double upper() const override { return hi_; }
    int terms() const override { return static_cast<int>(coeffs_.size()); }
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Full (untruncated) coefficient list, useful for inspecting the noise floor.
    const std::vector<double>& raw_coefficients() const { return raw_; }
    /// True when the series was cut within its first quarter. Otherwise the
    /// coefficients decay too slowly (rough data) and the filter removes little noise.
    bool resolved() const { return truncated_ && 4 * coeffs_.size() <= raw_.size(); }

  private:
    double lo_;
    double hi_;
    std::vector<double> raw_;
    std::vector<double> coeffs_;
    bool truncated_{false};
    std::vector<std::vector<double>> derivs_; // derivs_[k] = coefficients of the k-th derivative
};

/// Interpolating spline of order 6 (degree 5) with knots placed at averages of
/// consecutive sites, so the collocation matrix is well posed.
class QuinticSpline final : public SmoothFit {
  public:
    QuinticSpline(std::span<const double> x, std::span<const double> y);
    double eval(double x, int order = 0) const override;
    double lower() const override { return knots_.front(); }
    double upper() const override { return knots_.back(); }
    int terms() const override { return static_cast<int>(coeffs_.size()); }

  private:
    std::vector<double> knots_;
    std::vector<double> coeffs_;
};

/// Chebyshev-Lobatto nodes on [lo, hi] in ascending order (first = lo, last = hi).
std::vector<double> chebyshev_lobatto(double lo, double hi, int count);

struct Derivatives {
    std::vector<double> first;
    std::vector<double> second;
};

/// Fits g_0 samples with the chosen method. The Chebyshev method falls back to
/// the spline when its series is not resolved (see ChebyshevFit::resolved). Mesh must be strictly increasing
/// with at least 20 points (InvalidArgument otherwise).
std::unique_ptr<SmoothFit> fit_g0(std::span<const double> mesh, std::span<const double> g0, DiffMethod method,
                                  double cheb_threshold = 1e-10);

/// First and second derivatives of the fitted model at the mesh points.
Derivatives differentiate_g0(std::span<const double> mesh, std::span<const double> g0, DiffMethod method);

/// q = g0'' / (1 + g0) pointwise. Throws NumericalError where |1 + g0| < 1e-8
/// (phi(0, x) has no zeros for admissible data).
std::vector<double> recover_potential(std::span<const double> g0, std::span<const double> g0_second);

/// h = g0'(0).
inline double recover_h(double g0_prime_at_zero) { return g0_prime_at_zero; }

/// Integral of sampled q over a mesh spanning [0, pi]: composite Simpson on a
/// uniform mesh with an even number of intervals, trapezoid otherwise.
/// Throws InvalidArgument when the mesh does not cover [0, pi].
double integrate_over_interval(std::span<const double> mesh, std::span<const double> q);

/// H = omega - h - (1/2) integral_0^pi q.
double recover_H(double omega, double h, std::span<const double> mesh, std::span<const double> q);

/// q(x) = direct(x) for x < pi/2, flipped(pi - x) for x > pi/2, the mean of both
/// at x = pi/2. Both callables must be valid on [0, a] with a >= pi/2
/// (InvalidArgument otherwise).
std::vector<double> combine_halves(const std::function<double(double)>& direct,
                                   const std::function<double(double)>& flipped, double a,
                                   std::span<const double> out_mesh);

/// Recovered potential and boundary constants.
struct Reconstruction {
    std::vector<double> mesh;
    std::vector<double> q;
    double h{0.0};
    double H{0.0};
    double omega{0.0};
    double lambda0{0.0};
    DiffMethod method{DiffMethod::chebyshev_filtered};
    int N{0};
    int M{0};
};

/// Adds lambda0 back to q and records it.
Reconstruction unshift(Reconstruction r, double lambda0);

} // namespace slinv::recovery
