#include "slinv/forward.hpp"

#include "slinv/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

namespace slinv::forward {

namespace {

using Real = long double;
using Complex = std::complex<long double>;

constexpr double kPi = std::numbers::pi;

template <class T>
struct Mat2 {
    T a, b, c, d; // [[a, b], [c, d]]
};

template <class T>
Mat2<T> operator*(const Mat2<T>& x, const Mat2<T>& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

template <class T>
Mat2<T> operator+(const Mat2<T>& x, const Mat2<T>& y)
{
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

template <class T>
Mat2<T> operator-(const Mat2<T>& x, const Mat2<T>& y)
{
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

template <class T, class S>
Mat2<T> operator*(S s, const Mat2<T>& x)
{
    const T t = static_cast<T>(s);
    return {t * x.a, t * x.b, t * x.c, t * x.d};
}

template <class T>
Mat2<T> commutator(const Mat2<T>& x, const Mat2<T>& y)
{
    return x * y - y * x;
}

// cosh(sqrt(D)) and sinh(sqrt(D))/sqrt(D): both entire in D.
void even_hyperbolics(Real D, Real& ch, Real& shc)
{
    if (std::abs(D) < 1e-6L) {
        ch = 1 + D / 2 + D * D / 24 + D * D * D / 720;
        shc = 1 + D / 6 + D * D / 120 + D * D * D / 5040;
        return;
    }
    if (D > 0) {
        const Real s = std::sqrt(D);
        ch = std::cosh(s);
        shc = std::sinh(s) / s;
    } else {
        const Real s = std::sqrt(-D);
        ch = std::cos(s);
        shc = std::sin(s) / s;
    }
}

void even_hyperbolics(Complex D, Complex& ch, Complex& shc)
{
    if (std::abs(D) < 1e-6L) {
        ch = Real(1) + D / Real(2) + D * D / Real(24) + D * D * D / Real(720);
        shc = Real(1) + D / Real(6) + D * D / Real(120) + D * D * D / Real(5040);
        return;
    }
    const Complex s = std::sqrt(D);
    ch = std::cosh(s);
    shc = std::sinh(s) / s;
}

// exp of a traceless 2x2 matrix: Omega^2 = D * I.
template <class T>
Mat2<T> exp_traceless(const Mat2<T>& w)
{
    const T D = w.a * w.a + w.b * w.c;
    T ch;
    T shc;
    even_hyperbolics(D, ch, shc);
    return {ch + shc * w.a, shc * w.b, shc * w.c, ch + shc * w.d};
}

// Sixth-order Magnus propagator over [x0, x0 + h] for u' = [[0, 1], [q - lambda, 0]] u,
// three Gauss-Legendre nodes (Blanes, Casas and Ros commutator form).
template <class T>
Mat2<T> magnus6(const Potential& p, double x0, double h, T lambda)
{
    static const Real c = std::sqrt(Real(15)) / 10;
    const double xm = x0 + 0.5 * h;
    const T r1 = static_cast<T>(p.q(xm - static_cast<double>(c) * h)) - lambda;
    const T r2 = static_cast<T>(p.q(xm)) - lambda;
    const T r3 = static_cast<T>(p.q(xm + static_cast<double>(c) * h)) - lambda;
    const Real hh = h;
    const T zero{};
    const T one{1};
    const Mat2<T> a1{zero, static_cast<T>(hh) * one, static_cast<T>(hh) * r2, zero};
    const Mat2<T> a2{zero, zero, static_cast<T>(std::sqrt(Real(15)) * hh / 3) * (r3 - r1), zero};
    const Mat2<T> a3{zero, zero, static_cast<T>(10 * hh / 3) * (r3 - T(2) * r2 + r1), zero};
    const Mat2<T> c1 = commutator(a1, a2);
    const Mat2<T> c2 = Real(-1) / Real(60) * commutator(a1, Real(2) * a3 + c1);
    const Mat2<T> omega = a1 + Real(1) / Real(12) * a3 +
                          Real(1) / Real(240) * commutator(Real(-20) * a1 - a3 + c1, a2 + c2);
    return exp_traceless(omega);
}

struct StepPlan {
    std::vector<double> nodes; // step endpoints, 0 .. x_end
};

double potential_scale(const Potential& p)
{
    double m = 0.0;
    for (int i = 0; i <= 512; ++i) {
        m = std::max(m, std::abs(p.q(kPi * i / 512.0)));
    }
    return m;
}

StepPlan plan_steps(const Potential& p, double lambda, double q_scale, std::span<const double> extra,
                    double x_end, const ForwardOptions& opt)
{
    std::vector<double> marks{0.0};
    for (double b : p.breakpoints) {
        if (b > 0.0 && b < x_end) {
            marks.push_back(b);
        }
    }
    for (double e : extra) {
        if (e > 0.0 && e < x_end) {
            marks.push_back(e);
        }
    }
    marks.push_back(x_end);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    const double h_eff = std::min(opt.max_step, opt.oscillation_step / std::sqrt(std::abs(lambda) + q_scale + 1.0));
    StepPlan plan;
    plan.nodes.push_back(0.0);
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double len = marks[i + 1] - marks[i];
        if (len <= 0.0) {
            continue;
        }
        const int n = std::max(1, static_cast<int>(std::ceil(len / h_eff)));
        for (int s = 1; s < n; ++s) {
            plan.nodes.push_back(marks[i] + len * s / n);
        }
        plan.nodes.push_back(marks[i + 1]);
    }
    return plan;
}

// Scaled angle of the line through (phi', k*phi), reduced to [0, pi).
Real line_angle(Real phi, Real dphi, Real k)
{
    Real y = k * phi;
    Real x = dphi;
    if (y < 0 || (y == 0 && x < 0)) {
        y = -y;
        x = -x;
    }
    Real a = std::atan2(y, x);
    if (a >= static_cast<Real>(kPi)) {
        a = 0;
    }
    return a;
}

struct AngleState {
    Real phi{1};
    Real dphi{0};
    std::int64_t turns{0}; // completed half-turns, i.e. zeros of phi passed
};

// Integrates the real solution along `plan`, tracking the Pruefer half-turn count.
// `on_node(i, state)` is called after every node (including node 0).
template <class F>
AngleState integrate_real(const Potential& p, double h, double lambda, const StepPlan& plan, F&& on_node)
{
    AngleState s;
    s.dphi = h;
    on_node(std::size_t{0}, s);
    const Real lam = lambda;
    for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i) {
        const double x0 = plan.nodes[i];
        const double step = plan.nodes[i + 1] - x0;
        const Mat2<Real> E = magnus6<Real>(p, x0, step, lam);
        const Real phi1 = E.a * s.phi + E.b * s.dphi;
        const Real dphi1 = E.c * s.phi + E.d * s.dphi;

        const Real gap = lam - static_cast<Real>(p.q(x0 + 0.5 * step));
        const Real k = std::max(std::sqrt(std::abs(gap)), Real(1));
        const Real predicted = gap > 0 ? static_cast<Real>(step) * std::sqrt(gap) : Real(0);
        const Real pi = static_cast<Real>(kPi);
        const Real psi0 = static_cast<Real>(s.turns) * pi + line_angle(s.phi, s.dphi, k);
        const Real f1 = line_angle(phi1, dphi1, k);
        const Real j = std::round((psi0 + predicted - f1) / pi);
        s.turns = static_cast<std::int64_t>(j);
        // Renormalise to keep the magnitude bounded; the angle is scale free.
        const Real r = std::max(std::abs(phi1), std::abs(dphi1));
        s.phi = phi1;
        s.dphi = dphi1;
        if (r > 1e100L || r < 1e-100L) {
            s.phi /= r;
            s.dphi /= r;
        }
        on_node(i + 1, s);
    }
    return s;
}

struct PiValues {
    Complex phi;
    Complex dphi;
};

PiValues integrate_complex(const Potential& p, double h, Complex lambda, const StepPlan& plan)
{
    Complex phi{1};
    Complex dphi{static_cast<Real>(h)};
    for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i) {
        const double x0 = plan.nodes[i];
        const Mat2<Complex> E = magnus6<Complex>(p, x0, plan.nodes[i + 1] - x0, lambda);
        const Complex phi1 = E.a * phi + E.b * dphi;
        const Complex dphi1 = E.c * phi + E.d * dphi;
        phi = phi1;
        dphi = dphi1;
    }
    return {phi, dphi};
}

struct Context {
    const ForwardProblem& problem;
    const ForwardOptions& options;
    double q_scale;
    double omega_estimate;
};

Real theta_at_pi(const Potential& p, double h, double lambda, double q_scale, const ForwardOptions& opt,
                 std::int64_t* turns_out = nullptr, Real* f_out = nullptr)
{
    const StepPlan plan = plan_steps(p, lambda, q_scale, {}, kPi, opt);
    const AngleState s = integrate_real(p, h, lambda, plan, [](std::size_t, const AngleState&) {});
    const Real f = line_angle(s.phi, s.dphi, Real(1));
    if (turns_out != nullptr) {
        *turns_out = s.turns;
    }
    if (f_out != nullptr) {
        *f_out = f;
    }
    return static_cast<Real>(s.turns) * static_cast<Real>(kPi) + f;
}

Real target_angle(const ForwardProblem& pr, int n)
{
    const Real pi = static_cast<Real>(kPi);
    if (pr.bc_right == RightBoundary::dirichlet) {
        return static_cast<Real>(n + 1) * pi;
    }
    // cot(theta) = phi'/phi = -H  =>  theta = pi/2 + atan(H) (mod pi)
    return pi / 2 + std::atan(static_cast<Real>(pr.H)) + static_cast<Real>(n) * pi;
}

double initial_guess(const Context& ctx, int n)
{
    const auto& pr = ctx.problem;
    if (pr.bc_right == RightBoundary::dirichlet) {
        const double base = n + 0.5;
        const double omega1 = ctx.omega_estimate - pr.H;
        const double rho = base + omega1 / (kPi * base);
        return rho * rho;
    }
    if (n == 0) {
        return ctx.omega_estimate * 2.0 / kPi - (pr.h + pr.H) / kPi;
    }
    const double rho = n + ctx.omega_estimate / (kPi * n);
    return rho * rho;
}

double locate(const Context& ctx, int n)
{
    const auto& pr = ctx.problem;
    const Real target = target_angle(pr, n);
    auto F = [&](double lambda) {
        return static_cast<double>(theta_at_pi(pr.potential, pr.h, lambda, ctx.q_scale, ctx.options) - target);
    };

    const double guess = initial_guess(ctx, n);
    double width = std::max(1.0, 0.5 * std::sqrt(std::abs(guess)) + 1.0);
    double lo = guess - width;
    double hi = guess + width;
    double f_lo = F(lo);
    double f_hi = F(hi);
    for (int it = 0; f_lo > 0.0; ++it) {
        if (it > 200) {
            throw NumericalError("forward: could not bracket eigenvalue " + std::to_string(n) + " from below");
        }
        hi = lo;
        f_hi = f_lo;
        width *= 2.0;
        lo -= width;
        f_lo = F(lo);
    }
    for (int it = 0; f_hi < 0.0; ++it) {
        if (it > 200) {
            throw NumericalError("forward: could not bracket eigenvalue " + std::to_string(n) + " from above");
        }
        lo = hi;
        f_lo = f_hi;
        width *= 2.0;
        hi += width;
        f_hi = F(hi);
    }
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    const double rel = ctx.options.lambda_tolerance;
    auto tol = [rel](double a, double b) { return std::abs(b - a) <= rel * std::max(1.0, std::abs(a)); };
    std::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::toms748_solve(F, lo, hi, f_lo, f_hi, tol, max_iter);
    if (max_iter >= 200) {
        throw NumericalError("forward: eigenvalue " + std::to_string(n) + " refinement did not converge");
    }
    return 0.5 * (r.first + r.second);
}

double norming_constant(const ForwardProblem& pr, double lambda, double q_scale, const ForwardOptions& opt)
{
    const StepPlan plan = plan_steps(pr.potential, lambda, q_scale, {}, kPi, opt);
    const Real delta = 1e-30L * std::max(Real(1), std::abs(static_cast<Real>(lambda)));
    const PiValues v = integrate_complex(pr.potential, pr.h, Complex(lambda, delta), plan);
    const Complex Phi = v.dphi + static_cast<Real>(pr.H) * v.phi;
    const Real dPhi = Phi.imag() / delta;
    return static_cast<double>(-v.phi.real() * dPhi);
}

} // namespace

double prufer_angle_at_pi(const Potential& potential, double h, double lambda, const ForwardOptions& options)
{
    return static_cast<double>(theta_at_pi(potential, h, lambda, potential_scale(potential), options));
}

int zero_count(const Potential& potential, double h, double lambda, const ForwardOptions& options)
{
    std::int64_t turns = 0;
    Real f = 0;
    theta_at_pi(potential, h, lambda, potential_scale(potential), options, &turns, &f);
    return static_cast<int>(f == 0 ? turns - 1 : turns);
}

std::vector<SolutionValue> evaluate_solution(const Potential& potential, double h, double lambda,
                                             std::span<const double> xs, const ForwardOptions& options)
{
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0.0 || xs[i] > kPi || (i > 0 && xs[i] < xs[i - 1])) {
            throw InvalidArgument("evaluate_solution: points must be sorted within [0, pi]");
        }
    }
    std::vector<SolutionValue> out(xs.size());
    if (xs.empty()) {
        return out;
    }
    const double x_end = std::max(xs.back(), 1e-300);
    const StepPlan plan = plan_steps(potential, lambda, potential_scale(potential), xs, x_end, options);
    // Integrate without renormalisation so values keep their true scale.
    Real phi = 1;
    Real dphi = h;
    std::size_t next = 0;
    auto emit = [&](double x) {
        while (next < xs.size() && xs[next] == x) {
            out[next] = {static_cast<double>(phi), static_cast<double>(dphi)};
            ++next;
        }
    };
    emit(0.0);
    for (std::size_t i = 0; i + 1 < plan.nodes.size(); ++i) {
        const double x0 = plan.nodes[i];
        const Mat2<Real> E = magnus6<Real>(potential, x0, plan.nodes[i + 1] - x0, static_cast<Real>(lambda));
        const Real phi1 = E.a * phi + E.b * dphi;
        const Real dphi1 = E.c * phi + E.d * dphi;
        phi = phi1;
        dphi = dphi1;
        emit(plan.nodes[i + 1]);
    }
    return out;
}

double eigenvalue(const ForwardProblem& problem, int n, const ForwardOptions& options)
{
    if (n < 0) {
        throw InvalidArgument("eigenvalue: negative index");
    }
    const double omega = problem.h + problem.H + 0.5 * potentials::integral(problem.potential);
    const Context ctx{problem, options, potential_scale(problem.potential), omega};
    return locate(ctx, n);
}

ForwardSpectrum solve_forward(const ForwardProblem& problem, const ForwardOptions& options)
{
    if (problem.count < 1) {
        throw InvalidArgument("solve_forward: count must be at least 1");
    }
    const double omega = problem.h + problem.H + 0.5 * potentials::integral(problem.potential);
    const Context ctx{problem, options, potential_scale(problem.potential), omega};
    const auto count = static_cast<std::size_t>(problem.count);
    ForwardSpectrum out;
    out.lambda.resize(count);
    out.rho.resize(count);
    const bool robin = problem.bc_right == RightBoundary::robin;
    if (robin) {
        out.alpha.resize(count);
    }

    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n < problem.count; ++n) {
        try {
            const double lambda = locate(ctx, n);
            out.lambda[static_cast<std::size_t>(n)] = lambda;
            out.rho[static_cast<std::size_t>(n)] = lambda >= 0.0 ? std::sqrt(lambda) : -std::sqrt(-lambda);
            if (robin) {
                out.alpha[static_cast<std::size_t>(n)] = norming_constant(problem, lambda, ctx.q_scale, options);
            }
        } catch (const std::exception& e) {
#pragma omp critical
            failure = e.what();
        }
    }
    if (!failure.empty()) {
        throw NumericalError(failure);
    }
    return out;
}

} // namespace slinv::forward
