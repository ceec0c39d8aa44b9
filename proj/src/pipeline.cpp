#include "slinv/pipeline.hpp"

#include "slinv/charfun.hpp"
#include "slinv/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>

namespace slinv::pipeline {

namespace {

constexpr double kPi = std::numbers::pi;

struct HalfSolve {
    std::vector<double> mesh;
    std::vector<double> g0;
    std::unique_ptr<recovery::SmoothFit> fit;
    double cond_min{0.0};
    double cond_max{0.0};

    bool fallback{false};

    double q(double x) const { return fit->eval(x, 2) / (1.0 + fit->eval(x, 0)); }
};

HalfSolve solve_half_on(const spectral::SpectralDataset& data, double omega, double a, const SolveConfig& cfg,
                        recovery::DiffMethod method)
{
    HalfSolve hs;
    hs.mesh = solve_mesh(a, cfg.mesh_size, method);
    const std::span<const double> interior(hs.mesh.data() + 1, hs.mesh.size() - 1);
    glsystem::MeshOptions mo;
    mo.N = cfg.N;
    mo.execution = cfg.execution;
    const auto slices = glsystem::solve_on_mesh(interior, data, omega, mo);
    hs.g0.reserve(hs.mesh.size());
    hs.g0.push_back(0.0); // G(0, 0) = 0 gives g0(0) = 0
    hs.cond_min = slices.front().cond;
    hs.cond_max = slices.front().cond;
    for (const auto& s : slices) {
        hs.g0.push_back(s.g.front());
        hs.cond_min = std::min(hs.cond_min, s.cond);
        hs.cond_max = std::max(hs.cond_max, s.cond);
    }
    for (std::size_t i = 0; i < hs.mesh.size(); ++i) {
        if (std::abs(1.0 + hs.g0[i]) < 1e-8) {
            throw NumericalError("1 + g0 vanishes on the mesh; the data do not describe an admissible problem");
        }
    }
    if (method == recovery::DiffMethod::spline6) {
        hs.fit = std::make_unique<recovery::QuinticSpline>(hs.mesh, hs.g0);
    } else {
        hs.fit = std::make_unique<recovery::ChebyshevFit>(hs.mesh, hs.g0, cfg.cheb_threshold);
    }
    return hs;
}

// A Chebyshev series that does not resolve g0 means q is rough; the spline then
// needs a uniform mesh, since clustered nodes amplify the noise.
HalfSolve solve_half(const spectral::SpectralDataset& data, double omega, double a, const SolveConfig& cfg)
{
    HalfSolve hs = solve_half_on(data, omega, a, cfg, cfg.diff);
    if (cfg.diff == recovery::DiffMethod::chebyshev_filtered &&
        !static_cast<const recovery::ChebyshevFit&>(*hs.fit).resolved()) {
        HalfSolve retry = solve_half_on(data, omega, a, cfg, recovery::DiffMethod::spline6);
        retry.fallback = true;
        return retry;
    }
    return hs;
}

double integrate_callable(const std::function<double(double)>& f, int intervals)
{
    const int n = intervals + (intervals % 2);
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    std::vector<double> y(x.size());
    for (int i = 0; i <= n; ++i) {
        x[static_cast<std::size_t>(i)] = kPi * i / n;
    }
    x.back() = kPi;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = f(x[i]);
    }
    return recovery::integrate_over_interval(x, y);
}

// Steps shared by both problems once shifted, augmented data and omega are known:
// half-interval solves, optional flipping, combination, H from the mean of q.
Result reconstruct(const spectral::SpectralDataset& data, double omega, const charfun::BoundaryCoefficients& coeffs,
                   const SolveConfig& cfg, Diagnostics diag)
{
    const double a = cfg.flip ? cfg.flip_extent * kPi : kPi;
    HalfSolve direct = solve_half(data, omega, a, cfg);
    diag.main_cond_min = direct.cond_min;
    diag.main_cond_max = direct.cond_max;
    diag.diff_terms_direct = direct.fit->terms();
    diag.diff_fallback = direct.fallback;

    recovery::Reconstruction r;
    r.mesh = output_mesh(cfg.mesh_size);
    r.omega = omega;
    r.method = cfg.diff;
    r.N = cfg.N;
    r.M = data.last_index();
    r.h = recovery::recover_h(direct.fit->eval(0.0, 1));

    std::function<double(double)> q_full;
    std::optional<HalfSolve> reversed;
    if (cfg.flip) {
        spectral::SpectralDataset flipped = data;
        flipped.alpha = charfun::flip_norming_constants(data.rho, data.alpha, coeffs);
        reversed.emplace(solve_half(flipped, omega, a, cfg));
        diag.main_cond_min = std::min(diag.main_cond_min, reversed->cond_min);
        diag.main_cond_max = std::max(diag.main_cond_max, reversed->cond_max);
        diag.diff_terms_flipped = reversed->fit->terms();
        diag.diff_fallback = diag.diff_fallback || reversed->fallback;
        diag.h_reverse = reversed->fit->eval(0.0, 1);
        const HalfSolve* d = &direct;
        const HalfSolve* f = &*reversed;
        r.q = recovery::combine_halves([d](double x) { return d->q(x); }, [f](double x) { return f->q(x); }, a,
                                       r.mesh);
        q_full = [d, f](double x) {
            if (x < kPi / 2.0) {
                return d->q(x);
            }
            if (x > kPi / 2.0) {
                return f->q(kPi - x);
            }
            return 0.5 * (d->q(x) + f->q(x));
        };
    } else {
        const HalfSolve* d = &direct;
        q_full = [d](double x) { return d->q(x); };
        r.q.reserve(r.mesh.size());
        for (double x : r.mesh) {
            r.q.push_back(d->q(x));
        }
    }
    if (diag.diff_fallback) {
        r.method = recovery::DiffMethod::spline6;
    }
    const double mean = integrate_callable(q_full, cfg.integration_intervals);
    r.H = omega - r.h - 0.5 * mean;
    diag.H_integral = r.H;

    Result out;
    out.g0_mesh = direct.mesh;
    out.g0 = direct.g0;
    out.reconstruction = std::move(r);
    out.diagnostics = std::move(diag);
    return out;
}

spectral::FitOptions fit_options(const SolveConfig& cfg)
{
    spectral::FitOptions fo;
    fo.first_index = cfg.first_fit_index;
    fo.max_terms = cfg.max_fit_terms;
    fo.min_terms = cfg.min_fit_terms;
    fo.improvement = cfg.fit_improvement;
    return fo;
}

charfun::SystemOptions system_options(double threshold, int cap)
{
    charfun::SystemOptions so;
    so.cond_threshold = threshold;
    so.max_unknowns = cap;
    return so;
}

void throw_if_invalid(const std::vector<spectral::Violation>& v)
{
    if (v.empty()) {
        return;
    }
    std::string msg = "inadmissible spectral data: " + v.front().criterion + " (" + v.front().detail + ")";
    if (v.size() > 1) {
        msg += " and " + std::to_string(v.size() - 1) + " more";
    }
    throw ValidationError(msg);
}

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::string to_string(OmegaMethod m)
{
    return m == OmegaMethod::fit ? "fit" : "h0";
}

OmegaMethod omega_method_from_string(const std::string& s)
{
    if (s == "fit") {
        return OmegaMethod::fit;
    }
    if (s == "h0") {
        return OmegaMethod::h0;
    }
    throw InvalidArgument("unknown omega method '" + s + "'");
}

void SolveConfig::check() const
{
    if (N < 1) {
        throw InvalidArgument("config: N must be at least 1");
    }
    if (mesh_size < 20) {
        throw InvalidArgument("config: mesh size must be at least 20");
    }
    if (flip && !(flip_extent >= 0.5 && flip_extent <= 1.0)) {
        throw InvalidArgument("config: flip extent must lie in [0.5, 1]");
    }
    if (!(cond_threshold > 1.0) || !(h0_cond_threshold > 1.0)) {
        throw InvalidArgument("config: condition thresholds must exceed 1");
    }
    if (max_unknowns == 0 || h0_max_unknowns < 1 || max_fit_terms < 1 || min_fit_terms < 1 || !(fit_improvement > 1.0)) {
        throw InvalidArgument("config: fit and system limits must be positive");
    }
    if (!(cheb_threshold > 0.0) || integration_intervals < 2) {
        throw InvalidArgument("config: invalid Chebyshev threshold or integration grid");
    }
}

std::vector<double> solve_mesh(double a, int count, recovery::DiffMethod method)
{
    if (method == recovery::DiffMethod::chebyshev_filtered) {
        return recovery::chebyshev_lobatto(0.0, a, count);
    }
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        x[static_cast<std::size_t>(i)] = a * i / (count - 1);
    }
    x.back() = a;
    return x;
}

std::vector<double> output_mesh(int count)
{
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        x[static_cast<std::size_t>(i)] = kPi * i / (count - 1);
    }
    x.back() = kPi;
    return x;
}

Result solve_problem1(const spectral::SpectralDataset& data, const SolveConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    cfg.check();
    throw_if_invalid(spectral::validate(data));
    if (cfg.N >= std::max(cfg.M, data.last_index())) {
        throw InvalidArgument("config: N must be below the augmented data size");
    }

    const spectral::SpectralDataset shifted = spectral::shift_to_zero(data);
    Diagnostics diag;
    diag.lambda0 = shifted.shift;
    diag.exact_count = static_cast<int>(data.rho.size());

    const spectral::AsymptoticModel model = spectral::fit_model(shifted, fit_options(cfg));
    diag.omega_fit = model.omega();
    diag.fit_terms = model.K;
    diag.fit_residuals = model.residual_norms;

    try {
        const auto h0 = charfun::recover_hn(shifted.rho, system_options(cfg.h0_cond_threshold, cfg.h0_max_unknowns));
        diag.omega_h0 = h0.omega;
        diag.omega_h0_available = true;
    } catch (const Error&) {
        diag.omega_h0_available = false;
    }
    if (cfg.omega_method == OmegaMethod::h0 && !diag.omega_h0_available) {
        throw NumericalError("omega from -h_0 requested but the omega-free system could not be solved");
    }
    const double omega = cfg.omega_method == OmegaMethod::fit ? diag.omega_fit : diag.omega_h0;
    diag.omega_used = omega;

    const spectral::SpectralDataset full = spectral::augment_with_asymptotics(shifted, model, cfg.M);
    diag.total_count = static_cast<int>(full.rho.size());

    const int cap = cfg.max_unknowns > 0 ? cfg.max_unknowns : diag.exact_count;
    charfun::BoundaryCoefficients coeffs;
    coeffs.omega = omega;
    const auto hn = charfun::recover_hn(full.rho, system_options(cfg.cond_threshold, cap), omega);
    coeffs.h = hn.coefficients;
    diag.h_terms = static_cast<int>(hn.coefficients.size());
    diag.h_cond = hn.cond;

    Result res = reconstruct(full, omega, coeffs, cfg, std::move(diag));
    res.reconstruction = recovery::unshift(std::move(res.reconstruction), shifted.shift);
    res.diagnostics.seconds = elapsed(t0);
    return res;
}

spectral::SpectralDataset flip_dataset(const spectral::SpectralDataset& data, const SolveConfig& cfg)
{
    cfg.check();
    throw_if_invalid(spectral::validate(data));
    const spectral::SpectralDataset shifted = spectral::shift_to_zero(data);
    const spectral::AsymptoticModel model = spectral::fit_model(shifted, fit_options(cfg));
    double omega = model.omega();
    if (cfg.omega_method == OmegaMethod::h0) {
        omega = charfun::recover_hn(shifted.rho, system_options(cfg.h0_cond_threshold, cfg.h0_max_unknowns)).omega;
    }
    const spectral::SpectralDataset full = spectral::augment_with_asymptotics(shifted, model, cfg.M);
    const int cap = cfg.max_unknowns > 0 ? cfg.max_unknowns : static_cast<int>(data.rho.size());
    charfun::BoundaryCoefficients coeffs;
    coeffs.omega = omega;
    coeffs.h = charfun::recover_hn(full.rho, system_options(cfg.cond_threshold, cap), omega).coefficients;

    spectral::SpectralDataset out = data;
    const std::span<const double> rho(shifted.rho.data(), shifted.rho.size());
    out.alpha = charfun::flip_norming_constants(rho, shifted.alpha, coeffs);
    return out;
}

Result solve_problem2(const spectral::TwoSpectraDataset& data, const SolveConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    cfg.check();
    throw_if_invalid(spectral::validate(data));

    const spectral::TwoSpectraDataset shifted = spectral::shift_to_zero(data);
    Diagnostics diag;
    diag.lambda0 = shifted.shift;
    diag.exact_count = static_cast<int>(std::min(data.rho.size(), data.mu.size()));

    const auto fo = fit_options(cfg);
    spectral::AsymptoticModel model;
    const auto rf = spectral::fit_eigenvalue_asymptotics(shifted.rho, fo);
    model.omega_odd = rf.coefficients;
    model.K = rf.terms;
    model.residual_norms = rf.residual_norms;
    const auto mf = spectral::fit_mu_asymptotics(shifted.mu, fo);
    model.omega1_all = mf.coefficients;
    model.mu_residual_norms = mf.residual_norms;
    diag.omega_fit = model.omega();
    diag.omega1_fit = model.omega1();
    diag.fit_terms = model.K;
    diag.mu_fit_terms = mf.terms;
    diag.fit_residuals = model.residual_norms;
    diag.mu_fit_residuals = model.mu_residual_norms;

    try {
        const auto h0 = charfun::recover_hn(shifted.rho, system_options(cfg.h0_cond_threshold, cfg.h0_max_unknowns));
        diag.omega_h0 = h0.omega;
        diag.omega_h0_available = true;
    } catch (const Error&) {
        diag.omega_h0_available = false;
    }
    if (cfg.omega_method == OmegaMethod::h0 && !diag.omega_h0_available) {
        throw NumericalError("omega from -h_0 requested but the omega-free system could not be solved");
    }
    const double omega = cfg.omega_method == OmegaMethod::fit ? diag.omega_fit : diag.omega_h0;
    diag.omega_used = omega;
    const double H = omega - diag.omega1_fit;

    const int M = std::max({cfg.M, static_cast<int>(shifted.rho.size()) - 1, static_cast<int>(shifted.mu.size()) - 1});
    if (cfg.N >= M) {
        throw InvalidArgument("config: N must be below the augmented data size");
    }
    const spectral::TwoSpectraDataset full = spectral::augment_with_asymptotics(shifted, model, M);

    const int cap = cfg.max_unknowns > 0 ? cfg.max_unknowns : diag.exact_count;
    charfun::BoundaryCoefficients coeffs;
    coeffs.omega = omega;
    const auto hn = charfun::recover_hn(full.rho, system_options(cfg.cond_threshold, cap), omega);
    coeffs.h = hn.coefficients;
    diag.h_terms = static_cast<int>(hn.coefficients.size());
    diag.h_cond = hn.cond;
    const auto gn = charfun::recover_gn_pi(full.mu, system_options(cfg.cond_threshold, cap));
    coeffs.g_pi = gn.coefficients;
    diag.g_terms = static_cast<int>(gn.coefficients.size());
    diag.g_cond = gn.cond;
    diag.omega1_series = charfun::recover_omega1_from_gn(coeffs.g_pi);

    spectral::SpectralDataset eig;
    eig.rho = full.rho;
    eig.alpha = charfun::compute_norming_constants(full.rho, coeffs);
    eig.origin = full.rho_origin;
    eig.shift = full.shift;
    for (std::size_t n = 0; n < eig.alpha.size(); ++n) {
        if (!(eig.alpha[n] > 0.0)) {
            throw NumericalError("recovered norming constant " + std::to_string(n) + " is not positive");
        }
    }
    diag.total_count = static_cast<int>(eig.rho.size());

    Result res = reconstruct(eig, omega, coeffs, cfg, std::move(diag));
    res.reconstruction.H = H;
    res.reconstruction = recovery::unshift(std::move(res.reconstruction), shifted.shift);
    res.diagnostics.seconds = elapsed(t0);
    return res;
}

} // namespace slinv::pipeline
