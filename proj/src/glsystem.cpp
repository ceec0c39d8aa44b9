#include "slinv/glsystem.hpp"

#include "slinv/errors.hpp"
#include "slinv/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace slinv::glsystem {

namespace {

constexpr double kPi = std::numbers::pi;

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Neumaier's compensated summation.
struct Accumulator {
    double sum{0.0};
    double carry{0.0};

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

void check_inputs(double x, const spectral::SpectralDataset& data, int N)
{
    if (!(x > 0.0)) {
        throw InvalidArgument("glsystem: x must be positive");
    }
    if (N < 0) {
        throw InvalidArgument("glsystem: negative truncation order");
    }
    if (data.rho.size() != data.alpha.size() || data.rho.empty()) {
        throw InvalidArgument("glsystem: rho and alpha must be non-empty and of equal length");
    }
    if (N >= data.last_index()) {
        throw InvalidArgument("glsystem: truncation order " + std::to_string(N) +
                              " must be below the data size " + std::to_string(data.last_index()));
    }
    if (data.rho.front() != 0.0) {
        throw InvalidArgument("glsystem: data must be shifted so that rho_0 = 0");
    }
}

// (a)_3 = a (a+1) (a+2)
double pochhammer3(double a) { return a * (a + 1.0) * (a + 2.0); }

} // namespace

MainSystem assemble_modified(double x, const spectral::SpectralDataset& data, double omega, int N)
{
    check_inputs(x, data, N);
    const int size = N + 1;
    const auto orders = static_cast<std::size_t>(2 * N + 2);
    std::vector<double> jr(orders);
    std::vector<double> jn(orders);
    // upper triangle of the n-series, row-major, plus the right-hand side series
    std::vector<Accumulator> s(static_cast<std::size_t>(size * size));
    std::vector<Accumulator> d(static_cast<std::size_t>(size));
    const double w_scale = 2.0 * omega / (kPi * kPi);

    const int M = data.last_index();
    for (int n = 1; n <= M; ++n) {
        const double rho = data.rho[static_cast<std::size_t>(n)];
        const double inv_alpha = 1.0 / data.alpha[static_cast<std::size_t>(n)];
        const double nx = n * x;
        specfun::spherical_bessel_fill(rho * x, jr);
        specfun::spherical_bessel_fill(nx, jn);
        const double cr = std::cos(rho * x);
        const double cn = std::cos(nx);
        const double sn = std::sin(nx);
        const double wn = w_scale / n;
        const double inv_n = 1.0 / n;
        for (int k = 0; k < size; ++k) {
            const double rk = jr[2 * k];
            const double nk = jn[2 * k];
            const double nk1 = jn[2 * k + 1];
            for (int m = k; m < size; ++m) {
                const double nm = jn[2 * m];
                const double term = rk * jr[2 * m] * inv_alpha - 2.0 / kPi * nk * nm +
                                    wn * (x * nk * jn[2 * m + 1] + x * nk1 * nm - 2.0 * (k + m) * nk * nm * inv_n);
                s[static_cast<std::size_t>(k * size + m)].add(term);
            }
            const double dterm = cr * rk * inv_alpha - 2.0 / kPi * cn * nk +
                                 wn * (x * sn * nk + x * cn * nk1 - 2.0 * k * inv_n * cn * nk);
            d[static_cast<std::size_t>(k)].add(dterm);
        }
    }

    MainSystem sys;
    sys.x = x;
    sys.N = N;
    sys.variant = Variant::modified;
    sys.matrix.resize(size, size);
    sys.rhs.resize(size);
    const double head = -omega * x / (8.0 * kPi);
    const double shift0 = 1.0 / data.alpha.front() - 1.0 / kPi;
    const double wx2 = omega * x * x / (kPi * kPi);
    for (int k = 0; k < size; ++k) {
        for (int m = k; m < size; ++m) {
            double c = parity(k + m) * s[static_cast<std::size_t>(k * size + m)].value();
            if (m == k) {
                c += head * (-2.0 / pochhammer3(2.0 * k - 0.5));
            } else if (m == k + 1) {
                c += head / pochhammer3(2.0 * k + 0.5);
            }
            if (k == 0 && m == 0) {
                c += shift0 + 2.0 * wx2 / 3.0;
            } else if (k == 0 && m == 1) {
                c += 2.0 * wx2 / 15.0;
            }
            const double a = x * std::sqrt((4.0 * k + 1.0) * (4.0 * m + 1.0)) * c;
            sys.matrix(k, m) = a;
            sys.matrix(m, k) = a;
        }
        double dk = -parity(k) * d[static_cast<std::size_t>(k)].value();
        if (k == 0) {
            dk -= shift0 + 4.0 * wx2 / 3.0 - omega * x / kPi;
        } else if (k == 1) {
            dk -= 2.0 * wx2 / 15.0;
        }
        sys.rhs(k) = std::sqrt(4.0 * k + 1.0) * std::sqrt(x) * dk;
    }
    sys.matrix += Eigen::MatrixXd::Identity(size, size);
    return sys;
}

MainSystem assemble_integrated(double x, const spectral::SpectralDataset& data, int N)
{
    check_inputs(x, data, N);
    const int size = N + 1;
    const auto orders = static_cast<std::size_t>(2 * N + 2);
    std::vector<double> jr(orders);
    std::vector<double> jn(orders);
    std::vector<Accumulator> s(static_cast<std::size_t>(size * size));
    std::vector<Accumulator> d(static_cast<std::size_t>(size));

    const int M = data.last_index();
    for (int n = 1; n <= M; ++n) {
        const double rho = data.rho[static_cast<std::size_t>(n)];
        const double wr = 1.0 / (data.alpha[static_cast<std::size_t>(n)] * rho);
        const double wn = 2.0 / (kPi * n);
        const double nx = n * x;
        specfun::spherical_bessel_fill(rho * x, jr);
        specfun::spherical_bessel_fill(nx, jn);
        const double cr = std::cos(rho * x);
        const double cn = std::cos(nx);
        for (int k = 0; k < size; ++k) {
            const double rk1 = jr[2 * k + 1];
            const double nk1 = jn[2 * k + 1];
            for (int m = 0; m < size; ++m) {
                s[static_cast<std::size_t>(k * size + m)].add(jr[2 * m] * rk1 * wr - jn[2 * m] * nk1 * wn);
            }
            d[static_cast<std::size_t>(k)].add(cr * rk1 * wr - cn * nk1 * wn);
        }
    }

    MainSystem sys;
    sys.x = x;
    sys.N = N;
    sys.variant = Variant::integrated;
    sys.matrix.resize(size, size);
    sys.rhs.resize(size);
    const double shift0 = (1.0 / data.alpha.front() - 1.0 / kPi) * x / 3.0;
    for (int k = 0; k < size; ++k) {
        for (int m = 0; m < size; ++m) {
            double c = parity(k + m) * s[static_cast<std::size_t>(k * size + m)].value();
            if (k == 0 && m == 0) {
                c += shift0;
            }
            if (m == k) {
                c += 1.0 / ((4.0 * k + 1.0) * (4.0 * k + 3.0));
            } else if (m == k + 1) {
                c -= 1.0 / ((4.0 * k + 3.0) * (4.0 * k + 5.0));
            }
            sys.matrix(k, m) = c;
        }
        sys.rhs(k) = -shift0 * (k == 0 ? 1.0 : 0.0) - parity(k) * d[static_cast<std::size_t>(k)].value();
    }
    return sys;
}

SolutionSlice solve_slice(const MainSystem& system)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::Index size = sv.size();
    if (size == 0 || !(sv(size - 1) > 1e-14 * sv(0)) || !std::isfinite(sv(0))) {
        throw NumericalError("solve_slice: numerically singular system at x = " + std::to_string(system.x));
    }
    const Eigen::VectorXd sol = system.matrix.partialPivLu().solve(system.rhs);

    SolutionSlice out;
    out.x = system.x;
    out.cond = sv(0) / sv(size - 1);
    out.singular_values.assign(sv.data(), sv.data() + size);
    out.g.resize(static_cast<std::size_t>(size));
    out.xi.resize(static_cast<std::size_t>(size));
    const double sx = std::sqrt(system.x);
    for (Eigen::Index k = 0; k < size; ++k) {
        const double scale = std::sqrt(4.0 * k + 1.0) * sx;
        if (system.variant == Variant::modified) {
            out.xi[static_cast<std::size_t>(k)] = sol(k);
            out.g[static_cast<std::size_t>(k)] = sol(k) * scale;
        } else {
            out.g[static_cast<std::size_t>(k)] = sol(k);
            out.xi[static_cast<std::size_t>(k)] = sol(k) / scale;
        }
    }
    return out;
}

std::vector<double> evaluate_kernel_diagonal(std::span<const SolutionSlice> slices)
{
    std::vector<double> out;
    out.reserve(slices.size());
    for (const auto& s : slices) {
        double sum = 0.0;
        for (double g : s.g) {
            sum += g;
        }
        out.push_back(sum / s.x);
    }
    return out;
}

namespace {

SolutionSlice solve_point(double x, const spectral::SpectralDataset& data, double omega, const MeshOptions& opt)
{
    const MainSystem sys = opt.variant == Variant::modified ? assemble_modified(x, data, omega, opt.N)
                                                            : assemble_integrated(x, data, opt.N);
    return solve_slice(sys);
}

std::vector<SolutionSlice> mesh_serial(std::span<const double> mesh, const spectral::SpectralDataset& data,
                                       double omega, const MeshOptions& opt)
{
    std::vector<SolutionSlice> out;
    out.reserve(mesh.size());
    for (double x : mesh) {
        out.push_back(solve_point(x, data, omega, opt));
    }
    return out;
}

std::vector<SolutionSlice> mesh_parallel(std::span<const double> mesh, const spectral::SpectralDataset& data,
                                         double omega, const MeshOptions& opt)
{
    std::vector<SolutionSlice> out(mesh.size());
    std::string failure;
    const auto count = static_cast<long>(mesh.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = solve_point(mesh[static_cast<std::size_t>(i)], data, omega, opt);
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

} // namespace

std::vector<SolutionSlice> solve_on_mesh(std::span<const double> mesh, const spectral::SpectralDataset& data,
                                         double omega, const MeshOptions& options)
{
    for (double x : mesh) {
        if (!(x > 0.0)) {
            throw InvalidArgument("solve_on_mesh: mesh points must be positive");
        }
    }
    return options.execution == Execution::serial ? mesh_serial(mesh, data, omega, options)
                                                  : mesh_parallel(mesh, data, omega, options);
}

} // namespace slinv::glsystem
