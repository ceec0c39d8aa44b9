#include "slinv/potential.hpp"

#include "slinv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace slinv::potentials {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sawtooth_breaks()
{
    // sin(10t/(4-t)) changes sign where 10t/(4-t) = k*pi.
    std::vector<double> t;
    for (int k = 1;; ++k) {
        const double tk = 4.0 * k * kPi / (10.0 + k * kPi);
        if (tk >= kPi) {
            break;
        }
        t.push_back(tk);
    }
    return t;
}

} // namespace

Potential zero()
{
    return {"zero", [](double) { return 0.0; }, {}};
}

Potential constant(double c)
{
    return {"const", [c](double) { return c; }, {}};
}

Potential sin2x()
{
    return {"sin2x", [](double x) { return 2.0 + std::sin(2.0 * x); }, {}};
}

Potential cos2x()
{
    return {"cos2x", [](double x) { return std::cos(2.0 * x); }, {}};
}

Potential abs3()
{
    return {"abs3", [](double x) { return std::abs(3.0 - std::abs(x * x - 3.0)); },
            {std::sqrt(3.0), std::sqrt(6.0)}};
}

Potential sawtooth()
{
    auto breaks = sawtooth_breaks();
    auto q = [breaks](double x) {
        double acc = 0.0;
        double left = 0.0;
        double sign = 1.0;
        for (double b : breaks) {
            if (x <= b) {
                return acc + sign * (x - left);
            }
            acc += sign * (b - left);
            left = b;
            sign = -sign;
        }
        return acc + sign * (x - left);
    };
    return {"sawtooth", q, breaks};
}

Potential piecewise5()
{
    auto q = [](double x) {
        if (x <= kPi / 8.0) {
            return 0.0;
        }
        if (x <= kPi / 4.0) {
            return -12.0 * x / kPi + 1.5;
        }
        if (x < 3.0 * kPi / 8.0) {
            return 12.0 * x / kPi - 4.5;
        }
        if (x < 3.0 * kPi / 5.0) {
            return 0.0;
        }
        if (x < 4.0 * kPi / 5.0) {
            return 4.0;
        }
        return 2.0;
    };
    return {"piecewise5", q, {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, 3.0 * kPi / 5.0, 4.0 * kPi / 5.0}};
}

Potential tabulated(std::vector<double> xs, std::vector<double> qs, std::string name)
{
    if (xs.size() != qs.size() || xs.size() < 2) {
        throw InvalidArgument("tabulated potential: need at least two (x, q) pairs of equal length");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw InvalidArgument("tabulated potential: abscissae must be strictly increasing");
        }
    }
    std::vector<double> breaks;
    for (double x : xs) {
        if (x > 0.0 && x < kPi) {
            breaks.push_back(x);
        }
    }
    auto q = [xs = std::move(xs), qs = std::move(qs)](double x) {
        if (x <= xs.front()) {
            return qs.front();
        }
        if (x >= xs.back()) {
            return qs.back();
        }
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const auto i = static_cast<std::size_t>(it - xs.begin());
        const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return (1.0 - w) * qs[i - 1] + w * qs[i];
    };
    return {std::move(name), q, std::move(breaks)};
}

Potential flipped(const Potential& p)
{
    std::vector<double> breaks;
    breaks.reserve(p.breakpoints.size());
    for (auto it = p.breakpoints.rbegin(); it != p.breakpoints.rend(); ++it) {
        breaks.push_back(kPi - *it);
    }
    auto inner = p.q;
    return {p.name + "-flipped", [inner](double x) { return inner(kPi - x); }, std::move(breaks)};
}

Potential shifted(const Potential& p, double c)
{
    auto inner = p.q;
    return {p.name, [inner, c](double x) { return inner(x) + c; }, p.breakpoints};
}

Potential by_name(const std::string& name)
{
    if (name == "zero") {
        return zero();
    }
    if (name == "const1") {
        auto p = constant(1.0);
        p.name = "const1";
        return p;
    }
    if (name == "sin2x") {
        return sin2x();
    }
    if (name == "abs3") {
        return abs3();
    }
    if (name == "sawtooth") {
        return sawtooth();
    }
    if (name == "piecewise5") {
        return piecewise5();
    }
    if (name == "cos2x") {
        return cos2x();
    }
    throw InvalidArgument("unknown builtin potential '" + name + "'");
}

std::vector<std::string> builtin_names()
{
    return {"zero", "const1", "sin2x", "abs3", "sawtooth", "piecewise5", "cos2x"};
}

double integral(const Potential& p)
{
    std::vector<double> nodes{0.0};
    nodes.insert(nodes.end(), p.breakpoints.begin(), p.breakpoints.end());
    nodes.push_back(kPi);
    double total = 0.0;
    constexpr int kSub = 8;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double len = (nodes[i + 1] - nodes[i]) / kSub;
        for (int s = 0; s < kSub; ++s) {
            const double a = nodes[i] + s * len;
            total += boost::math::quadrature::gauss<double, 20>::integrate(p.q, a, a + len);
        }
    }
    return total;
}

} // namespace slinv::potentials
