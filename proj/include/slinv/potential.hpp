#pragma once

#include <functional>
#include <string>
#include <vector>

namespace slinv {

/// A real potential on [0, pi] together with the interior points where it or
/// one of its low derivatives jumps. Integrators align their steps to these.
struct Potential {
    std::string name;
    std::function<double(double)> q;
    std::vector<double> breakpoints; // sorted, strictly inside (0, pi)

    double operator()(double x) const { return q(x); }
};

namespace potentials {

Potential zero();
Potential constant(double c);
/// 2 + sin 2x
Potential sin2x();
/// |3 - |x^2 - 3||, kinks at sqrt(3) and sqrt(6)
Potential abs3();
/// integral_0^x sign(sin(10t/(4-t))) dt, piecewise linear
Potential sawtooth();
/// piecewise linear/constant potential with jumps at 3pi/5 and 4pi/5
Potential piecewise5();
/// cos 2x
Potential cos2x();

/// Piecewise linear interpolant through (xs, qs); every node is a breakpoint.
Potential tabulated(std::vector<double> xs, std::vector<double> qs, std::string name = "tabulated");

/// x -> q(pi - x), breakpoints mirrored.
Potential flipped(const Potential& p);

/// Shift by a constant: x -> q(x) + c.
Potential shifted(const Potential& p, double c);

/// Builtin lookup: zero, const1, sin2x, abs3, sawtooth, piecewise5, cos2x.
/// Throws InvalidArgument for unknown names.
Potential by_name(const std::string& name);

/// Names accepted by by_name.
std::vector<std::string> builtin_names();

/// integral_0^pi q(x) dx by Gauss-Legendre on every smooth piece.
double integral(const Potential& p);

} // namespace potentials

} // namespace slinv
