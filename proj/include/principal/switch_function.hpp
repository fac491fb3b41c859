#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace principal {

// Non-decreasing [0,1]-valued profile: 0 left of the interpolation interval,
// 1 right of it.
struct SwitchFunction {
    enum class Kind { heaviside, linear_ramp, erf_ramp };

    Kind kind;
    double p1, p2;  // heaviside: threshold a (p2 unused); ramp: c,d; erf: center,width

    static SwitchFunction heaviside(double a);
    static SwitchFunction linear_ramp(double c, double d);
    static SwitchFunction erf_ramp(double center, double width);

    double operator()(double x) const;

    // [c,d] outside of which the profile is exactly 0 / exactly 1.  For the
    // erf profile the tails are clamped at center +- 8*width, where the
    // remaining erfc mass (~1e-29) is far below double precision.
    std::pair<double, double> interpolation_interval() const;

    // Points where the profile (or a derivative) is discontinuous; quadrature
    // intervals are split here.
    std::vector<double> knots() const;

    // Profile with argument rescaled by s: x -> original(x*s'), realized by
    // mapping the parameters (used for general field strength).
    SwitchFunction parameter_scaled(double s) const;

    const char* kind_name() const;
};

// Gaussian-smoothed profile (1/sqrt(pi)) * integral of profile(x) exp(-(x-u)^2) dx,
// in closed form for each kind.
double smooth_symbol_value(const SwitchFunction& profile, double u);

// Function-handle form of the same smoothing.
std::function<double(double)> smooth_symbol(const SwitchFunction& profile);

// Integral over a covering domain of profile(x+a) - profile(x); equals a for
// every switch profile.
double switch_integral_check(const SwitchFunction& profile, double a);

}  // namespace principal
