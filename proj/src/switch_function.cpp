#include "principal/switch_function.hpp"

#include <algorithm>
#include <cmath>

#include "principal/quadrature.hpp"

namespace principal {

namespace {
constexpr double kErfTailWidths = 8.0;  // erfc(8)/2 ~ 5.6e-30
const double kSqrtPi = std::sqrt(M_PI);

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " not finite");
}
}  // namespace

SwitchFunction SwitchFunction::heaviside(double a) {
    require_finite(a, "threshold");
    return {Kind::heaviside, a, 0.0};
}

SwitchFunction SwitchFunction::linear_ramp(double c, double d) {
    require_finite(c, "ramp start");
    require_finite(d, "ramp end");
    if (!(c < d)) throw std::invalid_argument("linear_ramp requires c < d");
    return {Kind::linear_ramp, c, d};
}

SwitchFunction SwitchFunction::erf_ramp(double center, double width) {
    require_finite(center, "center");
    require_finite(width, "width");
    if (!(width > 0)) throw std::invalid_argument("erf_ramp requires width > 0");
    return {Kind::erf_ramp, center, width};
}

double SwitchFunction::operator()(double x) const {
    switch (kind) {
        case Kind::heaviside:
            if (x < p1) return 0.0;
            if (x > p1) return 1.0;
            return 0.5;
        case Kind::linear_ramp:
            return std::clamp((x - p1) / (p2 - p1), 0.0, 1.0);
        case Kind::erf_ramp: {
            if (x <= p1 - kErfTailWidths * p2) return 0.0;
            if (x >= p1 + kErfTailWidths * p2) return 1.0;
            return std::clamp((1.0 + std::erf((x - p1) / p2)) / 2.0, 0.0, 1.0);
        }
    }
    return 0.0;
}

std::pair<double, double> SwitchFunction::interpolation_interval() const {
    switch (kind) {
        case Kind::heaviside:
            return {p1, p1};
        case Kind::linear_ramp:
            return {p1, p2};
        case Kind::erf_ramp:
            return {p1 - kErfTailWidths * p2, p1 + kErfTailWidths * p2};
    }
    return {0, 0};
}

std::vector<double> SwitchFunction::knots() const {
    auto [c, d] = interpolation_interval();
    if (c == d) return {c};
    return {c, d};
}

SwitchFunction SwitchFunction::parameter_scaled(double s) const {
    switch (kind) {
        case Kind::heaviside:
            return heaviside(p1 * s);
        case Kind::linear_ramp:
            return linear_ramp(p1 * s, p2 * s);
        case Kind::erf_ramp:
            return erf_ramp(p1 * s, p2 * s);
    }
    return *this;
}

const char* SwitchFunction::kind_name() const {
    switch (kind) {
        case Kind::heaviside:
            return "heaviside";
        case Kind::linear_ramp:
            return "linear_ramp";
        case Kind::erf_ramp:
            return "erf_ramp";
    }
    return "?";
}

double smooth_symbol_value(const SwitchFunction& profile, double u) {
    switch (profile.kind) {
        case SwitchFunction::Kind::heaviside:
            return (1.0 + std::erf(u - profile.p1)) / 2.0;
        case SwitchFunction::Kind::linear_ramp: {
            // (1/sqrt(pi)) [ int_c^d (x-c)/(d-c) e^{-(x-u)^2} dx + int_d^inf e^{-(x-u)^2} dx ]
            double c = profile.p1, d = profile.p2, w = d - c;
            double g = (std::exp(-(c - u) * (c - u)) - std::exp(-(d - u) * (d - u))) /
                       (2.0 * kSqrtPi * w);
            double lin = (u - c) * (std::erf(d - u) - std::erf(c - u)) / (2.0 * w);
            return g + lin + std::erfc(d - u) / 2.0;
        }
        case SwitchFunction::Kind::erf_ramp: {
            // Gaussian smoothing of an erf step is another erf step with
            // effective width sqrt(1 + width^2).
            double tau = 1.0 / std::sqrt(1.0 + profile.p2 * profile.p2);
            return (1.0 + std::erf((u - profile.p1) * tau)) / 2.0;
        }
    }
    return 0.0;
}

std::function<double(double)> smooth_symbol(const SwitchFunction& profile) {
    return [profile](double u) { return smooth_symbol_value(profile, u); };
}

double switch_integral_check(const SwitchFunction& profile, double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("shift not finite");
    // integrand profile(x+a) - profile(x) is supported between the shifted and
    // unshifted interpolation intervals; split at every knot of either copy
    auto base = profile.knots();
    std::vector<double> cuts;
    for (double k : base) {
        cuts.push_back(k);
        cuts.push_back(k - a);
    }
    double lo = *std::min_element(cuts.begin(), cuts.end()) - 2.0;
    double hi = *std::max_element(cuts.begin(), cuts.end()) + 2.0;
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto& [nodes, weights] = gauss_legendre(64);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = (cuts[i + 1] + cuts[i]) / 2.0, half = (cuts[i + 1] - cuts[i]) / 2.0;
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            double x = mid + half * nodes[k];
            acc += weights[k] * (profile(x + a) - profile(x));
        }
        total += half * acc;
    }
    return total;
}

}  // namespace principal
