#pragma once

#include <stdexcept>

#include "principal/switch_function.hpp"

namespace principal {

enum class Axis { first_coordinate, second_coordinate };

// Planar multiplication symbol u -> profile(u_axis) at field strength b.
struct PlanarSymbol {
    SwitchFunction profile;
    Axis axis = Axis::first_coordinate;
    double b = 2.0;

    PlanarSymbol(SwitchFunction p, Axis ax = Axis::first_coordinate, double b_ = 2.0)
        : profile(p), axis(ax), b(b_) {
        if (!(b > 0) || !std::isfinite(b))
            throw std::invalid_argument("field strength must be positive and finite");
    }

    double operator()(double x, double y) const {
        return profile(axis == Axis::first_coordinate ? x : y);
    }
};

}  // namespace principal
