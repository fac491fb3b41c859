#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "principal/planar_symbol.hpp"

namespace principal {

// Gauss-Legendre nodes and weights on [-1,1]; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// Composite Gauss-Legendre rule on [lo, hi], split additionally at the
// interior cut points (points outside (lo, hi) are ignored).
struct PanelNodes {
    std::vector<double> x, w;
};
PanelNodes panelized_interval(double lo, double hi, const std::vector<double>& cuts,
                              int nodes_per_panel);

// Slow trustworthy cross-check of the series matrix elements: direct tensor
// quadrature over the plane in Cartesian coordinates.  The basis product is
// evaluated as exp(log-magnitude) * phase so that no factorial or power
// overflows, and the integral along the symbol axis is split at the profile
// knots.  Truncation radius R = (sqrt(2*max(m,n)) + 8) * sqrt(2/b), where the
// Gaussian tails are below 1e-14.
std::complex<double> matrix_element_quadrature(int m, int n, const PlanarSymbol& symbol,
                                               int nodes_per_panel = 128);

// 1D convolution quadrature of profile against a unit Gaussian, the oracle
// for the closed-form smoothed profile.
double smooth_convolution_quadrature(const SwitchFunction& profile, double u);

// Radial-moment oracle for the weighted-shift entries:
// 2 * int_0^inf r^{2n+2} e^{-r^2} dr / sqrt(n! (n+1)!), log-space inside.
double shift_weight_quadrature(int n);

}  // namespace principal
