#pragma once

#include <cmath>
#include <complex>

namespace principal {

// Point pair for reproducing-kernel evaluation.
struct KernelPoint {
    std::complex<double> z, w;
};

// u ^ t = Im(conj(u) * t), the symplectic area form.
inline double wedge(std::complex<double> u, std::complex<double> t) {
    return std::imag(std::conj(u) * t);
}

// P(z,w) = (1/pi) exp(z*conj(w) - (|z|^2+|w|^2)/2)
inline std::complex<double> kernel_eval(const KernelPoint& pt) {
    std::complex<double> e = pt.z * std::conj(pt.w) -
                             (std::norm(pt.z) + std::norm(pt.w)) / 2.0;
    return std::exp(e) / M_PI;
}

// Equivalent Gaussian-modulus form: (1/pi) exp(-|z-w|^2/2) exp(i * (w ^ z))
inline std::complex<double> kernel_eval_form2(const KernelPoint& pt) {
    double mag = std::exp(-std::norm(pt.z - pt.w) / 2.0) / M_PI;
    double phase = wedge(pt.w, pt.z);
    return mag * std::complex<double>(std::cos(phase), std::sin(phase));
}

}  // namespace principal
