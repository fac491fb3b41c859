#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace principal {

// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

    static GaussianRational i_unit() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational operator+(const GaussianRational& o) const {
        return {re + o.re, im + o.im};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {re - o.re, im - o.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator/(const mpq_class& d) const {
        if (d == 0) throw std::domain_error("division by zero rational");
        return {re / d, im / d};
    }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    bool operator==(const GaussianRational& o) const {
        return re == o.re && im == o.im;
    }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    std::complex<double> approx() const { return {re.get_d(), im.get_d()}; }

    std::string str() const {
        if (im == 0) return re.get_str();
        if (re == 0) return im.get_str() + "i";
        std::string s = re.get_str();
        if (im > 0) s += "+";
        return s + im.get_str() + "i";
    }
};

inline GaussianRational operator*(const mpq_class& s, const GaussianRational& g) {
    return {s * g.re, s * g.im};
}

// Value of the form rational_part + pi_part * pi, both parts exact.
struct ExactValue {
    GaussianRational rational_part;
    GaussianRational pi_part;

    std::complex<double> approx() const {
        const double pi = 3.14159265358979323846;
        return rational_part.approx() + pi * pi_part.approx();
    }
};

}  // namespace principal
