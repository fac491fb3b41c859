#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "principal/exact.hpp"

namespace principal {

// Two-variable polynomial with exact Gaussian-rational coefficients.
// All arithmetic is exact; no floating point enters this class.
class QPolynomial2 {
  public:
    using Key = std::pair<int, int>;  // (x exponent, y exponent)

    QPolynomial2() = default;

    static QPolynomial2 constant(const GaussianRational& c);
    static QPolynomial2 x(int power = 1);
    static QPolynomial2 y(int power = 1);
    static QPolynomial2 monomial(int a, int b, const GaussianRational& c);

    void add_term(int a, int b, const GaussianRational& c);

    const std::map<Key, GaussianRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    QPolynomial2 operator+(const QPolynomial2& o) const;
    QPolynomial2 operator-(const QPolynomial2& o) const;
    QPolynomial2 operator*(const QPolynomial2& o) const;
    QPolynomial2 scaled(const GaussianRational& c) const;
    QPolynomial2 pow(unsigned k) const;

    QPolynomial2 ddx() const;
    QPolynomial2 ddy() const;

    bool operator==(const QPolynomial2& o) const { return terms_ == o.terms_; }

    std::complex<double> eval(std::complex<double> xv, std::complex<double> yv) const;
    std::string str() const;

  private:
    std::map<Key, GaussianRational> terms_;  // no zero coefficients stored
};

// {p,q} = dp/dx dq/dy - dp/dy dq/dx, exact.
QPolynomial2 poisson_bracket(const QPolynomial2& p, const QPolynomial2& q);

// Integral over [0,1]^2 via the monomial rule x^a y^b -> 1/((a+1)(b+1)).
// Returns a bare Gaussian rational: no pi can appear for the square region,
// and the return type enforces that.
GaussianRational unit_square_integral_rational(const QPolynomial2& p);

// Same integral wrapped as an ExactValue (pi_part identically zero).
ExactValue integrate_unit_square(const QPolynomial2& p);

// Integral over the unit disc: x^a y^b -> 2*pi*(a-1)!!(b-1)!!/(a+b+2)!! for
// a,b both even, zero otherwise. The result is a rational multiple of pi.
ExactValue integrate_unit_disc(const QPolynomial2& p);

enum class Region { unit_square, unit_disc };

// G = multiplier * characteristic function of the region.
struct PrincipalFunction {
    int multiplier;
    Region region;
};

// Exact trace value: direct + inv_2pi_i_coeff / (2*pi*i).
struct TracePrediction {
    GaussianRational direct;
    GaussianRational inv_2pi_i_coeff;

    std::complex<double> approx() const {
        const double two_pi = 2.0 * 3.14159265358979323846;
        std::complex<double> inv_2pi_i(0.0, -1.0 / two_pi);  // 1/(2 pi i)
        return direct.approx() + inv_2pi_i_coeff.approx() * inv_2pi_i;
    }
    std::string str() const;
};

// (i/2pi) * integral over the region of {p,q} * multiplier.  For the square
// the result is a pure rational multiple of 1/(2 pi i); for the disc the pi
// in the integral cancels the 1/(2 pi) prefactor exactly.
TracePrediction chhp_prediction(const PrincipalFunction& G, const QPolynomial2& p,
                                const QPolynomial2& q);

// Pointwise value of G at z: multiplier inside the region, 0 outside.
// Boundary points are rejected (the index is undefined there).
int index_at(const PrincipalFunction& G, std::complex<double> z);

// Single-variable polynomial with exact coefficients, r(t) = sum c_k t^k.
using QPolynomial1 = std::vector<GaussianRational>;

QPolynomial2 compose(const QPolynomial1& r, const QPolynomial2& s);

// True iff {r1(s), r2(s)} is the exact zero polynomial (it always is:
// both composites are functions of the single generator s).
bool collapsing_check(const QPolynomial1& r1, const QPolynomial1& r2,
                      const QPolynomial2& s);

// Parse error with input position for diagnostics.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

// Grammar: sum of terms c*x^a*y^b, c rational like -3/7 or Gaussian rational
// like (-3/7+1/2i); whitespace ignored.  Negative exponents rejected.
QPolynomial2 parse_qpolynomial(const std::string& text);

// Rational like "-3/7", or Gaussian "(re+imi)".
GaussianRational parse_gaussian_rational(const std::string& text, std::size_t& pos);

}  // namespace principal
