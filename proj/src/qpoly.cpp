#include "principal/qpoly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace principal {

QPolynomial2 QPolynomial2::constant(const GaussianRational& c) {
    QPolynomial2 p;
    p.add_term(0, 0, c);
    return p;
}

QPolynomial2 QPolynomial2::x(int power) {
    QPolynomial2 p;
    p.add_term(power, 0, GaussianRational(1));
    return p;
}

QPolynomial2 QPolynomial2::y(int power) {
    QPolynomial2 p;
    p.add_term(0, power, GaussianRational(1));
    return p;
}

QPolynomial2 QPolynomial2::monomial(int a, int b, const GaussianRational& c) {
    QPolynomial2 p;
    p.add_term(a, b, c);
    return p;
}

void QPolynomial2::add_term(int a, int b, const GaussianRational& c) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative exponent");
    if (c.is_zero()) return;
    auto it = terms_.find({a, b});
    if (it == terms_.end()) {
        terms_.emplace(Key{a, b}, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int QPolynomial2::degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

QPolynomial2 QPolynomial2::operator+(const QPolynomial2& o) const {
    QPolynomial2 r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
}

QPolynomial2 QPolynomial2::operator-(const QPolynomial2& o) const {
    QPolynomial2 r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
    return r;
}

QPolynomial2 QPolynomial2::operator*(const QPolynomial2& o) const {
    QPolynomial2 r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_)
            r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return r;
}

QPolynomial2 QPolynomial2::scaled(const GaussianRational& c) const {
    QPolynomial2 r;
    for (const auto& [k, c0] : terms_) r.add_term(k.first, k.second, c0 * c);
    return r;
}

QPolynomial2 QPolynomial2::pow(unsigned k) const {
    QPolynomial2 r = constant(GaussianRational(1));
    for (unsigned i = 0; i < k; ++i) r = r * (*this);
    return r;
}

QPolynomial2 QPolynomial2::ddx() const {
    QPolynomial2 r;
    for (const auto& [k, c] : terms_)
        if (k.first > 0) r.add_term(k.first - 1, k.second, mpq_class(k.first) * c);
    return r;
}

QPolynomial2 QPolynomial2::ddy() const {
    QPolynomial2 r;
    for (const auto& [k, c] : terms_)
        if (k.second > 0) r.add_term(k.first, k.second - 1, mpq_class(k.second) * c);
    return r;
}

std::complex<double> QPolynomial2::eval(std::complex<double> xv,
                                        std::complex<double> yv) const {
    std::complex<double> s = 0;
    for (const auto& [k, c] : terms_)
        s += c.approx() * std::pow(xv, k.first) * std::pow(yv, k.second);
    return s;
}

std::string QPolynomial2::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k.first) os << "*x^" << k.first;
        if (k.second) os << "*y^" << k.second;
    }
    return os.str();
}

QPolynomial2 poisson_bracket(const QPolynomial2& p, const QPolynomial2& q) {
    return p.ddx() * q.ddy() - p.ddy() * q.ddx();
}

GaussianRational unit_square_integral_rational(const QPolynomial2& p) {
    GaussianRational s;
    for (const auto& [k, c] : p.terms()) {
        mpq_class w(1, (long(k.first) + 1) * (long(k.second) + 1));
        s += w * c;
    }
    return s;
}

ExactValue integrate_unit_square(const QPolynomial2& p) {
    return {unit_square_integral_rational(p), GaussianRational()};
}

namespace {
// (k-1)!! with the empty-product convention (-1)!! = 1, valid for k even >= 0.
mpz_class odd_double_factorial(int k) {
    mpz_class r = 1;
    for (int j = k - 1; j >= 1; j -= 2) r *= j;
    return r;
}

// k!! for k even >= 0.
mpz_class even_double_factorial(int k) {
    mpz_class r = 1;
    for (int j = k; j >= 2; j -= 2) r *= j;
    return r;
}
}  // namespace

ExactValue integrate_unit_disc(const QPolynomial2& p) {
    GaussianRational pi_part;
    for (const auto& [k, c] : p.terms()) {
        int a = k.first, b = k.second;
        if (a % 2 != 0 || b % 2 != 0) continue;  // odd powers vanish by symmetry
        mpq_class w(2 * odd_double_factorial(a) * odd_double_factorial(b),
                    even_double_factorial(a + b + 2));
        w.canonicalize();
        pi_part += w * c;
    }
    return {GaussianRational(), pi_part};
}

std::string TracePrediction::str() const {
    std::string s;
    if (!direct.is_zero() || inv_2pi_i_coeff.is_zero()) s += direct.str();
    if (!inv_2pi_i_coeff.is_zero()) {
        if (!s.empty()) s += " + ";
        s += "(" + inv_2pi_i_coeff.str() + ")/(2*pi*i)";
    }
    return s;
}

TracePrediction chhp_prediction(const PrincipalFunction& G, const QPolynomial2& p,
                                const QPolynomial2& q) {
    QPolynomial2 br = poisson_bracket(p, q);
    mpq_class n(G.multiplier);
    TracePrediction out;
    if (G.region == Region::unit_square) {
        // (i/2pi) * n * r  =  -(n*r) / (2 pi i); no pi ever enters.
        GaussianRational r = unit_square_integral_rational(br);
        out.inv_2pi_i_coeff = -(n * r);
    } else {
        // integral = rho*pi, so (i/2pi)*n*rho*pi = i*n*rho/2 exactly.
        ExactValue ev = integrate_unit_disc(br);
        GaussianRational rho = ev.pi_part;
        out.direct = GaussianRational::i_unit() * (mpq_class(n / 2) * rho);
    }
    return out;
}

int index_at(const PrincipalFunction& G, std::complex<double> z) {
    double x = z.real(), y = z.imag();
    if (G.region == Region::unit_square) {
        bool on_x = (x == 0.0 || x == 1.0) && y >= 0.0 && y <= 1.0;
        bool on_y = (y == 0.0 || y == 1.0) && x >= 0.0 && x <= 1.0;
        if (on_x || on_y)
            throw std::domain_error("point on region boundary: index undefined");
        bool inside = x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0;
        return inside ? G.multiplier : 0;
    }
    double r2 = x * x + y * y;
    if (r2 == 1.0)
        throw std::domain_error("point on region boundary: index undefined");
    return r2 < 1.0 ? G.multiplier : 0;
}

QPolynomial2 compose(const QPolynomial1& r, const QPolynomial2& s) {
    // Horner evaluation of r at the polynomial argument, all exact.
    QPolynomial2 acc;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        acc = acc * s;
        acc.add_term(0, 0, *it);
    }
    return acc;
}

bool collapsing_check(const QPolynomial1& r1, const QPolynomial1& r2,
                      const QPolynomial2& s) {
    return poisson_bracket(compose(r1, s), compose(r2, s)).is_zero();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

mpz_class parse_integer(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    std::string digits;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        digits += c.s[c.pos++];
    if (digits.empty()) throw ParseError(start, "expected integer");
    return mpz_class(digits);
}

mpq_class parse_rational(Cursor& c) {
    bool neg = false;
    if (c.accept('-'))
        neg = true;
    else
        c.accept('+');
    mpz_class num = parse_integer(c);
    mpz_class den = 1;
    if (c.accept('/')) {
        den = parse_integer(c);
        if (den == 0) throw ParseError(c.pos, "zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

// (re[+|-]im i) with both parts rational, or a bare rational.
GaussianRational parse_coefficient(Cursor& c) {
    if (c.accept('(')) {
        mpq_class re = parse_rational(c);
        GaussianRational g(re);
        c.skip_ws();
        if (c.peek() == '+' || c.peek() == '-') {
            mpq_class im = parse_rational(c);
            if (!c.accept('i')) throw ParseError(c.pos, "expected 'i'");
            g.im = im;
        } else if (c.accept('i')) {
            g = GaussianRational(mpq_class(0), re);
        }
        if (!c.accept(')')) throw ParseError(c.pos, "expected ')'");
        return g;
    }
    mpq_class re = parse_rational(c);
    if (c.accept('i')) return GaussianRational(mpq_class(0), re);
    return GaussianRational(re);
}

int parse_exponent(Cursor& c) {
    if (!c.accept('^')) return 1;
    bool neg = c.accept('-');
    mpz_class e = parse_integer(c);
    if (neg) throw ParseError(c.pos, "negative exponent not allowed");
    if (e > 64) throw ParseError(c.pos, "exponent too large");
    return static_cast<int>(e.get_si());
}

}  // namespace

GaussianRational parse_gaussian_rational(const std::string& text, std::size_t& pos) {
    Cursor c{text, pos};
    GaussianRational g = parse_coefficient(c);
    pos = c.pos;
    return g;
}

QPolynomial2 parse_qpolynomial(const std::string& text) {
    Cursor c{text, 0};
    QPolynomial2 out;
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        if (c.accept('-'))
            sign = -1;
        else if (c.accept('+')) {
            // explicit plus
        } else if (!first) {
            throw ParseError(c.pos, "expected '+' or '-' between terms");
        }
        first = false;

        GaussianRational coeff(1);
        bool have_coeff = false;
        char ch = c.peek();
        if (ch == '(' || std::isdigit(static_cast<unsigned char>(ch)) || ch == 'i') {
            if (ch == 'i') {
                c.accept('i');
                coeff = GaussianRational::i_unit();
            } else {
                Cursor sub = c;
                coeff = parse_coefficient(sub);
                c.pos = sub.pos;
            }
            have_coeff = true;
        }

        int a = 0, b = 0;
        bool have_var = false;
        while (true) {
            if (have_coeff || have_var) {
                if (!c.accept('*')) {
                    char v = c.peek();
                    if (v != 'x' && v != 'y') break;
                }
            }
            char v = c.peek();
            if (v == 'x') {
                c.accept('x');
                a += parse_exponent(c);
                have_var = true;
            } else if (v == 'y') {
                c.accept('y');
                b += parse_exponent(c);
                have_var = true;
            } else if (have_var || have_coeff) {
                throw ParseError(c.pos, "expected variable after '*'");
            } else {
                throw ParseError(c.pos, "expected term");
            }
            if (c.peek() != '*' && c.peek() != 'x' && c.peek() != 'y') break;
        }
        if (!have_coeff && !have_var) throw ParseError(c.pos, "empty term");
        if (sign < 0) coeff = -coeff;
        out.add_term(a, b, coeff);
    }
    return out;
}

}  // namespace principal
