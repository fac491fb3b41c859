#include "principal/hardy.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace principal {

void LaurentSymbol::set(int k, const GaussianRational& c) {
    if (c.is_zero())
        coefficients.erase(k);
    else
        coefficients[k] = c;
}

GaussianRational LaurentSymbol::coefficient(int k) const {
    auto it = coefficients.find(k);
    return it == coefficients.end() ? GaussianRational() : it->second;
}

int LaurentSymbol::bandwidth() const {
    int K = 0;
    for (const auto& [k, c] : coefficients) K = std::max(K, std::abs(k));
    return K;
}

std::string LaurentSymbol::str() const {
    std::string out;
    for (const auto& [k, c] : coefficients) {
        if (!out.empty()) out += ", ";
        out += std::to_string(k) + ":";
        out += c.is_real() ? c.str() : "(" + c.str() + ")";
    }
    return out;
}

LaurentSymbol LaurentSymbol::z(int k, const GaussianRational& c) {
    LaurentSymbol s;
    s.set(k, c);
    return s;
}

LaurentSymbol LaurentSymbol::parse(const std::string& text) {
    LaurentSymbol out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        bool neg = false;
        if (text[pos] == '-' || text[pos] == '+') neg = (text[pos++] == '-');
        std::size_t digit_start = pos;
        long k = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            k = 10 * k + (text[pos++] - '0');
        if (pos == digit_start) throw ParseError(pos, "expected frequency integer");
        if (neg) k = -k;
        skip_ws();
        if (pos >= text.size() || text[pos] != ':')
            throw ParseError(pos, "expected ':' after frequency");
        ++pos;
        GaussianRational c = parse_gaussian_rational(text, pos);
        out.set(k, out.coefficient(static_cast<int>(k)) + c);
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != ',') throw ParseError(pos, "expected ',' between terms");
        ++pos;
        skip_ws();
        if (pos >= text.size()) throw ParseError(pos, "dangling ','");
    }
    return out;
}

HardyToeplitzMatrix HardyToeplitzMatrix::build(const LaurentSymbol& symbol, int L) {
    if (L < 1) throw std::invalid_argument("matrix size must be positive");
    HardyToeplitzMatrix T;
    T.L = L;
    T.entries.resize(static_cast<std::size_t>(L) * L);
    for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) T.entries[m * L + n] = symbol.coefficient(m - n);
    return T;
}

GaussianRational exact_commutator_trace(const LaurentSymbol& f, const LaurentSymbol& g,
                                        int L) {
    const int W = f.bandwidth() + g.bandwidth();  // commutator support bound
    const int Lmin = 2 * W + 2;
    if (L < 0) L = Lmin;
    if (L < Lmin)
        throw std::invalid_argument("truncation too small to contain the commutator block");

    HardyToeplitzMatrix Tf = HardyToeplitzMatrix::build(f, L);
    HardyToeplitzMatrix Tg = HardyToeplitzMatrix::build(g, L);
    auto product = [L](const HardyToeplitzMatrix& X, const HardyToeplitzMatrix& Y) {
        std::vector<GaussianRational> P(static_cast<std::size_t>(L) * L);
        for (int m = 0; m < L; ++m)
            for (int j = 0; j < L; ++j) {
                const GaussianRational& x = X.entry(m, j);
                if (x.is_zero()) continue;
                for (int n = 0; n < L; ++n) {
                    const GaussianRational& y = Y.entry(j, n);
                    if (!y.is_zero()) P[m * L + n] += x * y;
                }
            }
        return P;
    };
    std::vector<GaussianRational> FG = product(Tf, Tg);
    std::vector<GaussianRational> GF = product(Tg, Tf);
    GaussianRational trace;
    for (int m = 0; m < W; ++m) trace += FG[m * L + m] - GF[m * L + m];
    return trace;
}

namespace {

QPolynomial2 disc_monomial(int k, bool harmonic) {
    // z^k -> (x+iy)^k, z^{-k} -> (x-iy)^k, optionally times (x^2+y^2)
    if (k == 0) return QPolynomial2::constant(GaussianRational(1));
    QPolynomial2 base;
    base.add_term(1, 0, GaussianRational(1));
    base.add_term(0, 1, k > 0 ? GaussianRational::i_unit() : -GaussianRational::i_unit());
    QPolynomial2 p = base.pow(static_cast<unsigned>(std::abs(k)));
    if (k < 0 && !harmonic) {
        QPolynomial2 r2;
        r2.add_term(2, 0, GaussianRational(1));
        r2.add_term(0, 2, GaussianRational(1));
        p = p * r2;
    }
    return p;
}

QPolynomial2 extend(const LaurentSymbol& f, bool harmonic) {
    QPolynomial2 out;
    for (const auto& [k, c] : f.coefficients)
        out = out + disc_monomial(k, harmonic).scaled(c);
    return out;
}

}  // namespace

QPolynomial2 harmonic_extension(const LaurentSymbol& f) { return extend(f, true); }

QPolynomial2 alternative_extension(const LaurentSymbol& f) { return extend(f, false); }

HeltonHoweResult helton_howe_check(const LaurentSymbol& f, const LaurentSymbol& g) {
    HeltonHoweResult out;
    out.lhs = exact_commutator_trace(f, g);
    ExactValue disc =
        integrate_unit_disc(poisson_bracket(harmonic_extension(f), harmonic_extension(g)));
    if (!disc.rational_part.is_zero())
        throw std::logic_error("disc integral of a polynomial bracket must be a pi multiple");
    // (1/(2 pi i)) * (pi * p) = -(i/2) p
    out.rhs = GaussianRational(mpq_class(0), mpq_class(-1, 2)) * disc.pi_part;
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace principal
