#include "principal/landau.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "principal/quadrature.hpp"

namespace principal {

namespace {

// Radial data of psi_{j,m}: |z|^power * poly(|z|^2) * e^{-|z|^2/2} times
// e^{i*ang*theta}, with the squared norm absorbed into lognorm.
struct LevelFactor {
    int power;       // exponent of |z|
    double lognorm;  // log of the normalization constant
    int ang;         // angular momentum
    bool has_poly;   // polynomial factor ((m+1) - |z|^2) present
    int m;
};

LevelFactor level_factor(int j, int m) {
    if (j != 0 && j != 1) throw std::invalid_argument("unsupported level (expected 0 or 1)");
    if (m < -j) throw std::invalid_argument("member index below -level");
    if (j == 0) return {m, -0.5 * (std::log(M_PI) + std::lgamma(m + 1.0)), m, false, m};
    if (m == -1) return {1, -0.5 * std::log(M_PI), -1, false, m};
    return {m, -0.5 * (std::log(M_PI) + std::lgamma(m + 2.0)), m, true, m};
}

// 2D Cartesian quadrature of conj(psi_1) * f * psi_2 at b=2 (f == 1 when
// sym is null).  Symbol-axis panels split at the profile knots.
std::complex<double> level_pair_quadrature(const LevelFactor& f1, const LevelFactor& f2,
                                           const PlanarSymbol* sym, int nodes_per_panel) {
    int pmax = std::max({f1.power + (f1.has_poly ? 2 : 0), f2.power + (f2.has_poly ? 2 : 0), 1});
    double R = std::sqrt(2.0 * pmax) + 8.0;

    bool axis_first = !sym || sym->axis == Axis::first_coordinate;
    std::vector<double> sym_cuts = sym ? sym->profile.knots() : std::vector<double>{0.0};
    auto sym_panels = panelized_interval(-R, R, sym_cuts, nodes_per_panel);
    auto free_panels = panelized_interval(-R, R, {0.0}, nodes_per_panel);

    double base_lognorm = f1.lognorm + f2.lognorm;
    const auto& sx = sym_panels.x;
    const auto& fx = free_panels.x;
    std::complex<double> total = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        double vsym = sym ? sym->profile(sx[i]) : 1.0;
        if (vsym == 0.0) continue;
        std::complex<double> inner = 0.0;
        for (std::size_t k = 0; k < fx.size(); ++k) {
            double x = axis_first ? sx[i] : fx[k];
            double y = axis_first ? fx[k] : sx[i];
            double r2 = x * x + y * y;
            double val;
            if (r2 == 0.0) {
                if (f1.power + f2.power != 0) continue;
                val = std::exp(base_lognorm);
            } else {
                val = std::exp(0.5 * (f1.power + f2.power) * std::log(r2) - r2 + base_lognorm);
            }
            if (f1.has_poly) val *= (f1.m + 1.0) - r2;
            if (f2.has_poly) val *= (f2.m + 1.0) - r2;
            double phase = (f2.ang - f1.ang) * std::atan2(y, x);
            inner += free_panels.w[k] * val *
                     std::complex<double>(std::cos(phase), std::sin(phase));
        }
        total += sym_panels.w[i] * vsym * inner;
    }
    return total;
}

// Entry formulas over the b=2 axis-first series table A (real symmetric).
// With I_{ab} = integral of conj(z)^a z^b f e^{-|z|^2} = pi sqrt(a! b!) A_ab,
// expanding the polynomial factors of the level-1 members gives:
double level1_entry(const Eigen::MatrixXd& A, int m, int n) {
    if (m == -1 && n == -1) return A(1, 1);
    if (n == -1) return level1_entry(A, n, m);  // axis-first entries are symmetric
    if (m == -1) return (n + 1.0) * A(0, n + 1) - std::sqrt(n + 2.0) * A(1, n + 2);
    return std::sqrt((m + 1.0) * (n + 1.0)) * A(m, n) - (m + n + 2.0) * A(m + 1, n + 1) +
           std::sqrt((m + 2.0) * (n + 2.0)) * A(m + 2, n + 2);
}

// <psi_{0,m}, f psi_{1,n}> over the same table.
double cross_entry(const Eigen::MatrixXd& A, int m, int n) {
    if (n == -1) return std::sqrt(m + 1.0) * A(m + 1, 0);
    return std::sqrt(n + 1.0) * A(m, n) - std::sqrt(m + 1.0) * A(m + 1, n + 1);
}

std::complex<double> quarter_phase(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void check_size(int M) {
    if (M < 1) throw std::invalid_argument("matrix size must be positive");
    if (M > max_matrix_size())
        throw std::length_error("matrix size exceeds configured maximum (" +
                                std::to_string(max_matrix_size()) + ")");
}

SwitchFunction table_profile(const PlanarSymbol& symbol) {
    return symbol.profile.parameter_scaled(std::sqrt(symbol.b / 2.0));
}

Eigen::MatrixXcd assemble_level1(const Eigen::MatrixXd& A, int M, bool axis_first) {
    Eigen::MatrixXcd X(M, M);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) {
            double e = level1_entry(A, r - 1, c - 1);
            X(r, c) = axis_first ? std::complex<double>(e, 0.0) : quarter_phase(c - r) * e;
        }
    return X;
}

Eigen::MatrixXcd assemble_cumulative(const Eigen::MatrixXd& A, int M, bool axis_first) {
    Eigen::MatrixXcd X(M, M);
    for (int r = 0; r < M; ++r) {
        auto [lr, mr] = cumulative_member(r);
        for (int c = 0; c < M; ++c) {
            auto [lc, mc] = cumulative_member(c);
            double e;
            if (lr == 0 && lc == 0)
                e = A(mr, mc);
            else if (lr == 1 && lc == 1)
                e = level1_entry(A, mr, mc);
            else if (lr == 0)
                e = cross_entry(A, mr, mc);
            else
                e = cross_entry(A, mc, mr);
            X(r, c) = axis_first ? std::complex<double>(e, 0.0) : quarter_phase(mc - mr) * e;
        }
    }
    return X;
}

int cumulative_table_size(int M) {
    int need = 2;  // level1_entry(-1,-1) reads A(1,1)
    for (int p = 0; p < M; ++p) {
        auto [l, m] = cumulative_member(p);
        need = std::max(need, m + (l == 1 ? 3 : 2));
    }
    return need;
}

}  // namespace

std::complex<double> level_basis_inner_product(int j1, int m1, int j2, int m2,
                                               int nodes_per_panel) {
    return level_pair_quadrature(level_factor(j1, m1), level_factor(j2, m2), nullptr,
                                 nodes_per_panel);
}

std::complex<double> level_matrix_element(int j, int m, int n, const PlanarSymbol& symbol,
                                          int nodes_per_panel) {
    return level_pair_element(j, m, j, n, symbol, nodes_per_panel);
}

std::complex<double> level_pair_element(int j1, int m1, int j2, int m2,
                                        const PlanarSymbol& symbol, int nodes_per_panel) {
    PlanarSymbol rescaled{table_profile(symbol), symbol.axis, 2.0};
    return level_pair_quadrature(level_factor(j1, m1), level_factor(j2, m2), &rescaled,
                                 nodes_per_panel);
}

ToeplitzMatrix build_level_toeplitz(int j, const PlanarSymbol& symbol, int M,
                                    int precision_bits, int threads) {
    level_factor(j, 0);  // level validation
    check_size(M);
    if (j == 0) {
        ToeplitzMatrix T = build_toeplitz(symbol, M, precision_bits, threads);
        T.basis_tag = BasisTag{BasisTag::Kind::landau_level, 0};
        return T;
    }
    Eigen::MatrixXd A = series_table(table_profile(symbol), M + 1, precision_bits, threads);
    ToeplitzMatrix T{assemble_level1(A, M, symbol.axis == Axis::first_coordinate), symbol, M,
                     BasisTag{BasisTag::Kind::landau_level, 1}};
    return T;
}

CumulativeMember cumulative_member(int p) {
    if (p < 0) throw std::invalid_argument("negative basis position");
    if (p == 0) return {1, -1};
    if (p % 2 == 1) return {0, (p - 1) / 2};
    return {1, p / 2 - 1};
}

ToeplitzMatrix cumulative_matrix(int levels, const PlanarSymbol& symbol, int M,
                                 int precision_bits, int threads) {
    if (levels != 0 && levels != 1)
        throw std::invalid_argument("unsupported level count (expected 0 or 1)");
    check_size(M);
    if (levels == 0) {
        ToeplitzMatrix T = build_toeplitz(symbol, M, precision_bits, threads);
        T.basis_tag = BasisTag{BasisTag::Kind::landau_cumulative, 0};
        return T;
    }
    Eigen::MatrixXd A =
        series_table(table_profile(symbol), cumulative_table_size(M), precision_bits, threads);
    ToeplitzMatrix T{assemble_cumulative(A, M, symbol.axis == Axis::first_coordinate), symbol,
                     M, BasisTag{BasisTag::Kind::landau_cumulative, 1}};
    return T;
}

TraceReport level_commutator_trace(int j, const TruncationScheme& scheme,
                                   const SwitchFunction& profile, double b) {
    level_factor(j, 0);
    scheme.validate();
    check_size(scheme.M);
    PlanarSymbol sx{profile, Axis::first_coordinate, b};
    PlanarSymbol sy{profile, Axis::second_coordinate, b};
    int M = scheme.M;
    if (j == 0) return commutator_trace(build_toeplitz(sx, M), build_toeplitz(sy, M), scheme);
    // one table serves both axes
    Eigen::MatrixXd A = series_table(table_profile(sx), M + 1);
    BasisTag tag{BasisTag::Kind::landau_level, 1};
    ToeplitzMatrix TA{assemble_level1(A, M, true), sx, M, tag};
    ToeplitzMatrix TB{assemble_level1(A, M, false), sy, M, tag};
    return commutator_trace(TA, TB, scheme);
}

TraceReport cumulative_commutator_trace(int levels, const TruncationScheme& scheme,
                                        const SwitchFunction& profile, double b) {
    if (levels == 0) return level_commutator_trace(0, scheme, profile, b);
    if (levels != 1) throw std::invalid_argument("unsupported level count (expected 0 or 1)");
    scheme.validate();
    check_size(scheme.M);
    PlanarSymbol sx{profile, Axis::first_coordinate, b};
    PlanarSymbol sy{profile, Axis::second_coordinate, b};
    int M = scheme.M;
    Eigen::MatrixXd A = series_table(table_profile(sx), cumulative_table_size(M));
    BasisTag tag{BasisTag::Kind::landau_cumulative, 1};
    ToeplitzMatrix TA{assemble_cumulative(A, M, true), sx, M, tag};
    ToeplitzMatrix TB{assemble_cumulative(A, M, false), sy, M, tag};
    return commutator_trace(TA, TB, scheme);
}

}  // namespace principal
