// Closed-form series evaluation of Fock-Toeplitz matrix elements.
//
// For an axis-first symbol at b=2 the entries reduce to a finite 1D series
// over derivatives of the Gaussian-smoothed profile at 0:
//
//   A(m,n) = sqrt(m! n!) * sum_j lambda_{m+n-2j} * C(m+n-2j, m-j) / j!
//   lambda_k = smoothed^{(k)}(0) / (2^k k!)
//
// obtained from the generating function sum_{m,n} I_mn s^m t^n / (m! n!)
// = pi e^{st} smoothed((s+t)/2).  The terms are evaluated by a product
// recurrence entirely in extended precision: the intermediate factors
// overflow double exponents long before m+n reaches practical sizes, even
// though every final term is O(1).
#include "principal/fock_matrix.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <sstream>
#include <thread>

namespace principal {

namespace {

// Minimal RAII holder for one mpfr value.
struct MpReal {
    mpfr_t v;
    explicit MpReal(mpfr_prec_t p) { mpfr_init2(v, p); }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_swap(v, o.v);
    }
    MpReal(const MpReal&) = delete;
    MpReal& operator=(const MpReal&) = delete;
    ~MpReal() { mpfr_clear(v); }
};

constexpr int kDefaultBaseBits = 128;

// lambda_k tables: closed-form Hermite-times-Gaussian derivative values for
// each profile kind, divided by 2^k k! as the recurrences advance.
std::vector<MpReal> lambda_table(const SwitchFunction& pr, int kmax, mpfr_prec_t P) {
    std::vector<MpReal> lam;
    lam.reserve(kmax + 1);
    for (int k = 0; k <= kmax; ++k) lam.emplace_back(P);

    MpReal sqrt_pi(P), t(P), u(P);
    mpfr_const_pi(sqrt_pi.v, MPFR_RNDN);
    mpfr_sqrt(sqrt_pi.v, sqrt_pi.v, MPFR_RNDN);

    auto gaussian = [&](double c, mpfr_t out) {  // e^{-c^2}
        mpfr_set_d(out, c, MPFR_RNDN);
        mpfr_sqr(out, out, MPFR_RNDN);
        mpfr_neg(out, out, MPFR_RNDN);
        mpfr_exp(out, out, MPFR_RNDN);
    };

    switch (pr.kind) {
        case SwitchFunction::Kind::heaviside: {
            double a = pr.p1;
            mpfr_set_d(t.v, a, MPFR_RNDN);
            mpfr_erfc(lam[0].v, t.v, MPFR_RNDN);
            mpfr_div_ui(lam[0].v, lam[0].v, 2, MPFR_RNDN);
            // g_k = e^{-a^2} / (sqrt(pi) 2^k k!), H_{k-1}(a) by recurrence
            MpReal g(P), Hm1(P), Hm2(P), a2(P);
            gaussian(a, g.v);
            mpfr_div(g.v, g.v, sqrt_pi.v, MPFR_RNDN);
            mpfr_div_ui(g.v, g.v, 2, MPFR_RNDN);  // k = 1
            mpfr_set_ui(Hm1.v, 1, MPFR_RNDN);     // H_0
            mpfr_set_ui(Hm2.v, 0, MPFR_RNDN);
            mpfr_set_d(a2.v, 2.0 * a, MPFR_RNDN);
            for (int k = 1; k <= kmax; ++k) {
                mpfr_mul(lam[k].v, Hm1.v, g.v, MPFR_RNDN);
                // H_k = 2a H_{k-1} - 2(k-1) H_{k-2}
                mpfr_mul(t.v, a2.v, Hm1.v, MPFR_RNDN);
                mpfr_mul_ui(u.v, Hm2.v, 2 * (k - 1), MPFR_RNDN);
                mpfr_swap(Hm2.v, Hm1.v);
                mpfr_sub(Hm1.v, t.v, u.v, MPFR_RNDN);
                mpfr_div_ui(g.v, g.v, 2 * (k + 1), MPFR_RNDN);
            }
            break;
        }
        case SwitchFunction::Kind::linear_ramp: {
            double c = pr.p1, d = pr.p2;
            MpReal ec(P), ed(P), erfc_(P), erfd(P), w(P);
            gaussian(c, ec.v);
            gaussian(d, ed.v);
            mpfr_set_d(t.v, c, MPFR_RNDN);
            mpfr_erf(erfc_.v, t.v, MPFR_RNDN);
            mpfr_set_d(t.v, d, MPFR_RNDN);
            mpfr_erf(erfd.v, t.v, MPFR_RNDN);
            mpfr_set_d(w.v, d, MPFR_RNDN);
            mpfr_sub_d(w.v, w.v, c, MPFR_RNDN);  // d - c

            // lambda_0 = (e^{-c^2}-e^{-d^2})/(2 sqrt(pi) w)
            //          - c (erf d - erf c)/(2w) + erfc(d)/2
            mpfr_sub(t.v, ec.v, ed.v, MPFR_RNDN);
            mpfr_div(t.v, t.v, sqrt_pi.v, MPFR_RNDN);
            mpfr_div(t.v, t.v, w.v, MPFR_RNDN);
            mpfr_div_ui(t.v, t.v, 2, MPFR_RNDN);
            mpfr_sub(u.v, erfd.v, erfc_.v, MPFR_RNDN);
            mpfr_div(u.v, u.v, w.v, MPFR_RNDN);
            mpfr_div_ui(u.v, u.v, 2, MPFR_RNDN);
            mpfr_mul_d(u.v, u.v, -c, MPFR_RNDN);
            mpfr_add(lam[0].v, t.v, u.v, MPFR_RNDN);
            mpfr_set_d(t.v, d, MPFR_RNDN);
            mpfr_erfc(t.v, t.v, MPFR_RNDN);
            mpfr_div_ui(t.v, t.v, 2, MPFR_RNDN);
            mpfr_add(lam[0].v, lam[0].v, t.v, MPFR_RNDN);

            if (kmax >= 1) {
                // lambda_1 = (erf d - erf c)/(4w)
                mpfr_sub(lam[1].v, erfd.v, erfc_.v, MPFR_RNDN);
                mpfr_div(lam[1].v, lam[1].v, w.v, MPFR_RNDN);
                mpfr_div_ui(lam[1].v, lam[1].v, 4, MPFR_RNDN);
            }
            // k>=2: (H_{k-2}(c) e^{-c^2} - H_{k-2}(d) e^{-d^2}) / (w sqrt(pi) 2^k k!)
            MpReal g(P), Hc1(P), Hc2(P), Hd1(P), Hd2(P), c2(P), d2(P);
            mpfr_set_ui(g.v, 1, MPFR_RNDN);
            mpfr_div(g.v, g.v, w.v, MPFR_RNDN);
            mpfr_div(g.v, g.v, sqrt_pi.v, MPFR_RNDN);
            mpfr_div_ui(g.v, g.v, 8, MPFR_RNDN);  // 2^2 2! = 8 at k=2
            mpfr_set_ui(Hc1.v, 1, MPFR_RNDN);
            mpfr_set_ui(Hc2.v, 0, MPFR_RNDN);
            mpfr_set_ui(Hd1.v, 1, MPFR_RNDN);
            mpfr_set_ui(Hd2.v, 0, MPFR_RNDN);
            mpfr_set_d(c2.v, 2.0 * c, MPFR_RNDN);
            mpfr_set_d(d2.v, 2.0 * d, MPFR_RNDN);
            for (int k = 2; k <= kmax; ++k) {
                mpfr_mul(t.v, Hc1.v, ec.v, MPFR_RNDN);
                mpfr_mul(u.v, Hd1.v, ed.v, MPFR_RNDN);
                mpfr_sub(t.v, t.v, u.v, MPFR_RNDN);
                mpfr_mul(lam[k].v, t.v, g.v, MPFR_RNDN);
                int j = k - 1;  // advance both Hermite streams to H_j
                mpfr_mul(t.v, c2.v, Hc1.v, MPFR_RNDN);
                mpfr_mul_ui(u.v, Hc2.v, 2 * (j - 1), MPFR_RNDN);
                mpfr_swap(Hc2.v, Hc1.v);
                mpfr_sub(Hc1.v, t.v, u.v, MPFR_RNDN);
                mpfr_mul(t.v, d2.v, Hd1.v, MPFR_RNDN);
                mpfr_mul_ui(u.v, Hd2.v, 2 * (j - 1), MPFR_RNDN);
                mpfr_swap(Hd2.v, Hd1.v);
                mpfr_sub(Hd1.v, t.v, u.v, MPFR_RNDN);
                mpfr_div_ui(g.v, g.v, 2 * (k + 1), MPFR_RNDN);
            }
            break;
        }
        case SwitchFunction::Kind::erf_ramp: {
            // smoothing an erf step widens it: effective slope tau = 1/sqrt(1+w^2)
            double w = pr.p2;
            double tau_d = 1.0 / std::sqrt(1.0 + w * w);
            MpReal tau(P), s(P), g(P), Hm1(P), Hm2(P), s2(P);
            mpfr_set_d(tau.v, w, MPFR_RNDN);
            mpfr_sqr(tau.v, tau.v, MPFR_RNDN);
            mpfr_add_ui(tau.v, tau.v, 1, MPFR_RNDN);
            mpfr_sqrt(tau.v, tau.v, MPFR_RNDN);
            mpfr_ui_div(tau.v, 1, tau.v, MPFR_RNDN);
            mpfr_mul_d(s.v, tau.v, pr.p1, MPFR_RNDN);  // s = center * tau
            mpfr_erfc(lam[0].v, s.v, MPFR_RNDN);
            mpfr_div_ui(lam[0].v, lam[0].v, 2, MPFR_RNDN);
            // g_k = tau^k e^{-s^2} / (sqrt(pi) 2^k k!), H_{k-1}(s)
            mpfr_sqr(g.v, s.v, MPFR_RNDN);
            mpfr_neg(g.v, g.v, MPFR_RNDN);
            mpfr_exp(g.v, g.v, MPFR_RNDN);
            mpfr_div(g.v, g.v, sqrt_pi.v, MPFR_RNDN);
            mpfr_mul(g.v, g.v, tau.v, MPFR_RNDN);
            mpfr_div_ui(g.v, g.v, 2, MPFR_RNDN);
            mpfr_set_ui(Hm1.v, 1, MPFR_RNDN);
            mpfr_set_ui(Hm2.v, 0, MPFR_RNDN);
            mpfr_mul_ui(s2.v, s.v, 2, MPFR_RNDN);
            for (int k = 1; k <= kmax; ++k) {
                mpfr_mul(lam[k].v, Hm1.v, g.v, MPFR_RNDN);
                mpfr_mul(t.v, s2.v, Hm1.v, MPFR_RNDN);
                mpfr_mul_ui(u.v, Hm2.v, 2 * (k - 1), MPFR_RNDN);
                mpfr_swap(Hm2.v, Hm1.v);
                mpfr_sub(Hm1.v, t.v, u.v, MPFR_RNDN);
                mpfr_mul(g.v, g.v, tau.v, MPFR_RNDN);
                mpfr_div_ui(g.v, g.v, 2 * (k + 1), MPFR_RNDN);
            }
            (void)tau_d;
            break;
        }
    }
    return lam;
}

struct SeriesEngine {
    std::vector<MpReal> lam;
    std::vector<MpReal> lgamma_;  // lgamma_[i] = ln(i!)
    int base_bits;

    SeriesEngine(const SwitchFunction& profile, int max_index, int precision_bits)
        : base_bits(precision_bits > 0 ? precision_bits : kDefaultBaseBits) {
        int kmax = 2 * max_index;
        mpfr_prec_t Ptop = base_bits + 2 * max_index + 96;
        lam = lambda_table(profile, kmax, Ptop);
        lgamma_.reserve(kmax + 2);
        MpReal t(Ptop);
        for (int i = 0; i <= kmax + 1; ++i) {
            lgamma_.emplace_back(Ptop);
            mpfr_set_ui(t.v, static_cast<unsigned long>(i) + 1, MPFR_RNDN);
            mpfr_lngamma(lgamma_.back().v, t.v, MPFR_RNDN);
        }
    }

    double entry(int m, int n) const {
        mpfr_prec_t P = base_bits + 64 + m + n;
        MpReal W(P), S(P), T(P);
        // W_0 = (m+n)! / sqrt(m! n!)
        mpfr_add(T.v, lgamma_[m].v, lgamma_[n].v, MPFR_RNDN);
        mpfr_div_ui(T.v, T.v, 2, MPFR_RNDN);
        mpfr_sub(W.v, lgamma_[m + n].v, T.v, MPFR_RNDN);
        mpfr_exp(W.v, W.v, MPFR_RNDN);
        int k = m + n;
        mpfr_mul(S.v, lam[k].v, W.v, MPFR_RNDN);
        int jmax = std::min(m, n);
        for (int j = 1; j <= jmax; ++j) {
            // W_j = W_{j-1} (m-j+1)(n-j+1) / (j k (k-1)) with k = m+n-2(j-1)
            unsigned long num = static_cast<unsigned long>(m - j + 1) *
                                static_cast<unsigned long>(n - j + 1);
            unsigned long den = static_cast<unsigned long>(j) *
                                static_cast<unsigned long>(k) *
                                static_cast<unsigned long>(k - 1);
            mpfr_mul_ui(W.v, W.v, num, MPFR_RNDN);
            mpfr_div_ui(W.v, W.v, den, MPFR_RNDN);
            k -= 2;
            mpfr_mul(T.v, lam[k].v, W.v, MPFR_RNDN);
            mpfr_add(S.v, S.v, T.v, MPFR_RNDN);
        }
        return mpfr_get_d(S.v, MPFR_RNDN);
    }
};

std::complex<double> axis_phase(int m, int n) {
    // i^(n-m)
    switch (((n - m) % 4 + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

SwitchFunction rescaled_profile(const PlanarSymbol& symbol) {
    // the b-field matrix of profile(x) equals the b=2 matrix of
    // profile(x * sqrt(2/b)), i.e. parameters scaled by sqrt(b/2)
    return symbol.profile.parameter_scaled(std::sqrt(symbol.b / 2.0));
}

}  // namespace

std::string BasisTag::str() const {
    switch (kind) {
        case Kind::fock_lll:
            return "fock_lll";
        case Kind::landau_level:
            return "landau_level(" + std::to_string(level) + ")";
        case Kind::landau_cumulative:
            return "landau_cumulative(" + std::to_string(level) + ")";
        case Kind::hardy:
            return "hardy";
    }
    return "?";
}

int max_matrix_size() {
    if (const char* cap = std::getenv("PRINCIPAL_TRACE_MAX_M")) {
        char* end = nullptr;
        long v = std::strtol(cap, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 4096;
}

Eigen::MatrixXd series_table(const SwitchFunction& profile, int size,
                             int precision_bits, int threads) {
    if (size < 1) throw std::invalid_argument("table size must be positive");
    SeriesEngine eng(profile, size, precision_bits);
    Eigen::MatrixXd A(size, size);
    auto run_rows = [&](int first, int step) {
        for (int m = first; m < size; m += step)
            for (int n = m; n < size; ++n) A(m, n) = eng.entry(m, n);
    };
    if (threads <= 1) {
        run_rows(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(run_rows, t, threads);
        for (auto& th : pool) th.join();
    }
    for (int m = 0; m < size; ++m)
        for (int n = 0; n < m; ++n) A(m, n) = A(n, m);
    return A;
}

std::complex<double> matrix_element(int m, int n, const PlanarSymbol& symbol,
                                    int precision_bits) {
    if (m < 0 || n < 0) throw std::invalid_argument("negative basis index");
    SeriesEngine eng(rescaled_profile(symbol), std::max(m, n), precision_bits);
    double real_entry = eng.entry(m, n);
    if (symbol.axis == Axis::first_coordinate) return {real_entry, 0.0};
    return axis_phase(m, n) * real_entry;
}

ToeplitzMatrix build_toeplitz(const PlanarSymbol& symbol, int M, int precision_bits,
                              int threads) {
    if (M < 1) throw std::invalid_argument("matrix size must be positive");
    if (M > max_matrix_size())
        throw std::length_error("matrix size exceeds configured maximum (" +
                                std::to_string(max_matrix_size()) + ")");
    Eigen::MatrixXd A = series_table(rescaled_profile(symbol), M, precision_bits, threads);
    ToeplitzMatrix T{Eigen::MatrixXcd(M, M), symbol, M, BasisTag{}};
    if (symbol.axis == Axis::first_coordinate) {
        T.entries = A.cast<std::complex<double>>();
    } else {
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < M; ++n) T.entries(m, n) = axis_phase(m, n) * A(m, n);
    }
    return T;
}

std::vector<double> shift_weights(int count) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    std::vector<double> c(count);
    for (int n = 0; n < count; ++n)
        c[n] = std::exp(std::lgamma(n + 1.5) -
                        0.5 * (std::lgamma(n + 1.0) + std::lgamma(n + 2.0)));
    return c;
}

int shift_index_certificate(const std::vector<double>& weights) {
    for (double c : weights)
        if (!(c > 0.0))
            throw std::domain_error("shift weight not positive: kernel nontrivial");
    // injective with cokernel spanned by e_0
    return -1;
}

std::string matrix_csv(const ToeplitzMatrix& T) {
    std::ostringstream os;
    os << "# symbol=" << T.symbol.profile.kind_name()
       << " axis=" << (T.symbol.axis == Axis::first_coordinate ? "first" : "second")
       << " b=" << T.symbol.b << " M=" << T.M << " basis=" << T.basis_tag.str() << "\n";
    os << "m,n,re,im\n";
    char buf[128];
    for (int m = 0; m < T.M; ++m)
        for (int n = 0; n < T.M; ++n) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g", m, n,
                          T.entries(m, n).real(), T.entries(m, n).imag());
            os << buf << "\n";
        }
    return os.str();
}

}  // namespace principal
