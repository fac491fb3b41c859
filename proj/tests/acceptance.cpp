// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "principal/hardy.hpp"
#include "principal/landau.hpp"
#include "principal/qpoly.hpp"
#include "principal/quadrature.hpp"
#include "principal/switch_function.hpp"
#include "principal/trace_engine.hpp"
#include "test_helpers.hpp"

using namespace principal;

namespace {

int failures = 0;

void line(int k, bool ok, const char* fmt, ...) {
    if (!ok) ++failures;
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", k, buf);
    std::fflush(stdout);
}

const std::complex<double> kTwoPiI(0.0, 2.0 * M_PI);

double quant_err(const TraceReport& r, double target) {
    return std::abs(kTwoPiI * r.value - target);
}

std::vector<WeightedWord> power_word(const char* pair, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += pair;
    return {{OperatorWord(s), 1.0}};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;

    // --- shared heaviside b=2 pair, built once at the largest truncation ---
    auto t0 = clock::now();
    SwitchFunction step = SwitchFunction::heaviside(0.0);
    ToeplitzMatrix A = build_toeplitz({step, Axis::first_coordinate}, 256);
    ToeplitzMatrix B = build_toeplitz({step, Axis::second_coordinate}, 256);
    TraceReport r64 = commutator_trace(A, B, TruncationScheme(64, 32));
    TraceReport r128 = commutator_trace(A, B, TruncationScheme(128, 64));
    TraceReport r256 = commutator_trace(A, B, TruncationScheme(256, 128));
    double secs = std::chrono::duration<double>(clock::now() - t0).count();

    // 1. integer quantization with strictly decreasing error, bounded runtime
    {
        double e64 = quant_err(r64, 1.0), e128 = quant_err(r128, 1.0),
               e256 = quant_err(r256, 1.0);
        bool ok = e256 <= 1e-3 && e64 > e128 && e128 > e256 && secs < 120.0;
        line(1, ok,
             "integer quantization: |2pi i tr - 1| = %.2e at M=256; sweep %.2e > %.2e > "
             "%.2e; %.1f s",
             e256, e64, e128, e256, secs);
    }

    // 2. fractional traces 1/n for n = 2, 3
    TraceReport w2 = windowed_trace(power_word("AB", 2), power_word("BA", 2), A, B,
                                    TruncationScheme(256, 128));
    TraceReport w3 = windowed_trace(power_word("AB", 3), power_word("BA", 3), A, B,
                                    TruncationScheme(256, 128));
    {
        double e2 = quant_err(w2, 0.5), e3 = quant_err(w3, 1.0 / 3.0);
        line(2, e2 <= 2e-3 && e3 <= 2e-3,
             "fractional traces: |2pi i tr - 1/2| = %.2e, |2pi i tr - 1/3| = %.2e", e2, e3);
    }

    // 3. cyclicity trap: full-window traces vanish
    {
        TruncationScheme full(256, 256);
        double worst = std::abs(commutator_trace(A, B, full).value);
        for (int n : {2, 3})
            worst = std::max(worst, std::abs(windowed_trace(power_word("AB", n),
                                                            power_word("BA", n), A, B, full)
                                                 .value));
        line(3, worst <= 1e-12, "cyclicity trap: largest full-window |trace| = %.2e", worst);
    }

    // 4. exact rationality of the square-region bracket integrals
    {
        bool ok = true;
        for (int n = 1; n <= 20 && ok; ++n) {
            QPolynomial2 p = QPolynomial2::monomial(n, n - 1, GaussianRational(1));
            GaussianRational got =
                unit_square_integral_rational(poisson_bracket(p, QPolynomial2::y()));
            ok = got == GaussianRational(mpq_class(1, n));
        }
        line(4, ok,
             "exact rationality: int_S {x^n y^(n-1), y} = 1/n for n <= 20, "
             "rational-typed (no pi slot)");
    }

    // 5. Hardy exact equality, deterministic suite + convention + 100 randoms
    {
        bool ok = true;
        for (int m = 1; m <= 3; ++m) {
            GaussianRational tr =
                exact_commutator_trace(LaurentSymbol::z(m), LaurentSymbol::z(-m));
            ok = ok && tr == GaussianRational(-m);
            ok = ok && helton_howe_check(LaurentSymbol::z(m), LaurentSymbol::z(-m)).equal;
        }
        ok = ok && exact_commutator_trace(LaurentSymbol::z(-1), LaurentSymbol::z(1)) ==
                       GaussianRational(1);
        testutil::Lcg rng(20240521);
        int equal_count = 0;
        for (int it = 0; it < 100; ++it) {
            LaurentSymbol f, g;
            for (int k = -4; k <= 4; ++k) {
                if (rng.below(2) == 0) f.set(k, testutil::random_gaussian(rng));
                if (rng.below(2) == 0) g.set(k, testutil::random_gaussian(rng));
            }
            if (helton_howe_check(f, g).equal) ++equal_count;
        }
        ok = ok && equal_count == 100;
        line(5, ok,
             "Hardy exact equality: {-1,-2,-3} suite, Tr[T_zbar,T_z] = +1, randomized "
             "%d/100 equal",
             equal_count);
    }

    // 6. principal-function consistency: trace / (i/2pi) = -1
    {
        std::complex<double> ratio = r256.value / std::complex<double>(0.0, 1.0 / (2.0 * M_PI));
        double err = std::abs(ratio - std::complex<double>(-1.0, 0.0));
        line(6, err <= 1e-3, "principal function: trace/(i/2pi) = -1 within %.2e", err);
    }

    // 7. switch integral identity across kinds and shifts
    {
        double worst = 0.0;
        SwitchFunction kinds[] = {SwitchFunction::heaviside(0.0),
                                  SwitchFunction::linear_ramp(-1.0, 1.0),
                                  SwitchFunction::erf_ramp(0.3, 0.8)};
        for (const auto& pr : kinds)
            for (double a : {-1.0, 0.5, 2.5})
                worst = std::max(worst, std::abs(switch_integral_check(pr, a) - a));
        line(7, worst <= 1e-8, "switch integral: worst |check - a| = %.2e", worst);
    }

    // 8. symbol- and field-independence of the quantized value
    {
        std::complex<double> q_ref = kTwoPiI * r256.value;
        SwitchFunction ramp = SwitchFunction::linear_ramp(-1.0, 1.0);
        TruncationScheme scheme(256, 128);
        auto run_pair = [&](const SwitchFunction& pr, double b) {
            ToeplitzMatrix X = build_toeplitz({pr, Axis::first_coordinate, b}, 256);
            ToeplitzMatrix Y = build_toeplitz({pr, Axis::second_coordinate, b}, 256);
            return kTwoPiI * commutator_trace(X, Y, scheme).value;
        };
        double d_ramp = std::abs(run_pair(ramp, 2.0) - q_ref);
        double d_b1 = std::abs(run_pair(step, 1.0) - q_ref);
        double d_b4 = std::abs(run_pair(step, 4.0) - q_ref);
        line(8, d_ramp <= 2e-3 && d_b1 <= 2e-3 && d_b4 <= 2e-3,
             "independence: ramp %.2e, b=1 %.2e, b=4 %.2e from the b=2 heaviside value",
             d_ramp, d_b1, d_b4);
    }

    // 9. weighted shift: Gamma formula vs quadrature, monotone, index -1
    {
        std::vector<double> w = shift_weights(200);
        double worst = 0.0;
        bool increasing = true;
        for (int n = 0; n < 200; ++n) {
            worst = std::max(worst, std::abs(w[n] - shift_weight_quadrature(n)));
            if (n > 0 && w[n] <= w[n - 1]) increasing = false;
        }
        int index = shift_index_certificate(w);
        bool ok = worst <= 1e-8 && increasing && w[199] > 0.995 && index == -1;
        line(9, ok, "shift index: worst |c_n - oracle| = %.2e, c_199 = %.6f, index %d", worst,
             w[199], index);
    }

    // 10. Landau additivity at level 1
    {
        TruncationScheme scheme(256, 128);
        TraceReport r1 = level_commutator_trace(1, scheme);
        TraceReport rc = cumulative_commutator_trace(1, scheme);
        double e1 = quant_err(r1, 1.0);
        double ec = quant_err(rc, 2.0);
        double add = std::abs(kTwoPiI * (rc.value - r256.value - r1.value));
        line(10, e1 <= 1e-2 && ec <= 1e-2 && add <= 1e-2,
             "Landau additivity: level-1 %.2e, cumulative %.2e, residual %.2e", e1, ec, add);
    }

    // 11. ordering invariance for p = xy, q = y
    {
        QPolynomial2 p = QPolynomial2::monomial(1, 1, GaussianRational(1));
        QPolynomial2 q = QPolynomial2::y();
        TruncationScheme scheme(256, 128);
        auto vl = word_trace_for_polynomials(p, q, WordOrdering::left_normal, A, B, scheme);
        auto vr = word_trace_for_polynomials(p, q, WordOrdering::right_normal, A, B, scheme);
        double diff = std::abs(vl.value - vr.value);
        line(11, diff <= 1e-6, "ordering invariance: |left - right| = %.2e", diff);
    }

    // 12. property suites: bracket laws, collapsing pairs, anti-Hermitian diagonal
    {
        testutil::Lcg rng(987654321);
        bool laws = true;
        for (int it = 0; it < 500 && laws; ++it) {
            QPolynomial2 p = testutil::random_poly(rng);
            QPolynomial2 q = testutil::random_poly(rng);
            QPolynomial2 r = testutil::random_poly(rng);
            laws = laws && poisson_bracket(p, q) == poisson_bracket(q, p).scaled(
                                                        GaussianRational(-1));
            laws = laws && poisson_bracket(p, q * r) ==
                               poisson_bracket(p, q) * r + q * poisson_bracket(p, r);
            QPolynomial2 jac = poisson_bracket(p, poisson_bracket(q, r)) +
                               poisson_bracket(q, poisson_bracket(r, p)) +
                               poisson_bracket(r, poisson_bracket(p, q));
            laws = laws && jac.is_zero();
        }
        bool collapsing = true;
        for (int it = 0; it < 100 && collapsing; ++it) {
            QPolynomial1 r1 = testutil::random_poly1(rng);
            QPolynomial1 r2 = testutil::random_poly1(rng);
            QPolynomial2 s = testutil::random_poly(rng, 3, 3);
            collapsing = collapsing && collapsing_check(r1, r2, s);
        }
        double worst_re = 0.0;
        for (const auto& d : r256.per_index_diagonal)
            worst_re = std::max(worst_re, std::abs(d.real()));
        bool ok = laws && collapsing && worst_re <= 1e-10;
        line(12, ok,
             "property suites: 500 bracket laws %s, 100 collapsing %s, max |Re diag| = "
             "%.2e",
             laws ? "exact" : "VIOLATED", collapsing ? "exact" : "VIOLATED", worst_re);
    }

    if (failures == 0) {
        std::printf("all 12 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
