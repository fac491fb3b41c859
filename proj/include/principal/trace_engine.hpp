#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "principal/fock_matrix.hpp"
#include "principal/qpoly.hpp"

namespace principal {

// Double-cutoff truncation: operators are cut at M x M, but only the first N
// diagonal entries are summed.  Summing the full diagonal (N = M) of a
// commutator of finite matrices gives exactly 0 by cyclicity, destroying the
// trace-class limit; the window N < M is what recovers it.
struct TruncationScheme {
    int M = 0;
    int N = 0;
    bool extrapolate = false;

    TruncationScheme() = default;
    TruncationScheme(int M_, int N_, bool extrapolate_ = false)
        : M(M_), N(N_), extrapolate(extrapolate_) {
        validate();
    }
    // default window N = M/2
    static TruncationScheme with_default_window(int M, bool extrapolate = false);
    void validate() const;  // requires 1 <= N <= M
};

// Finite product of the two generators, e.g. "ABAB".
struct OperatorWord {
    std::string letters;
    OperatorWord(std::string s);  // non-empty, alphabet {A,B}
    OperatorWord(const char* s) : OperatorWord(std::string(s)) {}
};

struct WeightedWord {
    OperatorWord word;
    double weight = 1.0;
};

struct TraceReport {
    std::complex<double> value;
    int M = 0;
    int N = 0;
    double tail_estimate = 0.0;
    std::vector<std::complex<double>> per_index_diagonal;  // full M-length diagonal

    // {value_re, value_im, M, N, tail_estimate, diagonal: [[re,im],...]}
    std::string to_json() const;
};

// Windowed diagonal trace of sum(word_plus) - sum(word_minus) evaluated on
// the M x M truncations of A and B and summed (compensated, deterministic)
// over diagonal indices m < N.  tail_estimate = |last included entry| * N.
TraceReport windowed_trace(const std::vector<WeightedWord>& word_plus,
                           const std::vector<WeightedWord>& word_minus,
                           const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                           const TruncationScheme& scheme);
TraceReport windowed_trace(const std::vector<OperatorWord>& word_plus,
                           const std::vector<OperatorWord>& word_minus,
                           const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                           const TruncationScheme& scheme);

// windowed_trace([AB], [BA])
TraceReport commutator_trace(const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                             const TruncationScheme& scheme);

// Monomial ordering used to realize x^a y^b as an operator word.
enum class WordOrdering { left_normal /* A^a B^b */, right_normal /* B^b A^a */ };
WordOrdering ordering_from_name(const std::string& name);

// Windowed trace of [p(A,B), q(A,B)] with the monomials of p and q expanded
// under the given ordering.  Coefficients must be real rationals.  Constant
// terms commute with everything and are dropped from the expansion.
TraceReport word_trace_for_polynomials(const QPolynomial2& p, const QPolynomial2& q,
                                       WordOrdering ordering, const ToeplitzMatrix& A,
                                       const ToeplitzMatrix& B,
                                       const TruncationScheme& scheme);

// -i * commutator trace; the limit is real, and any imaginary residue of the
// numeric value is written to *imag_residue when given.
double hall_conductance(const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                        const TruncationScheme& scheme, double* imag_residue = nullptr);

// Limit estimate for trace values sampled at increasing M under an assumed
// geometric error decay error(M) = C rho^M, fit through the last three
// samples (for equally spaced M this reduces to Aitken delta-squared).
// Falls back to the raw largest-M value whenever the increments do not
// contract.  With exactly two samples the per-step ratio is taken as 1/2.
std::complex<double> richardson_extrapolate(
    const std::vector<std::pair<int, std::complex<double>>>& values);

}  // namespace principal
