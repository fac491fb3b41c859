#pragma once

#include <map>
#include <string>

#include "principal/qpoly.hpp"

namespace principal {

// Finite Laurent polynomial sum_k c_k z^k on the unit circle, exact
// Gaussian-rational coefficients.
struct LaurentSymbol {
    std::map<int, GaussianRational> coefficients;  // zero coefficients not stored

    void set(int k, const GaussianRational& c);
    GaussianRational coefficient(int k) const;
    int bandwidth() const;  // max |k| over nonzero coefficients, 0 when empty
    bool operator==(const LaurentSymbol& o) const { return coefficients == o.coefficients; }
    std::string str() const;

    static LaurentSymbol z(int k, const GaussianRational& c = GaussianRational(1));
    // Comma-separated "k:coeff" pairs, coeff a rational like -3/7 or a
    // Gaussian rational like (1/2+1/3i); e.g. "1:1, -1:1/2".
    static LaurentSymbol parse(const std::string& text);
};

// L x L compression of multiplication by the symbol to the holomorphic
// half: entry(m,n) = coefficient(m-n).  Exact entries; banded by bandwidth.
struct HardyToeplitzMatrix {
    int L = 0;
    std::vector<GaussianRational> entries;  // row-major

    const GaussianRational& entry(int m, int n) const { return entries[m * L + n]; }
    static HardyToeplitzMatrix build(const LaurentSymbol& symbol, int L);
};

// Exact trace of [T_f, T_g].  The commutator entry (m,n) vanishes whenever
// min(m,n) >= K_f + K_g, so the trace is the diagonal sum over m < K_f + K_g
// evaluated inside an L x L truncation with L >= 2(K_f + K_g) + 2, where that
// block is exact; the default picks the smallest such L.  Note the full
// truncated diagonal would sum to zero by cyclicity -- the window is what
// recovers the trace-class value.  Convention: Tr[T_conj(z), T_z] = +1.
GaussianRational exact_commutator_trace(const LaurentSymbol& f, const LaurentSymbol& g,
                                        int L = -1);

// Extension of the symbol from the circle to the disc: z^k -> (x+iy)^k and
// z^{-k} -> (x-iy)^k for k > 0, expanded exactly.
QPolynomial2 harmonic_extension(const LaurentSymbol& f);

// A different smooth extension agreeing on the boundary:
// z^{-k} -> (x-iy)^k (x^2+y^2).  Used to test that the disc integral of the
// bracket does not depend on the extension choice.
QPolynomial2 alternative_extension(const LaurentSymbol& f);

struct HeltonHoweResult {
    GaussianRational lhs;  // exact finite-rank commutator trace
    GaussianRational rhs;  // (1/2 pi i) * disc integral of the bracket, pi cancelled
    bool equal = false;
};

// Both sides of Tr[T_f, T_g] = (1/2 pi i) int_D {f~, g~} dx dy, exactly.
HeltonHoweResult helton_howe_check(const LaurentSymbol& f, const LaurentSymbol& g);

}  // namespace principal
