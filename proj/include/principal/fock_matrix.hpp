#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "principal/planar_symbol.hpp"

namespace principal {

struct BasisTag {
    enum class Kind { fock_lll, landau_level, landau_cumulative, hardy };
    Kind kind = Kind::fock_lll;
    int level = 0;  // meaningful for landau_level / landau_cumulative
    std::string str() const;
};

// Dense truncation of a compressed multiplication operator in an explicit
// orthonormal basis.
struct ToeplitzMatrix {
    Eigen::MatrixXcd entries;
    PlanarSymbol symbol;
    int M = 0;
    BasisTag basis_tag;
};

// Size cap for operator truncations; configurable through the environment
// variable PRINCIPAL_TRACE_MAX_M (default 4096).
int max_matrix_size();

// <phi_m, profile(x) phi_n> at b=2 for all 0 <= m,n < size, axis-first, which
// is real symmetric.  Evaluated by the closed 1D series (see series notes in
// fock_matrix.cpp) in extended precision; precision_bits raises the working
// precision base (0 = default).  threads parallelizes entry assembly; the
// result is bit-identical for any thread count.
Eigen::MatrixXd series_table(const SwitchFunction& profile, int size,
                             int precision_bits = 0, int threads = 1);

// Single matrix element of the planar symbol, any axis and field strength.
std::complex<double> matrix_element(int m, int n, const PlanarSymbol& symbol,
                                    int precision_bits = 0);

ToeplitzMatrix build_toeplitz(const PlanarSymbol& symbol, int M,
                              int precision_bits = 0, int threads = 1);

// c_n = Gamma(n+3/2)/sqrt(n!(n+1)!) for n = 0..count-1: the nonzero matrix
// elements <phi_{n+1}, (z/|z|) phi_n>, evaluated in log space.
std::vector<double> shift_weights(int count);

// Fredholm index of the weighted unilateral shift with the given weights:
// strictly positive weights give a trivial kernel and the one-dimensional
// cokernel spanned by e_0, hence index -1.
int shift_index_certificate(const std::vector<double>& weights);

// CSV dump: "# symbol=<kind> axis=<axis> b=<b> M=<M> basis=<tag>" header,
// then rows m,n,re,im at 17 significant digits.
std::string matrix_csv(const ToeplitzMatrix& T);

}  // namespace principal
