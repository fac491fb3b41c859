#pragma once

#include "principal/fock_matrix.hpp"
#include "principal/trace_engine.hpp"

namespace principal {

// Members of the j-th magnetic eigenspace at b=2, j in {0, 1}:
//   level 0:  psi_{0,n} = z^n e^{-|z|^2/2} / sqrt(pi n!),                n >= 0
//   level 1:  psi_{1,-1} = conj(z) e^{-|z|^2/2} / sqrt(pi)
//             psi_{1,m}  = z^m ((m+1) - |z|^2) e^{-|z|^2/2}
//                          / sqrt(pi (m+1)!),                            m >= 0
// The member index m >= -j doubles as the angular momentum label.  Other
// field strengths reuse the b=2 family through the same symbol rescaling as
// the core matrix builder: the b matrix of profile(x) equals the b=2 matrix
// of profile(x * sqrt(2/b)).

// <psi_{j1,m1}, psi_{j2,m2}> by independent 2D quadrature: an orthonormality
// oracle for the basis family (delta_{j1 j2} delta_{m1 m2}).
std::complex<double> level_basis_inner_product(int j1, int m1, int j2, int m2,
                                               int nodes_per_panel = 128);

// <psi_{j,m}, f psi_{j,n}> by 2D quadrature with log-stable basis
// evaluation; the oracle route for the closed-form builders below.  For
// j = 0 this reproduces matrix_element.
std::complex<double> level_matrix_element(int j, int m, int n, const PlanarSymbol& symbol,
                                          int nodes_per_panel = 128);

// Mixed-level variant <psi_{j1,m1}, f psi_{j2,m2}>, the oracle for the
// cross-level blocks of cumulative_matrix.
std::complex<double> level_pair_element(int j1, int m1, int j2, int m2,
                                        const PlanarSymbol& symbol, int nodes_per_panel = 128);

// Dense M x M compression onto level j, row/column p <-> member index p-j,
// built from the b=2 series table (production route).
ToeplitzMatrix build_level_toeplitz(int j, const PlanarSymbol& symbol, int M,
                                    int precision_bits = 0, int threads = 1);

// Fixed interleaving of the level-(0..1) cumulative basis: position p holds
//   p = 0        -> (level 1, member -1)
//   p odd        -> (level 0, member (p-1)/2)
//   p even, p>0  -> (level 1, member p/2 - 1)
// so a size-N window covers both eigenspaces with matched angular momenta.
struct CumulativeMember {
    int level;
    int member;
};
CumulativeMember cumulative_member(int p);

// Compression onto the direct sum of levels 0..levels in the interleaved
// order above (cross-level blocks included; the matrix is not
// block-diagonal).  levels = 0 reduces to build_toeplitz.
ToeplitzMatrix cumulative_matrix(int levels, const PlanarSymbol& symbol, int M,
                                 int precision_bits = 0, int threads = 1);

// Windowed commutator trace of the profile(x), profile(y) pair compressed
// to level j (or to the cumulative 0..levels basis).
TraceReport level_commutator_trace(int j, const TruncationScheme& scheme,
                                   const SwitchFunction& profile = SwitchFunction::heaviside(0.0),
                                   double b = 2.0);
TraceReport cumulative_commutator_trace(int levels, const TruncationScheme& scheme,
                                        const SwitchFunction& profile = SwitchFunction::heaviside(0.0),
                                        double b = 2.0);

}  // namespace principal
