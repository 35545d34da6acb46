#ifndef SUPERLENS_DTN_HPP
#define SUPERLENS_DTN_HPP

#include <Eigen/Dense>

#include "superlens/domain.hpp"
#include "superlens/source.hpp"

namespace superlens
{

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class DtnFlavor
{
  forward,
  adjoint
};

//
// Truncated Dirichlet-to-Neumann operator on one boundary line, as the Galerkin block
//   matrix(k, l) = int_0^{2pi} (T phi_l) phi_k dx = 2pi sum_{|n|<=N} conj(E(n,k)) d_n E(n,l)
// with E(n, l) the exact Fourier coefficients of the boundary hat functions and
// d_n = i beta(n+alpha) (forward) or -i conj(beta(n+alpha)) (adjoint).
//
struct DtnMatrix
{
  double alpha = 0.0;
  double omega = 1.0;
  int n_trunc = 0;
  DtnFlavor flavor = DtnFlavor::forward;
  CMatrix matrix;
};

// (2N+1) x nx matrix mapping nodal boundary values to Fourier coefficients n = -N..N.
CMatrix trace_analysis_matrix(const Grid &grid, int n_trunc);

// Throws ConfigError if n_trunc < ceil(omega) + 1 or n_trunc >= nx / 2.
void check_truncation(const Grid &grid, double omega, int n_trunc);

// When negate_beta is set the mode exponents enter with the wrong sign (incoming
// instead of outgoing waves); used only for fault injection in verification.
DtnMatrix build_dtn(double alpha, double omega, const Grid &grid, int n_trunc, DtnFlavor flavor,
                    bool negate_beta = false);

}  // namespace superlens

#endif  // SUPERLENS_DTN_HPP
