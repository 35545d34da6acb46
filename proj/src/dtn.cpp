#include "superlens/dtn.hpp"

#include <cmath>

namespace superlens
{

CMatrix trace_analysis_matrix(const Grid &grid, int n_trunc)
{
  CMatrix e(2 * n_trunc + 1, grid.nx());
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    for (int i = 0; i < grid.nx(); i++)
    {
      e(n + n_trunc, i) = hat_trace_fourier(i, grid.hx(), n);
    }
  }
  return e;
}

void check_truncation(const Grid &grid, double omega, int n_trunc)
{
  const int cutoff = static_cast<int>(std::ceil(omega)) + 1;
  if (n_trunc < cutoff)
  {
    throw ConfigError("DtN truncation " + std::to_string(n_trunc) +
                      " drops propagating modes; need n_trunc >= " + std::to_string(cutoff));
  }
  if (n_trunc >= grid.nx() / 2)
  {
    throw ConfigError("DtN truncation " + std::to_string(n_trunc) +
                      " exceeds the grid Nyquist limit nx/2 - 1 = " +
                      std::to_string(grid.nx() / 2 - 1));
  }
}

DtnMatrix build_dtn(double alpha, double omega, const Grid &grid, int n_trunc, DtnFlavor flavor,
                    bool negate_beta)
{
  check_truncation(grid, omega, n_trunc);
  const CMatrix e = trace_analysis_matrix(grid, n_trunc);
  CVector d(2 * n_trunc + 1);
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    Complex be = beta(n + alpha, omega).value;
    if (negate_beta)
    {
      be = -be;
    }
    d(n + n_trunc) = flavor == DtnFlavor::forward ? Complex(0.0, 1.0) * be
                                                  : Complex(0.0, -1.0) * std::conj(be);
  }
  DtnMatrix out;
  out.alpha = alpha;
  out.omega = omega;
  out.n_trunc = n_trunc;
  out.flavor = flavor;
  out.matrix = kTwoPi * (e.adjoint() * d.asDiagonal() * e);
  return out;
}

}  // namespace superlens
