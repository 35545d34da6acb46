#ifndef ORACLES_ORACLES_HPP
#define ORACLES_ORACLES_HPP

#include <complex>
#include <vector>

namespace oracles
{

using cplx = std::complex<double>;

// Outgoing vertical wavenumber: sqrt(omega^2 - xi^2) with Im >= 0.
cplx kz(double xi, double omega);

//
// Periodic part of the alpha-component of the free field of a unit point source at
// (0, h), evaluated below the source (y < h):
//   sum_{|n| <= n_trunc} e^{i kz(n+alpha) (h - y)} / (pi kz(n+alpha)) e^{inx}
//
cplx vacuum_floquet(double alpha, double omega, double h, int n_trunc, double x, double y);

// Same sum taken in the far half-plane below a slab of thickness b filled with vacuum,
// i.e. the mode coefficient of the downgoing wave on y = -b.
cplx vacuum_mode_below(int n, double alpha, double omega, double h, double b);

struct Layer
{
  double thickness;
  double rho;
};

//
// 1-D transfer matrix for u'' + (omega^2 rho - xi^2) u = 0 across a stack of layers
// ordered bottom to top, with vacuum above and below. Returns t such that a downgoing
// unit-amplitude wave at the top interface produces amplitude t just below the stack.
//
cplx layered_transmission(const std::vector<Layer> &layers, double xi, double omega);

// H_0^(1)(omega r) for the source at (0, h), via the standard library Bessel functions.
cplx point_source(double omega, double h, double x, double y);

}  // namespace oracles

#endif  // ORACLES_ORACLES_HPP
