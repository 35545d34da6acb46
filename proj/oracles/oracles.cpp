#include "oracles/oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracles
{

cplx kz(double xi, double omega)
{
  const double d = omega * omega - xi * xi;
  return d >= 0.0 ? cplx(std::sqrt(d), 0.0) : cplx(0.0, std::sqrt(-d));
}

cplx vacuum_floquet(double alpha, double omega, double h, int n_trunc, double x, double y)
{
  const cplx i(0.0, 1.0);
  cplx s = 0.0;
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    const cplx k = kz(n + alpha, omega);
    s += std::exp(i * k * (h - y)) / (std::numbers::pi * k) * std::exp(i * double(n) * x);
  }
  return s;
}

cplx vacuum_mode_below(int n, double alpha, double omega, double h, double b)
{
  const cplx k = kz(n + alpha, omega);
  return std::exp(cplx(0.0, 1.0) * k * (h + b)) / (std::numbers::pi * k);
}

cplx layered_transmission(const std::vector<Layer> &layers, double xi, double omega)
{
  const cplx i(0.0, 1.0);
  const cplx k0 = kz(xi, omega);
  // Below the stack u = e^{-i k0 y}: value 1, derivative -i k0.
  cplx u = 1.0;
  cplx du = -i * k0;
  for (const auto &layer : layers)
  {
    const cplx k = std::sqrt(cplx(omega * omega * layer.rho - xi * xi, 0.0));
    const cplx c = std::cos(k * layer.thickness);
    const cplx s = std::sin(k * layer.thickness);
    const cplx s_over_k = std::abs(k) > 1e-14 ? s / k : cplx(layer.thickness);
    const cplx nu = c * u + s_over_k * du;
    const cplx ndu = -k * s * u + c * du;
    u = nu;
    du = ndu;
  }
  // Above: A e^{-i k0 y} + R e^{i k0 y}; at the top interface A = (i k0 u - du) / (2 i k0).
  const cplx a = (i * k0 * u - du) / (2.0 * i * k0);
  return 1.0 / a;
}

cplx point_source(double omega, double h, double x, double y)
{
  const double z = omega * std::hypot(x, y - h);
  return cplx(std::cyl_bessel_j(0.0, z), std::cyl_neumann(0.0, z));
}

}  // namespace oracles
