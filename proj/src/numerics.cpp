#include "superlens/numerics.hpp"

#include <cmath>
#include <string>

namespace superlens
{

ModeExponent beta(double xi, double omega)
{
  if (!(omega > 0.0))
  {
    throw DomainError("beta: omega must be positive, got " + std::to_string(omega));
  }
  const double d = omega * omega - xi * xi;
  if (d > 0.0)
  {
    return {Complex(std::sqrt(d), 0.0), false};
  }
  if (d < 0.0)
  {
    return {Complex(0.0, std::sqrt(-d)), false};
  }
  return {Complex(0.0, 0.0), true};
}

double wood_distance(double xi, double omega)
{
  return std::abs(xi * xi - omega * omega) / (omega * omega);
}

Complex hankel1_0(double z)
{
  if (!(z > 0.0))
  {
    throw DomainError("hankel1_0: argument must be positive, got " + std::to_string(z));
  }
  return {std::cyl_bessel_j(0.0, z), std::cyl_neumann(0.0, z)};
}

Complex hat_trace_fourier(int node_index, double node_spacing, int mode_n)
{
  const double t = 0.5 * mode_n * node_spacing;
  const double sinc = (t == 0.0) ? 1.0 : std::sin(t) / t;
  const double phase = -mode_n * node_index * node_spacing;
  return (node_spacing / kTwoPi) * sinc * sinc * std::polar(1.0, phase);
}

}  // namespace superlens
