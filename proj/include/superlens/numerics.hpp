#ifndef SUPERLENS_NUMERICS_HPP
#define SUPERLENS_NUMERICS_HPP

#include <complex>
#include <numbers>
#include <stdexcept>

namespace superlens
{

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Vertical wavenumber of a plane wave with transverse wavenumber xi.
//   xi^2 < omega^2 : value = sqrt(omega^2 - xi^2)       (propagating, real > 0)
//   xi^2 > omega^2 : value = i sqrt(xi^2 - omega^2)     (evanescent, Im > 0)
// At xi^2 == omega^2 the value is zero and wood_anomaly is set.
struct ModeExponent
{
  Complex value;
  bool wood_anomaly = false;

  bool propagating() const { return !wood_anomaly && value.imag() == 0.0; }
  bool evanescent() const { return value.imag() > 0.0; }
};

ModeExponent beta(double xi, double omega);

// Relative distance |xi^2 - omega^2| / omega^2 to the nearest Wood anomaly.
double wood_distance(double xi, double omega);

// H_0^(1)(z) = J_0(z) + i Y_0(z) for real z > 0.
Complex hankel1_0(double z);

// n-th Fourier coefficient (1/2pi) int_0^{2pi} phi_j(x) e^{-inx} dx of the periodic
// hat function centred on node j of a uniform grid with spacing node_spacing.
Complex hat_trace_fourier(int node_index, double node_spacing, int mode_n);

class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

}  // namespace superlens

#endif  // SUPERLENS_NUMERICS_HPP
