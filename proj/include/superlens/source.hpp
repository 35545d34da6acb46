#ifndef SUPERLENS_SOURCE_HPP
#define SUPERLENS_SOURCE_HPP

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "superlens/numerics.hpp"

namespace superlens
{

class WoodAnomalyError : public std::runtime_error
{
public:
  WoodAnomalyError(int mode, double alpha, double omega);
  int mode() const { return mode_; }
  double alpha() const { return alpha_; }

private:
  int mode_;
  double alpha_;
};

// Guard used everywhere a modal formula divides by beta(n + alpha).
inline constexpr double kWoodGuard = 1e-8;

// Fourier coefficients c_n, |n| <= n_trunc, of the alpha-quasi-periodic component
// of a trace on a horizontal line: trace(x) = sum_n c_n e^{inx}.
class ModalTrace
{
public:
  ModalTrace() = default;
  ModalTrace(double alpha, int n_trunc);
  ModalTrace(double alpha, int n_trunc, std::vector<Complex> coeffs);

  double alpha() const { return alpha_; }
  int n_trunc() const { return n_trunc_; }
  int size() const { return 2 * n_trunc_ + 1; }

  Complex operator[](int n) const { return coeffs_[n + n_trunc_]; }
  Complex &operator[](int n) { return coeffs_[n + n_trunc_]; }
  const std::vector<Complex> &coeffs() const { return coeffs_; }
  std::vector<Complex> &coeffs() { return coeffs_; }

  // sum_n c_n e^{inx} (the periodic part, without the e^{i alpha x} factor).
  Complex synthesize(double x) const;
  // Parseval on one period: int_0^{2pi} |trace|^2 dx = 2pi sum |c_n|^2.
  double l2_norm_squared() const;

  ModalTrace operator-(const ModalTrace &other) const;

private:
  double alpha_ = 0.0;
  int n_trunc_ = 0;
  std::vector<Complex> coeffs_;
};

// f_alpha: Dirichlet trace on y = 0 of the field of a point source at (0, h).
ModalTrace incident_dirichlet_trace(double alpha, double omega, double h, int n_trunc);
// g_alpha: its normal derivative d/dy on y = 0.
ModalTrace incident_neumann_trace(double alpha, double omega, double h, int n_trunc);
// q_alpha: trace on y = -b of the converging image H_0^(2)(omega r) focused h1 below.
ModalTrace target_dirichlet_trace(double alpha, double omega, double h1, int n_trunc);

// All propagating modes plus `extra` evanescent modes on each side, capped at nx/2 - 1.
int default_n_trunc(double omega, int extra, int nx);

// Text format: "alpha n_trunc" header, then "n re im" lines.
void write_trace(std::ostream &os, const ModalTrace &trace);
ModalTrace read_trace(std::istream &is);

}  // namespace superlens

#endif  // SUPERLENS_SOURCE_HPP
