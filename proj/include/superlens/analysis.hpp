#ifndef SUPERLENS_ANALYSIS_HPP
#define SUPERLENS_ANALYSIS_HPP

#include <optional>
#include <vector>

#include "superlens/objective.hpp"
#include "superlens/solver.hpp"

namespace superlens
{

// Complex field sampled on a tensor grid; values stored row by row (y outer).
struct SampledField
{
  std::vector<double> x;
  std::vector<double> y;
  std::vector<Complex> values;

  Complex operator()(int ix, int iy) const { return values[iy * x.size() + ix]; }
};

//
// Field below the slab from the lower-boundary traces,
//   u_alpha(x, y) = sum_n c_n e^{inx} e^{-i beta(n+alpha)(y+b)},   y <= -b,
// recombined over the quadrature with the mirror fold
//   u(x, y) = sum_k w_k [u_k(x, y) e^{i alpha_k x} + u_k(-x, y) e^{-i alpha_k x}].
// Samples y from -b down to -b - depth (inclusive); depth must be positive.
//
SampledField reconstruct_below(const std::vector<ModalTrace> &traces,
                               const AlphaQuadrature &quadrature, double omega, double b,
                               const std::vector<double> &xs, double depth, int y_samples);

// Same recombination on a single line y = y_line <= -b.
std::vector<Complex> reconstruct_line(const std::vector<ModalTrace> &traces,
                                      const AlphaQuadrature &quadrature, double omega, double b,
                                      const std::vector<double> &xs, double y_line);

// n uniformly spaced samples covering [x_min, x_max].
std::vector<double> linspace(double x_min, double x_max, int n);

struct ImageMetrics
{
  double spot_size_lambda = 0.0;  // FWHM of |u|^2 in wavelengths 2pi/omega
  double fwhm = 0.0;
  double peak_x = 0.0;
  double peak_y = 0.0;
  double peak_intensity = 0.0;
  std::vector<double> x;
  std::vector<double> intensity;
};

// Empty result when no half-maximum crossing exists on one side of the peak.
std::optional<ImageMetrics> spot_size_from_intensity(const std::vector<double> &xs,
                                                     const std::vector<double> &intensity,
                                                     double omega, double image_line_y);
std::optional<ImageMetrics> spot_size(const std::vector<double> &xs,
                                      const std::vector<Complex> &field, double omega,
                                      double image_line_y);

struct SpectrumEntry
{
  int n = 0;
  double magnitude = 0.0;
};

// |c_n| for the evanescent modes |n + alpha| > omega.
std::vector<SpectrumEntry> evanescent_spectrum(const ModalTrace &trace, double omega);

// Cosine similarity of the evanescent magnitude vectors of two trace families
// (same alphas, same truncation), all alphas concatenated.
double spectrum_similarity(const std::vector<ModalTrace> &image,
                           const std::vector<ModalTrace> &target, double omega);

//
// Flux bookkeeping for one alpha (per unit period, in units of sum beta |c|^2):
//   incident      = sum_prop beta |f_n|^2 + evanescent_exchange
//   reflected     = sum_prop beta |u0_n - f_n|^2
//   transmitted   = sum_prop beta |ub_n|^2
//   absorbed      = omega^2 int rho_i |u|^2 / 2pi
// evanescent_exchange = -2 sum_evan Im(g_n conj(u0_n)) is the power the evanescent part
// of the near-field source delivers through the upper boundary.
//
struct EnergyBalance
{
  double incident = 0.0;
  double reflected = 0.0;
  double transmitted = 0.0;
  double absorbed = 0.0;
  double evanescent_exchange = 0.0;

  double relative_residual() const;
};

EnergyBalance energy_balance(const FloquetSolution &solution, const DesignField &design,
                             const AlphaProblem &problem);

// min{ omega^2 rho_i0 / (4 (1 + rho_r1)), 1/4 }; rho_i0 must be positive.
double coercivity_constant(double rho_i0, double omega, double rho_r1);

struct BoundDiagnostic
{
  double solution_h1 = 0.0;  // sqrt(u^H (K + M) u)
  double load_dual = 0.0;    // sqrt(b^H (K + M)^{-1} b)
  double coercivity = 0.0;
  double bound() const { return load_dual / coercivity; }
  bool within(double factor) const { return solution_h1 <= factor * bound(); }
};

BoundDiagnostic h1_bound_diagnostic(const FloquetSolution &solution,
                                    const AssembledSystem &system,
                                    const AdmissibleBounds &bounds);

}  // namespace superlens

#endif  // SUPERLENS_ANALYSIS_HPP
