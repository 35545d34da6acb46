#include "superlens/analysis.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace superlens
{

namespace
{

// sum_n c_n e^{i(n+alpha)x} e^{-i beta(n+alpha)(y+b)}
Complex modal_sum(const ModalTrace &t, double omega, double x, double depth_below)
{
  Complex s(0.0, 0.0);
  for (int n = -t.n_trunc(); n <= t.n_trunc(); n++)
  {
    const double xi = n + t.alpha();
    const Complex be = beta(xi, omega).value;
    s += t[n] * std::exp(Complex(0.0, xi * x) + Complex(0.0, 1.0) * be * depth_below);
  }
  return s;
}

void check_traces(const std::vector<ModalTrace> &traces, const AlphaQuadrature &quadrature)
{
  if (static_cast<int>(traces.size()) != quadrature.size())
  {
    throw std::invalid_argument("reconstruct: one trace per quadrature point is required");
  }
}

}  // namespace

std::vector<double> linspace(double x_min, double x_max, int n)
{
  std::vector<double> xs(n);
  for (int k = 0; k < n; k++)
  {
    xs[k] = n == 1 ? x_min : x_min + (x_max - x_min) * k / (n - 1);
  }
  return xs;
}

std::vector<Complex> reconstruct_line(const std::vector<ModalTrace> &traces,
                                      const AlphaQuadrature &quadrature, double omega, double b,
                                      const std::vector<double> &xs, double y_line)
{
  check_traces(traces, quadrature);
  if (y_line > -b)
  {
    throw std::invalid_argument("reconstruct: the line must lie at or below y = -b");
  }
  const double depth = -(y_line + b);
  std::vector<Complex> out(xs.size());
  for (std::size_t ix = 0; ix < xs.size(); ix++)
  {
    CompensatedSum<Complex> s;
    for (int k = 0; k < quadrature.size(); k++)
    {
      const double w = quadrature.folded_weight(k) / 2.0;
      s.add(w * (modal_sum(traces[k], omega, xs[ix], depth) +
                 modal_sum(traces[k], omega, -xs[ix], depth)));
    }
    out[ix] = s.value();
  }
  return out;
}

SampledField reconstruct_below(const std::vector<ModalTrace> &traces,
                               const AlphaQuadrature &quadrature, double omega, double b,
                               const std::vector<double> &xs, double depth, int y_samples)
{
  if (!(depth > 0.0))
  {
    throw std::invalid_argument("reconstruct_below: depth must be positive");
  }
  SampledField f;
  f.x = xs;
  f.y = linspace(-b, -b - depth, y_samples);
  f.values.reserve(xs.size() * f.y.size());
  for (double y : f.y)
  {
    const auto row = reconstruct_line(traces, quadrature, omega, b, xs, y);
    f.values.insert(f.values.end(), row.begin(), row.end());
  }
  return f;
}

std::optional<ImageMetrics> spot_size_from_intensity(const std::vector<double> &xs,
                                                     const std::vector<double> &intensity,
                                                     double omega, double image_line_y)
{
  if (xs.size() != intensity.size() || xs.size() < 3)
  {
    throw std::invalid_argument("spot_size: need matching samples (at least 3)");
  }
  const auto peak_it = std::max_element(intensity.begin(), intensity.end());
  const int p = static_cast<int>(peak_it - intensity.begin());
  const double half = 0.5 * *peak_it;
  if (!(half > 0.0))
  {
    return std::nullopt;
  }

  auto crossing = [&](int inside, int outside) {
    const double t = (intensity[inside] - half) / (intensity[inside] - intensity[outside]);
    return xs[inside] + t * (xs[outside] - xs[inside]);
  };

  std::optional<double> left, right;
  for (int k = p; k > 0; k--)
  {
    if (intensity[k - 1] < half)
    {
      left = crossing(k, k - 1);
      break;
    }
  }
  for (int k = p; k + 1 < static_cast<int>(xs.size()); k++)
  {
    if (intensity[k + 1] < half)
    {
      right = crossing(k, k + 1);
      break;
    }
  }
  if (!left || !right)
  {
    return std::nullopt;
  }

  ImageMetrics m;
  m.fwhm = *right - *left;
  m.spot_size_lambda = m.fwhm / (kTwoPi / omega);
  m.peak_x = xs[p];
  m.peak_y = image_line_y;
  m.peak_intensity = *peak_it;
  m.x = xs;
  m.intensity = intensity;
  return m;
}

std::optional<ImageMetrics> spot_size(const std::vector<double> &xs,
                                      const std::vector<Complex> &field, double omega,
                                      double image_line_y)
{
  std::vector<double> intensity(field.size());
  std::transform(field.begin(), field.end(), intensity.begin(),
                 [](Complex v) { return std::norm(v); });
  return spot_size_from_intensity(xs, intensity, omega, image_line_y);
}

std::vector<SpectrumEntry> evanescent_spectrum(const ModalTrace &trace, double omega)
{
  std::vector<SpectrumEntry> out;
  for (int n = -trace.n_trunc(); n <= trace.n_trunc(); n++)
  {
    if (std::abs(n + trace.alpha()) > omega)
    {
      out.push_back({n, std::abs(trace[n])});
    }
  }
  return out;
}

double spectrum_similarity(const std::vector<ModalTrace> &image,
                           const std::vector<ModalTrace> &target, double omega)
{
  if (image.size() != target.size())
  {
    throw std::invalid_argument("spectrum_similarity: trace families differ in size");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < image.size(); k++)
  {
    const auto a = evanescent_spectrum(image[k], omega);
    const auto b = evanescent_spectrum(target[k], omega);
    if (a.size() != b.size())
    {
      throw std::invalid_argument("spectrum_similarity: mismatched truncation");
    }
    for (std::size_t m = 0; m < a.size(); m++)
    {
      dot += a[m].magnitude * b[m].magnitude;
      na += a[m].magnitude * a[m].magnitude;
      nb += b[m].magnitude * b[m].magnitude;
    }
  }
  if (na == 0.0 || nb == 0.0)
  {
    return 0.0;
  }
  return dot / std::sqrt(na * nb);
}

double EnergyBalance::relative_residual() const
{
  return std::abs(incident - reflected - transmitted - absorbed) / std::abs(incident);
}

EnergyBalance energy_balance(const FloquetSolution &solution, const DesignField &design,
                             const AlphaProblem &problem)
{
  const ModalTrace top = extract_trace(solution, Boundary::top);
  const ModalTrace bottom = extract_trace(solution, Boundary::bottom);
  const double omega = solution.omega;

  EnergyBalance e;
  double incident_propagating = 0.0;
  for (int n = -top.n_trunc(); n <= top.n_trunc(); n++)
  {
    const ModeExponent be = beta(n + solution.alpha, omega);
    if (be.propagating())
    {
      const double b = be.value.real();
      incident_propagating += b * std::norm(problem.incident[n]);
      e.reflected += b * std::norm(top[n] - problem.incident[n]);
      e.transmitted += b * std::norm(bottom[n]);
    }
    else
    {
      e.evanescent_exchange +=
          -2.0 * (problem.incident_normal[n] * std::conj(top[n])).imag();
    }
  }
  e.incident = incident_propagating + e.evanescent_exchange;

  const Grid &g = solution.grid;
  const ElementMatrices em = element_matrices(g);
  double absorbed = 0.0;
  for (int j = 0; j < g.ny(); j++)
  {
    for (int i = 0; i < g.nx(); i++)
    {
      const double rho_i = design(i, j).imag();
      if (rho_i != 0.0)
      {
        absorbed +=
            rho_i * cell_mass_product(g, em, solution.values, solution.values, i, j).real();
      }
    }
  }
  e.absorbed = omega * omega * absorbed / kTwoPi;
  return e;
}

double coercivity_constant(double rho_i0, double omega, double rho_r1)
{
  if (!(rho_i0 > 0.0))
  {
    throw DomainError("coercivity bound needs rho_i0 > 0");
  }
  return std::min(omega * omega * rho_i0 / (4.0 * (1.0 + rho_r1)), 0.25);
}

BoundDiagnostic h1_bound_diagnostic(const FloquetSolution &solution,
                                    const AssembledSystem &system,
                                    const AdmissibleBounds &bounds)
{
  const RealSpMatrix gram = global_stiffness(solution.grid) + global_mass(solution.grid);
  Eigen::SimplicialLDLT<RealSpMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success)
  {
    throw SolverError("H1 Gram matrix factorization failed");
  }
  const Eigen::VectorXd br = ldlt.solve(Eigen::VectorXd(system.rhs.real()));
  const Eigen::VectorXd bi = ldlt.solve(Eigen::VectorXd(system.rhs.imag()));

  BoundDiagnostic d;
  const Eigen::VectorXd ur = solution.values.real();
  const Eigen::VectorXd ui = solution.values.imag();
  d.solution_h1 = std::sqrt(ur.dot(gram * ur) + ui.dot(gram * ui));
  d.load_dual = std::sqrt(system.rhs.real().dot(br) + system.rhs.imag().dot(bi));
  d.coercivity = coercivity_constant(bounds.rho_i0, solution.omega, bounds.rho_r1);
  return d;
}

}  // namespace superlens
