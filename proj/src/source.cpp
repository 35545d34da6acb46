#include "superlens/source.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "superlens/domain.hpp"

namespace superlens
{

namespace
{

std::string wood_message(int mode, double alpha, double omega)
{
  std::ostringstream ss;
  ss << std::setprecision(17) << "Wood anomaly: (n + alpha)^2 = omega^2 at n = " << mode
     << ", alpha = " << alpha << ", omega = " << omega;
  return ss.str();
}

Complex guarded_beta(int n, double alpha, double omega)
{
  const double xi = n + alpha;
  const ModeExponent be = beta(xi, omega);
  if (be.wood_anomaly || wood_distance(xi, omega) < kWoodGuard)
  {
    throw WoodAnomalyError(n, alpha, omega);
  }
  return be.value;
}

}  // namespace

WoodAnomalyError::WoodAnomalyError(int mode, double alpha, double omega)
  : std::runtime_error(wood_message(mode, alpha, omega)), mode_(mode), alpha_(alpha)
{
}

ModalTrace::ModalTrace(double alpha, int n_trunc)
  : alpha_(alpha), n_trunc_(n_trunc), coeffs_(2 * n_trunc + 1, Complex(0.0, 0.0))
{
}

ModalTrace::ModalTrace(double alpha, int n_trunc, std::vector<Complex> coeffs)
  : alpha_(alpha), n_trunc_(n_trunc), coeffs_(std::move(coeffs))
{
  if (static_cast<int>(coeffs_.size()) != 2 * n_trunc + 1)
  {
    throw std::invalid_argument("ModalTrace: coefficient count must be 2 n_trunc + 1");
  }
}

Complex ModalTrace::synthesize(double x) const
{
  Complex sum(0.0, 0.0);
  for (int n = -n_trunc_; n <= n_trunc_; n++)
  {
    sum += (*this)[n] * std::polar(1.0, n * x);
  }
  return sum;
}

double ModalTrace::l2_norm_squared() const
{
  double s = 0.0;
  for (const auto &c : coeffs_)
  {
    s += std::norm(c);
  }
  return kTwoPi * s;
}

ModalTrace ModalTrace::operator-(const ModalTrace &other) const
{
  if (other.n_trunc_ != n_trunc_ || other.alpha_ != alpha_)
  {
    throw std::invalid_argument("ModalTrace: mismatched alpha or truncation");
  }
  ModalTrace out = *this;
  for (std::size_t k = 0; k < coeffs_.size(); k++)
  {
    out.coeffs_[k] -= other.coeffs_[k];
  }
  return out;
}

ModalTrace incident_dirichlet_trace(double alpha, double omega, double h, int n_trunc)
{
  ModalTrace t(alpha, n_trunc);
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    const Complex be = guarded_beta(n, alpha, omega);
    t[n] = std::exp(Complex(0.0, 1.0) * be * h) / (kPi * be);
  }
  return t;
}

ModalTrace incident_neumann_trace(double alpha, double omega, double h, int n_trunc)
{
  ModalTrace t(alpha, n_trunc);
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    const Complex be = beta(n + alpha, omega).value;
    t[n] = Complex(0.0, -1.0 / kPi) * std::exp(Complex(0.0, 1.0) * be * h);
  }
  return t;
}

ModalTrace target_dirichlet_trace(double alpha, double omega, double h1, int n_trunc)
{
  ModalTrace t(alpha, n_trunc);
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    const Complex bc = std::conj(guarded_beta(n, alpha, omega));
    t[n] = std::exp(Complex(0.0, -1.0) * bc * h1) / (kPi * bc);
  }
  return t;
}

int default_n_trunc(double omega, int extra, int nx)
{
  const int propagating = static_cast<int>(std::floor(omega + 0.5));
  return std::min(propagating + extra, nx / 2 - 1);
}

void write_trace(std::ostream &os, const ModalTrace &trace)
{
  os << std::setprecision(17) << trace.alpha() << ' ' << trace.n_trunc() << '\n';
  for (int n = -trace.n_trunc(); n <= trace.n_trunc(); n++)
  {
    os << n << ' ' << trace[n].real() << ' ' << trace[n].imag() << '\n';
  }
}

ModalTrace read_trace(std::istream &is)
{
  double alpha = 0.0;
  int n_trunc = -1;
  if (!(is >> alpha >> n_trunc) || n_trunc < 0)
  {
    throw ConfigError("trace file: malformed header");
  }
  ModalTrace t(alpha, n_trunc);
  for (int k = 0; k < t.size(); k++)
  {
    int n = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> n >> re >> im) || n < -n_trunc || n > n_trunc)
    {
      throw ConfigError("trace file: malformed coefficient row " + std::to_string(k + 1));
    }
    t[n] = Complex(re, im);
  }
  return t;
}

}  // namespace superlens
