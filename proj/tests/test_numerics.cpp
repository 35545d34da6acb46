#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "superlens/numerics.hpp"

using namespace superlens;

namespace
{

using big = boost::multiprecision::cpp_bin_float_50;

// Power series for J0 and Y0 in 50-digit arithmetic.
std::pair<double, double> bessel_series(double zd)
{
  const big z = zd;
  const big q = z * z / 4;
  big term = 1;  // (-q)^k / (k!)^2
  big j0 = 0, tail = 0, harmonic = 0;
  for (int k = 0; k < 200; k++)
  {
    if (k > 0)
    {
      term *= -q / (big(k) * big(k));
      harmonic += big(1) / k;
    }
    j0 += term;
    // (-1)^{k+1} H_k q^k/(k!)^2 = -H_k * term
    tail -= harmonic * term;
  }
  const big pi = boost::math::constants::pi<big>();
  const big gamma = boost::math::constants::euler<big>();
  const big y0 = 2 / pi * (log(z / 2) + gamma) * j0 + 2 / pi * tail;
  return {static_cast<double>(j0), static_cast<double>(y0)};
}

}  // namespace

TEST_CASE("beta on the three regimes")
{
  CHECK(beta(0.0, 1.0).value == Complex(1.0, 0.0));
  CHECK(beta(0.0, 1.0).propagating());
  const auto ev = beta(2.0, 1.0);
  CHECK(ev.value.real() == 0.0);
  CHECK(ev.value.imag() == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  CHECK(ev.evanescent());
  CHECK(beta(1.0, 2.0).value.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(beta(-2.0, 1.0).value == beta(2.0, 1.0).value);
}

TEST_CASE("beta at a Wood anomaly and for bad omega")
{
  const auto w = beta(1.0, 1.0);
  CHECK(w.wood_anomaly);
  CHECK_FALSE(w.propagating());
  CHECK(std::abs(w.value) == 0.0);
  CHECK_THROWS_AS(beta(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(beta(0.5, -1.0), DomainError);
}

TEST_CASE("hankel1_0 against a 50-digit series")
{
  for (double z : {1.0, 0.1, 2.5, 7.0, 12.0})
  {
    const auto [j0, y0] = bessel_series(z);
    const Complex h = hankel1_0(z);
    CHECK(std::abs(h - Complex(j0, y0)) <= 1e-12 * std::abs(Complex(j0, y0)));
  }
  const Complex h1 = hankel1_0(1.0);
  CHECK(h1.real() == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(h1.imag() == doctest::Approx(0.0882569642).epsilon(1e-9));
}

TEST_CASE("hankel1_0 small and large argument limits")
{
  const double z = 1e-6;
  const Complex h = hankel1_0(z);
  CHECK(h.real() == doctest::Approx(1.0).epsilon(1e-12));
  const double gamma = 0.57721566490153286;
  CHECK(h.imag() == doctest::Approx(2.0 / kPi * (std::log(z / 2) + gamma)).epsilon(1e-10));

  const double big_z = 100.0;
  const Complex asym = std::sqrt(2.0 / (kPi * big_z)) * std::exp(Complex(0.0, big_z - kPi / 4));
  // The leading term is off by the first correction, of relative size 1/(8z).
  const double rel = std::abs(hankel1_0(big_z) - asym) / std::abs(asym);
  CHECK(rel <= 1.01 / (8.0 * big_z));
  // With that correction included the remainder is O(z^-2).
  const Complex two_term = asym * Complex(1.0, -1.0 / (8.0 * big_z));
  CHECK(std::abs(hankel1_0(big_z) - two_term) / std::abs(asym) <= 1e-5);

  CHECK_THROWS_AS(hankel1_0(0.0), DomainError);
  CHECK_THROWS_AS(hankel1_0(-1.0), DomainError);
}

TEST_CASE("hankel1_0 satisfies the Wronskian J Y' - Y J' = 2 / (pi z)")
{
  for (double z : {0.3, 1.0, 4.0, 20.0})
  {
    const double d = 1e-5 * z;
    const Complex dh = (hankel1_0(z + d) - hankel1_0(z - d)) / (2.0 * d);
    const double w = (std::conj(hankel1_0(z)) * dh).imag();
    CHECK(w == doctest::Approx(2.0 / (kPi * z)).epsilon(1e-8));
  }
}

TEST_CASE("hat function Fourier coefficients")
{
  const double hx = kTwoPi / 16;
  for (int j : {0, 3, 15})
  {
    CHECK(std::abs(hat_trace_fourier(j, hx, 0) - Complex(hx / kTwoPi, 0.0)) < 1e-15);
  }
  const Complex c = hat_trace_fourier(0, kPi / 2, 2);
  CHECK(c.real() == doctest::Approx(0.25 * std::pow(2.0 / kPi, 2)).epsilon(1e-14));
  CHECK(std::abs(c.imag()) < 1e-15);

  Complex sum = 0.0;
  for (int j = 0; j < 16; j++)
  {
    sum += hat_trace_fourier(j, hx, 0);
  }
  CHECK(std::abs(sum - 1.0) < 1e-14);
  // Nonzero modes of a constant trace cancel.
  Complex s3 = 0.0;
  for (int j = 0; j < 16; j++)
  {
    s3 += hat_trace_fourier(j, hx, 3);
  }
  CHECK(std::abs(s3) < 1e-15);
}

TEST_CASE("wood_distance")
{
  CHECK(wood_distance(1.0, 1.0) == 0.0);
  CHECK(wood_distance(0.0, 2.0) == doctest::Approx(1.0));
}
