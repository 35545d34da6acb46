#ifndef SUPERLENS_CONFIG_HPP
#define SUPERLENS_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "superlens/domain.hpp"
#include "superlens/objective.hpp"
#include "superlens/optimize.hpp"

namespace superlens
{

//
// Plain-text experiment description, one "key = value" per line, '#' starts a comment.
// Required: h, h1, rho_r0, rho_r1, rho_i0, rho_i1, init_kind, and init_params unless
// init_kind = random. init_params is "value" for uniform and
// "rod_eps background_eps rod_radius lattice" for crystal.
//
struct ExperimentConfig
{
  double omega = 1.0;
  double b = kPi;
  double h = 0.0;
  double h1 = 0.0;
  int nx = 64;
  int ny = 48;
  int alpha_count = 20;
  int n_trunc_extra = 20;
  AdmissibleBounds bounds;
  InitialKind init = UniformInit{1.0};
  int max_iter = 200;
  double tol_j = 1e-6;
  double tol_kkt = 1e-4;
  std::uint64_t seed = 0;
  std::string outdir = "out";

  Grid grid() const { return Grid(nx, ny, b); }
  PhysicalParameters physics() const { return {omega, h, h1}; }
  int n_trunc() const;
  AlphaQuadrature quadrature() const;
  ProblemSetup setup() const;
  OptimizerConfig optimizer() const;
  DesignField initial() const;
};

// Errors carry the line number ("line 7: ...") or the missing key's name.
ExperimentConfig parse_config(std::istream &is);
ExperimentConfig load_config(const std::string &path);

}  // namespace superlens

#endif  // SUPERLENS_CONFIG_HPP
