#ifndef SUPERLENS_TOOLS_VERIFY_HPP
#define SUPERLENS_TOOLS_VERIFY_HPP

#include <string>
#include <vector>

namespace superlens::verify
{

struct CheckResult
{
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity (error, residual, ...)
  double tolerance = 0.0;
  std::string detail;
};

// Relative L2 error of the vacuum solve tolerated at nx columns: 1e-2 at 64 and
// scaled as (64 / nx)^2 elsewhere.
double vacuum_tolerance(int nx);

// Relative L2(Omega) error of the FEM solution with rho = 1 against the analytic
// Floquet expansion (alpha = 0.25, omega = 1, h = 2.5, b = pi).
double vacuum_error(int nx, int ny);

CheckResult check_vacuum(int nx, int ny);
// Error at nx x ny and 2nx x 2ny; passes when both meet their tolerances and the
// ratio lies in [3.5, 4.5].
CheckResult check_vacuum_convergence(int nx, int ny);

struct ModeComparison
{
  int n;
  bool propagating;
  double fem_abs;
  double tmm_abs;
  double relative_error;
};

// Per-mode relative error tolerated at nx columns: 1e-3 at 128, scaled as (128 / nx)^2.
double layered_tolerance(int nx);

// Two-layer rho(y): 2 on the lower half, 4 on the upper half of the slab.
std::vector<ModeComparison> layered_comparison(int nx, int ny, double alpha);
CheckResult check_layered(int nx, int ny, double tolerance);

// Relative flux residual over `designs` random lossless designs on each grid.
// With `corrupt_beta` the DtN blocks are built with the wrong mode exponent sign.
CheckResult check_energy(const std::vector<std::pair<int, int>> &grids, int designs,
                         int alpha_count, double tolerance, bool corrupt_beta = false);

CheckResult check_dtn_adjoint(int nx, double tolerance);

// Central differences against the adjoint directional derivative on random
// designs and random directions.
CheckResult check_fd_gradient(int nx, int ny, int alpha_count, int designs, int directions,
                              double tolerance);

}  // namespace superlens::verify

#endif  // SUPERLENS_TOOLS_VERIFY_HPP
