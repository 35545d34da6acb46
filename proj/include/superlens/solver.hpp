#ifndef SUPERLENS_SOLVER_HPP
#define SUPERLENS_SOLVER_HPP

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>

#include "superlens/domain.hpp"
#include "superlens/dtn.hpp"
#include "superlens/source.hpp"

namespace superlens
{

using SpMatrix = Eigen::SparseMatrix<Complex>;
using RealSpMatrix = Eigen::SparseMatrix<double>;

class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Bilinear element integrals on one hx x hy cell, local node order
// (i,j), (i+1,j), (i,j+1), (i+1,j+1). Entry (k, l) pairs trial l with test k.
struct ElementMatrices
{
  Eigen::Matrix4d stiffness;  // int grad phi_l . grad phi_k
  Eigen::Matrix4d mass;       // int phi_l phi_k
  Eigen::Matrix4d dx;         // int (d/dx phi_l) phi_k
};

ElementMatrices element_matrices(const Grid &grid);

//
// Discrete form of
//   a(u,v) = int grad u . grad v* - omega^2 int rho u v* + alpha^2 int u v*
//            - 2i alpha int (d_x u) v* - int_{y=0} (T u) v* - int_{y=-b} (T u) v*
//   b(v)   = 2 int_{y=0} g v*
// Row k tests with phi_k; A u = rhs.
//
struct AssembledSystem
{
  double alpha = 0.0;
  double omega = 1.0;
  Grid grid{4, 2, 1.0};
  int n_trunc = 0;
  SpMatrix matrix;
  CVector rhs;
  CMatrix dtn_top;
  CMatrix dtn_bottom;
  CMatrix analysis;  // trace_analysis_matrix(grid, n_trunc)
};

AssembledSystem assemble(const DesignField &design, double alpha, double omega,
                         const DtnMatrix &dtn, const ModalTrace &g_trace);

// Nodal field for one quasi-momentum.
struct FloquetSolution
{
  double alpha = 0.0;
  double omega = 1.0;
  Grid grid{4, 2, 1.0};
  int n_trunc = 0;
  CVector values;
  std::uint64_t design_hash = 0;
};

enum class Boundary
{
  top,
  bottom
};

//
// Owns the sparse LU factorization of one assembled system, so the adjoint solve
// at the same alpha reuses it. Each instance is single-threaded; distinct
// instances may be used concurrently.
//
class FactoredSystem
{
public:
  FactoredSystem(AssembledSystem system, std::uint64_t design_hash = 0);

  const AssembledSystem &system() const { return system_; }
  std::uint64_t design_hash() const { return hash_; }

  // A x = rhs, checked to relative residual 1e-10.
  CVector solve(const CVector &rhs) const;
  // A^H x = rhs.
  CVector solve_adjoint(const CVector &rhs) const;

private:
  void check_residual(const SpMatrix &a, const CVector &x, const CVector &rhs,
                      const char *what) const;

  AssembledSystem system_;
  std::uint64_t hash_;
  std::unique_ptr<Eigen::SparseLU<SpMatrix, Eigen::COLAMDOrdering<int>>> lu_;
};

inline constexpr double kSolveTolerance = 1e-10;

FloquetSolution solve_forward(const FactoredSystem &factored);
FloquetSolution solve_forward(const AssembledSystem &system);

ModalTrace extract_trace(const FloquetSolution &solution, Boundary which);

// Nodal values along one boundary row.
CVector boundary_values(const FloquetSolution &solution, Boundary which);

// Global real matrices on the periodic grid.
RealSpMatrix global_mass(const Grid &grid);
RealSpMatrix global_stiffness(const Grid &grid);

// int_cell u conj(w) for bilinear nodal fields, exact.
Complex cell_mass_product(const Grid &grid, const ElementMatrices &em, const CVector &u,
                          const CVector &w, int i, int j);

// Field dump: "nx ny" header, a metadata line, then one "re im" row per node.
void write_field(std::ostream &os, const FloquetSolution &solution,
                 std::optional<double> objective = std::nullopt);

}  // namespace superlens

#endif  // SUPERLENS_SOLVER_HPP
