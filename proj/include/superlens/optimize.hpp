#ifndef SUPERLENS_OPTIMIZE_HPP
#define SUPERLENS_OPTIMIZE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "superlens/adjoint.hpp"
#include "superlens/domain.hpp"
#include "superlens/objective.hpp"

namespace superlens
{

struct OptimizerConfig
{
  int max_iter = 200;
  double tol_j = 1e-6;  // relative decrease of J over `tol_window` iterations
  int tol_window = 10;
  double tol_kkt = 1e-4;
  double armijo = 1e-4;
  int max_backtracks = 30;
};

enum class OptimizerStatus
{
  running,
  max_iterations,
  converged_kkt,
  converged_j,
  stalled,
};

const char *to_string(OptimizerStatus s);

struct IterationRecord
{
  int iter = 0;
  double objective = 0.0;
  double step = 0.0;
  double grad_norm = 0.0;
  double kkt = 0.0;
};

struct OptimizerState
{
  int iteration = 0;
  DesignField design;
  double objective = 0.0;
  double step = 0.0;  // last accepted step; 0 before the first step
  std::vector<IterationRecord> history;
  OptimizerStatus status = OptimizerStatus::running;
  int backtracks = 0;  // in the most recent descent_step
};

using ObjectiveFn = std::function<double(const DesignField &)>;

//
// Projected gradient step with Armijo backtracking. Trial design
//   Re rho <- Re rho - s Re G,   Im rho <- Im rho + s Im G
// followed by symmetrize_x and project_to_admissible. The step halves until
//   J(trial) <= J - armijo * s * ||(rho - trial) / s||^2
// or max_backtracks halvings fail, in which case status becomes `stalled`.
//
OptimizerState descent_step(OptimizerState state, const GradientField &gradient,
                            const ObjectiveFn &objective, const OptimizerConfig &config = {});

// Max over cells of the violated sign conditions on Re G and Im G at the box bounds.
double kkt_residual(const DesignField &design, const GradientField &gradient,
                    double bound_tol = 1e-12);

struct RunResult
{
  OptimizerState state;
  GradientField final_gradient;
};

using IterationCallback = std::function<void(const OptimizerState &, const IterationRecord &)>;

// Iterates from `start` until max_iter, stationarity (kkt < tol_kkt), a stagnating J,
// or a stalled line search.
RunResult run(OptimizerState start, const ProblemSetup &setup, const OptimizerConfig &config,
              const ExecutionPolicy &policy = {}, const IterationCallback &on_iteration = {});

OptimizerState initial_state(DesignField design);

// "iter J step_len grad_norm kkt_residual"
void write_iteration(std::ostream &os, const IterationRecord &rec);

// Checkpoint directory: design.txt plus a key-value state file.
void save_checkpoint(const std::string &dir, const OptimizerState &state);
OptimizerState load_checkpoint(const std::string &dir);

}  // namespace superlens

#endif  // SUPERLENS_OPTIMIZE_HPP
