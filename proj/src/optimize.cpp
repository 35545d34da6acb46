#include "superlens/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace superlens
{

const char *to_string(OptimizerStatus s)
{
  switch (s)
  {
    case OptimizerStatus::running:
      return "running";
    case OptimizerStatus::max_iterations:
      return "max_iterations";
    case OptimizerStatus::converged_kkt:
      return "converged_kkt";
    case OptimizerStatus::converged_j:
      return "converged_j";
    case OptimizerStatus::stalled:
      return "stalled";
  }
  return "unknown";
}

OptimizerState initial_state(DesignField design)
{
  return OptimizerState{0, std::move(design), 0.0, 0.0, {}, OptimizerStatus::running, 0};
}

OptimizerState descent_step(OptimizerState state, const GradientField &gradient,
                            const ObjectiveFn &objective, const OptimizerConfig &config)
{
  const double gmax = gradient.max_abs();
  state.backtracks = 0;
  if (gmax == 0.0)
  {
    state.status = OptimizerStatus::stalled;
    return state;
  }

  const auto &rho = state.design.values();
  double s = state.step > 0.0 ? 2.0 * state.step : 1.0 / gmax;
  for (int attempt = 0; attempt <= config.max_backtracks; attempt++, s *= 0.5)
  {
    DesignField trial = state.design;
    for (std::size_t c = 0; c < rho.size(); c++)
    {
      const Complex g = gradient.values[c];
      trial.values()[c] = rho[c] + s * Complex(-g.real(), g.imag());
    }
    trial = project_to_admissible(symmetrize_x(std::move(trial)));

    double moved = 0.0;
    for (std::size_t c = 0; c < rho.size(); c++)
    {
      moved += std::norm((rho[c] - trial.values()[c]) / s);
    }
    if (moved == 0.0)
    {
      // Every cell is pinned by a bound the gradient pushes against.
      state.status = OptimizerStatus::stalled;
      return state;
    }

    state.backtracks = attempt;
    const double jt = objective(trial);
    if (jt <= state.objective - config.armijo * s * moved)
    {
      state.design = std::move(trial);
      state.objective = jt;
      state.step = s;
      return state;
    }
  }
  state.status = OptimizerStatus::stalled;
  return state;
}

double kkt_residual(const DesignField &design, const GradientField &gradient, double bound_tol)
{
  const auto &bd = design.bounds();
  auto at = [&](double v, double bound) {
    return std::abs(v - bound) <= bound_tol * std::max(1.0, std::abs(bound));
  };

  double worst = 0.0;
  for (std::size_t c = 0; c < design.values().size(); c++)
  {
    const Complex rho = design.values()[c];
    const Complex g = gradient.values[c];

    // Re: descent direction is -Re G.
    const bool r_lo = at(rho.real(), bd.rho_r0);
    const bool r_hi = at(rho.real(), bd.rho_r1);
    double vr = 0.0;
    if (r_lo && r_hi)
      vr = 0.0;
    else if (r_lo)
      vr = std::max(0.0, -g.real());
    else if (r_hi)
      vr = std::max(0.0, g.real());
    else
      vr = std::abs(g.real());

    // Im: descent direction is +Im G, so the signs are reversed.
    const bool i_lo = at(rho.imag(), bd.rho_i0);
    const bool i_hi = at(rho.imag(), bd.rho_i1);
    double vi = 0.0;
    if (i_lo && i_hi)
      vi = 0.0;
    else if (i_lo)
      vi = std::max(0.0, g.imag());
    else if (i_hi)
      vi = std::max(0.0, -g.imag());
    else
      vi = std::abs(g.imag());

    worst = std::max({worst, vr, vi});
  }
  return worst;
}

RunResult run(OptimizerState state, const ProblemSetup &setup, const OptimizerConfig &config,
              const ExecutionPolicy &policy, const IterationCallback &on_iteration)
{
  const ObjectiveFn objective = [&](const DesignField &d) {
    return evaluate_J(d, setup, policy).value;
  };

  state.status = OptimizerStatus::running;
  // A resumed state already carries the record for its current iterate.
  if (!state.history.empty() && state.history.back().iter == state.iteration)
  {
    state.history.pop_back();
  }
  GradientField g;
  while (true)
  {
    ObjectiveAndGradient eg = evaluate_with_gradient(state.design, setup, policy);
    state.objective = eg.value;
    g = std::move(eg.symmetric);

    IterationRecord rec;
    rec.iter = state.iteration;
    rec.objective = state.objective;
    rec.step = state.step;
    rec.grad_norm = g.norm();
    rec.kkt = kkt_residual(state.design, g);
    state.history.push_back(rec);
    if (on_iteration)
    {
      on_iteration(state, rec);
    }

    if (rec.kkt < config.tol_kkt)
    {
      state.status = OptimizerStatus::converged_kkt;
      break;
    }
    const int n = static_cast<int>(state.history.size());
    if (n > config.tol_window)
    {
      const double old = state.history[n - 1 - config.tol_window].objective;
      if (old > 0.0 && (old - rec.objective) / old < config.tol_j)
      {
        state.status = OptimizerStatus::converged_j;
        break;
      }
    }
    if (state.iteration >= config.max_iter)
    {
      state.status = OptimizerStatus::max_iterations;
      break;
    }

    state = descent_step(std::move(state), g, objective, config);
    if (state.status == OptimizerStatus::stalled)
    {
      break;
    }
    state.iteration++;
  }
  return RunResult{std::move(state), std::move(g)};
}

void write_iteration(std::ostream &os, const IterationRecord &rec)
{
  os << rec.iter << ' ' << std::setprecision(17) << rec.objective << ' ' << rec.step << ' '
     << rec.grad_norm << ' ' << rec.kkt << '\n';
}

void save_checkpoint(const std::string &dir, const OptimizerState &state)
{
  std::filesystem::create_directories(dir);
  save_design((std::filesystem::path(dir) / "design.txt").string(), state.design);
  std::ofstream os(std::filesystem::path(dir) / "state.txt");
  if (!os)
  {
    throw ConfigError("cannot write checkpoint in " + dir);
  }
  os << std::setprecision(17);
  os << "iteration " << state.iteration << '\n';
  os << "step " << state.step << '\n';
  os << "objective " << state.objective << '\n';
  for (const auto &r : state.history)
  {
    os << "history ";
    write_iteration(os, r);
  }
}

OptimizerState load_checkpoint(const std::string &dir)
{
  OptimizerState state =
      initial_state(load_design((std::filesystem::path(dir) / "design.txt").string()));
  std::ifstream is(std::filesystem::path(dir) / "state.txt");
  if (!is)
  {
    throw ConfigError("checkpoint " + dir + " has no state.txt");
  }
  std::string key;
  while (is >> key)
  {
    if (key == "iteration")
      is >> state.iteration;
    else if (key == "step")
      is >> state.step;
    else if (key == "objective")
      is >> state.objective;
    else if (key == "history")
    {
      IterationRecord r;
      is >> r.iter >> r.objective >> r.step >> r.grad_norm >> r.kkt;
      state.history.push_back(r);
    }
    else
      throw ConfigError("checkpoint state: unknown key " + key);
    if (!is)
    {
      throw ConfigError("checkpoint state: malformed value for " + key);
    }
  }
  return state;
}

}  // namespace superlens
