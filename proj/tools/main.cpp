#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "superlens/adjoint.hpp"
#include "superlens/analysis.hpp"
#include "superlens/config.hpp"
#include "superlens/optimize.hpp"
#include "superlens/sweep.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace superlens;

namespace
{

enum ExitCode
{
  kOk = 0,
  kUsage = 1,
  kVerifyFailed = 2,
  kSolverFailed = 3,
};

constexpr int kImageSamples = 1024;

std::ofstream open_out(const fs::path &path)
{
  std::ofstream os(path);
  if (!os)
  {
    throw ConfigError("cannot write " + path.string());
  }
  os << std::setprecision(17);
  return os;
}

void write_traces(const fs::path &dir, const SweepResult &sw)
{
  fs::create_directories(dir);
  for (std::size_t k = 0; k < sw.per_alpha.size(); k++)
  {
    const auto &u = sw.per_alpha[k].forward;
    auto top = open_out(dir / ("alpha_" + std::to_string(k) + "_top.txt"));
    write_trace(top, extract_trace(u, Boundary::top));
    auto bottom = open_out(dir / ("alpha_" + std::to_string(k) + "_bottom.txt"));
    write_trace(bottom, extract_trace(u, Boundary::bottom));
  }
}

void write_fields(const fs::path &dir, const SweepResult &sw)
{
  fs::create_directories(dir);
  for (std::size_t k = 0; k < sw.per_alpha.size(); k++)
  {
    auto os = open_out(dir / ("alpha_" + std::to_string(k) + ".txt"));
    write_field(os, sw.per_alpha[k].forward, 0.5 * sw.per_alpha[k].residual.l2_norm_squared());
  }
}

double worst_energy_residual(const SweepResult &sw, const DesignField &design,
                             const ProblemSetup &setup, std::ostream *table)
{
  if (table)
  {
    *table << "alpha,incident,reflected,transmitted,absorbed,evanescent_exchange,residual\n";
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < sw.per_alpha.size(); k++)
  {
    const EnergyBalance e = energy_balance(sw.per_alpha[k].forward, design, setup.alphas()[k]);
    worst = std::max(worst, e.relative_residual());
    if (table)
    {
      *table << setup.alphas()[k].alpha << ',' << e.incident << ',' << e.reflected << ','
             << e.transmitted << ',' << e.absorbed << ',' << e.evanescent_exchange << ','
             << e.relative_residual() << '\n';
    }
  }
  return worst;
}

// cross_section.csv, field.csv, modes.csv and metrics.txt for one design.
void write_analysis(const fs::path &outdir, const ExperimentConfig &cfg, const ProblemSetup &setup,
                    const DesignField &design, const ExecutionPolicy &policy)
{
  fs::create_directories(outdir);
  const SweepResult sw = sweep(design, setup, SweepMode::forward, policy);
  const AlphaQuadrature &q = setup.quadrature();

  std::vector<ModalTrace> image, target;
  for (std::size_t k = 0; k < sw.per_alpha.size(); k++)
  {
    image.push_back(extract_trace(sw.per_alpha[k].forward, Boundary::bottom));
    target.push_back(setup.alphas()[k].target);
  }

  const double y_image = -(cfg.b + cfg.h1);
  std::vector<double> xs = linspace(-kPi, kPi, kImageSamples + 1);
  xs.pop_back();
  const auto line = reconstruct_line(image, q, cfg.omega, cfg.b, xs, y_image);
  const auto metrics = spot_size(xs, line, cfg.omega, y_image);
  {
    auto os = open_out(outdir / "cross_section.csv");
    os << "x,intensity\n";
    for (std::size_t i = 0; i < xs.size(); i++)
    {
      os << xs[i] << ',' << std::norm(line[i]) << '\n';
    }
  }
  {
    const SampledField f =
        reconstruct_below(image, q, cfg.omega, cfg.b, linspace(-kPi, kPi, 129), 2.0 * cfg.h1, 65);
    auto os = open_out(outdir / "field.csv");
    os << "x,y,re,im,intensity\n";
    for (std::size_t iy = 0; iy < f.y.size(); iy++)
    {
      for (std::size_t ix = 0; ix < f.x.size(); ix++)
      {
        const Complex v = f(static_cast<int>(ix), static_cast<int>(iy));
        os << f.x[ix] << ',' << f.y[iy] << ',' << v.real() << ',' << v.imag() << ','
           << std::norm(v) << '\n';
      }
    }
  }
  {
    auto os = open_out(outdir / "modes.csv");
    os << "alpha,n,image,target\n";
    for (std::size_t k = 0; k < image.size(); k++)
    {
      const auto a = evanescent_spectrum(image[k], cfg.omega);
      const auto b = evanescent_spectrum(target[k], cfg.omega);
      for (std::size_t m = 0; m < a.size(); m++)
      {
        os << image[k].alpha() << ',' << a[m].n << ',' << a[m].magnitude << ',' << b[m].magnitude
           << '\n';
      }
    }
  }
  auto energy_table = open_out(outdir / "energy.csv");
  const double energy = worst_energy_residual(sw, design, setup, &energy_table);
  auto os = open_out(outdir / "metrics.txt");
  if (metrics)
  {
    os << "spot_size_lambda " << metrics->spot_size_lambda << '\n';
    os << "peak_x " << metrics->peak_x << '\n';
    os << "peak_intensity " << metrics->peak_intensity << '\n';
  }
  else
  {
    os << "spot_size_lambda unmeasurable\n";
  }
  os << "J " << sw.objective << '\n';
  os << "energy_residual " << energy << '\n';
  os << "spectrum_similarity " << spectrum_similarity(image, target, cfg.omega) << '\n';
}

int cmd_solve(const ExperimentConfig &cfg, const fs::path &outdir, const ExecutionPolicy &policy,
              const std::optional<std::string> &design_path)
{
  const ProblemSetup setup = cfg.setup();
  const DesignField design = design_path ? load_design(*design_path) : cfg.initial();
  if (!(design.grid() == setup.grid()))
  {
    throw ConfigError("design grid does not match the configuration");
  }
  fs::create_directories(outdir);
  save_design((outdir / "design.txt").string(), design);
  const SweepResult sw = sweep(design, setup, SweepMode::forward, policy);
  write_traces(outdir / "traces", sw);
  write_fields(outdir / "fields", sw);
  auto table = open_out(outdir / "energy.csv");
  const double energy = worst_energy_residual(sw, design, setup, &table);
  auto os = open_out(outdir / "metrics.txt");
  os << "J " << sw.objective << '\n';
  os << "energy_residual " << energy << '\n';
  std::cout << "J = " << sw.objective << ", worst energy residual = " << energy << '\n';
  return kOk;
}

void write_log(const fs::path &path, const std::vector<IterationRecord> &history)
{
  auto os = open_out(path);
  os << "# iter J step grad_norm kkt\n";
  for (const auto &r : history)
  {
    write_iteration(os, r);
  }
}

int cmd_optimize(const ExperimentConfig &cfg, const fs::path &outdir,
                 const ExecutionPolicy &policy, const std::optional<std::string> &resume)
{
  const ProblemSetup setup = cfg.setup();
  OptimizerState state = resume ? load_checkpoint(*resume) : initial_state(cfg.initial());
  if (!(state.design.grid() == setup.grid()) || !(state.design.bounds() == cfg.bounds))
  {
    throw ConfigError("checkpoint design does not match the configuration");
  }
  fs::create_directories(outdir);
  const fs::path checkpoint = outdir / "checkpoint";

  std::optional<RunResult> result;
  try
  {
    result = run(std::move(state), setup, cfg.optimizer(), policy,
                 [&](const OptimizerState &s, const IterationRecord &rec) {
                   save_checkpoint(checkpoint.string(), s);
                   write_log(outdir / "iterations.log", s.history);
                   std::cout << "iter " << rec.iter << "  J " << std::setprecision(10)
                             << rec.objective << "  kkt " << rec.kkt << std::endl;
                 });
  }
  catch (const std::exception &e)
  {
    std::cerr << "optimization aborted: " << e.what() << "\nresume from " << checkpoint << '\n';
    return kSolverFailed;
  }

  const OptimizerState &final_state = result->state;
  save_checkpoint(checkpoint.string(), final_state);
  write_log(outdir / "iterations.log", final_state.history);
  save_design((outdir / "design.txt").string(), final_state.design);
  {
    auto os = open_out(outdir / "status.txt");
    os << "status " << to_string(final_state.status) << '\n';
    os << "iterations " << final_state.iteration << '\n';
    os << "J " << final_state.objective << '\n';
  }
  write_analysis(outdir, cfg, setup, final_state.design, policy);
  std::cout << "finished: " << to_string(final_state.status) << " after "
            << final_state.iteration << " iterations\n";
  return kOk;
}

int cmd_analyze(const ExperimentConfig &cfg, const fs::path &outdir, const ExecutionPolicy &policy,
                const std::optional<std::string> &design_path)
{
  const ProblemSetup setup = cfg.setup();
  const DesignField design = design_path ? load_design(*design_path) : cfg.initial();
  if (!(design.grid() == setup.grid()))
  {
    throw ConfigError("design grid does not match the configuration");
  }
  write_analysis(outdir, cfg, setup, design, policy);
  std::ifstream is(outdir / "metrics.txt");
  std::cout << is.rdbuf();
  return kOk;
}

int cmd_verify(int nx, int ny, bool inject_beta_fault)
{
  using namespace superlens::verify;
  std::vector<CheckResult> results;
  results.push_back(check_vacuum(nx, ny));
  results.push_back(check_layered(2 * nx, 2 * ny, layered_tolerance(2 * nx)));
  results.push_back(check_fd_gradient(16, 12, 2, 1, 2, 1e-4));
  results.push_back(check_energy({{nx, ny}}, 2, 4, 1e-8, inject_beta_fault));
  results.push_back(check_dtn_adjoint(nx, 1e-12));

  bool all = true;
  for (const auto &r : results)
  {
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(34) << r.name << ' '
              << r.detail << " (tolerance " << r.tolerance << ")\n";
    all = all && r.pass;
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"superlens: periodic slab lens design"};
  app.require_subcommand(1);

  std::string config_path;
  std::string outdir_flag;
  int jobs = 0;
  std::optional<std::string> resume;
  std::optional<std::string> design_path;
  int verify_nx = 64;
  int verify_ny = 48;
  std::string fault;

  auto add_common = [&](CLI::App *sub, bool needs_config) {
    auto *opt = sub->add_option("--config", config_path, "experiment configuration file");
    if (needs_config)
    {
      opt->required();
    }
    sub->add_option("--outdir", outdir_flag, "output directory (overrides the config)");
    sub->add_option("--jobs", jobs, "worker threads for the alpha sweep (0 = all)")
        ->check(CLI::NonNegativeNumber);
  };

  auto *solve = app.add_subcommand("solve", "solve every alpha for one design");
  add_common(solve, true);
  solve->add_option("--design", design_path, "design file (default: the configured initial guess)");

  auto *optimize = app.add_subcommand("optimize", "projected gradient optimization");
  add_common(optimize, true);
  optimize->add_option("--resume", resume, "checkpoint directory to resume from");

  auto *analyze = app.add_subcommand("analyze", "image metrics and spectra for one design");
  add_common(analyze, true);
  analyze->add_option("--design", design_path, "design file (default: the configured initial guess)");

  auto *verify = app.add_subcommand("verify", "oracle and property checks");
  verify->add_option("--nx", verify_nx, "grid columns")->check(CLI::Range(4, 4096));
  verify->add_option("--ny", verify_ny, "grid rows")->check(CLI::Range(2, 4096));
  verify->add_option("--inject-fault", fault)->check(CLI::IsMember({"beta-sign"}))->group("");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try
  {
    if (verify->parsed())
    {
      return cmd_verify(verify_nx, verify_ny, fault == "beta-sign");
    }
    const ExperimentConfig cfg = load_config(config_path);
    const fs::path outdir = outdir_flag.empty() ? fs::path(cfg.outdir) : fs::path(outdir_flag);
    const ExecutionPolicy policy{jobs};
    if (solve->parsed())
      return cmd_solve(cfg, outdir, policy, design_path);
    if (optimize->parsed())
      return cmd_optimize(cfg, outdir, policy, resume);
    if (analyze->parsed())
      return cmd_analyze(cfg, outdir, policy, design_path);
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  }
  catch (const std::exception &e)
  {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailed;
  }
  return kUsage;
}
