#include "superlens/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace superlens
{

namespace
{

std::string trim(const std::string &s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
  {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry
{
  std::string value;
  int line;
};

[[noreturn]] void fail_at(int line, const std::string &what)
{
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double to_double(const Entry &e, const std::string &key)
{
  std::istringstream is(e.value);
  double v = 0.0;
  std::string rest;
  if (!(is >> v) || (is >> rest))
  {
    fail_at(e.line, key + " expects a number, got '" + e.value + "'");
  }
  return v;
}

long long to_integer(const Entry &e, const std::string &key)
{
  long long v = 0;
  const char *first = e.value.data();
  const char *last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
  {
    fail_at(e.line, key + " expects an integer, got '" + e.value + "'");
  }
  return v;
}

std::vector<double> to_list(const Entry &e, const std::string &key)
{
  std::istringstream is(e.value);
  std::vector<double> out;
  std::string tok;
  while (is >> tok)
  {
    out.push_back(to_double(Entry{tok, e.line}, key));
  }
  return out;
}

const std::set<std::string> &known_keys()
{
  static const std::set<std::string> keys = {
      "omega", "b",      "h",         "h1",         "nx",     "ny",      "alpha_count",
      "n_trunc_extra",   "rho_r0",    "rho_r1",     "rho_i0", "rho_i1",  "init_kind",
      "init_params",     "max_iter",  "tol_j",      "tol_kkt", "seed",   "outdir"};
  return keys;
}

}  // namespace

ExperimentConfig parse_config(std::istream &is)
{
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw))
  {
    line++;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty())
    {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
    {
      fail_at(line, "expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!known_keys().count(key))
    {
      fail_at(line, "unknown key '" + key + "'");
    }
    if (value.empty())
    {
      fail_at(line, "empty value for '" + key + "'");
    }
    if (entries.count(key))
    {
      fail_at(line, "duplicate key '" + key + "'");
    }
    entries[key] = Entry{value, line};
  }

  auto require = [&](const std::string &key) -> const Entry & {
    const auto it = entries.find(key);
    if (it == entries.end())
    {
      throw ConfigError("missing required key '" + key + "'");
    }
    return it->second;
  };
  auto has = [&](const std::string &key) { return entries.count(key) > 0; };

  ExperimentConfig c;
  if (has("omega"))
    c.omega = to_double(entries["omega"], "omega");
  if (has("b"))
    c.b = to_double(entries["b"], "b");
  c.h = to_double(require("h"), "h");
  c.h1 = to_double(require("h1"), "h1");
  if (has("nx"))
    c.nx = static_cast<int>(to_integer(entries["nx"], "nx"));
  if (has("ny"))
    c.ny = static_cast<int>(to_integer(entries["ny"], "ny"));
  if (has("alpha_count"))
    c.alpha_count = static_cast<int>(to_integer(entries["alpha_count"], "alpha_count"));
  if (has("n_trunc_extra"))
    c.n_trunc_extra = static_cast<int>(to_integer(entries["n_trunc_extra"], "n_trunc_extra"));
  c.bounds.rho_r0 = to_double(require("rho_r0"), "rho_r0");
  c.bounds.rho_r1 = to_double(require("rho_r1"), "rho_r1");
  c.bounds.rho_i0 = to_double(require("rho_i0"), "rho_i0");
  c.bounds.rho_i1 = to_double(require("rho_i1"), "rho_i1");
  if (has("max_iter"))
    c.max_iter = static_cast<int>(to_integer(entries["max_iter"], "max_iter"));
  if (has("tol_j"))
    c.tol_j = to_double(entries["tol_j"], "tol_j");
  if (has("tol_kkt"))
    c.tol_kkt = to_double(entries["tol_kkt"], "tol_kkt");
  if (has("seed"))
  {
    const long long s = to_integer(entries["seed"], "seed");
    if (s < 0)
      fail_at(entries["seed"].line, "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (has("outdir"))
    c.outdir = entries["outdir"].value;

  const Entry &kind = require("init_kind");
  if (kind.value == "random")
  {
    c.init = RandomInit{c.seed};
  }
  else if (kind.value == "uniform")
  {
    const Entry &p = require("init_params");
    const auto v = to_list(p, "init_params");
    if (v.size() != 1)
      fail_at(p.line, "uniform init_params takes one value");
    c.init = UniformInit{v[0]};
  }
  else if (kind.value == "crystal")
  {
    const Entry &p = require("init_params");
    const auto v = to_list(p, "init_params");
    if (v.size() != 4)
      fail_at(p.line, "crystal init_params takes 'rod_eps background_eps rod_radius lattice'");
    c.init = PhotonicCrystalInit{v[0], v[1], v[2], v[3]};
  }
  else
  {
    fail_at(kind.line, "init_kind must be uniform, crystal or random");
  }

  auto check = [&](bool ok, const std::string &key, const std::string &what) {
    if (!ok)
    {
      if (has(key))
        fail_at(entries[key].line, key + " " + what);
      throw ConfigError(key + " " + what);
    }
  };
  check(c.omega > 0.0, "omega", "must be positive");
  check(c.b > 0.0, "b", "must be positive");
  check(c.h > 0.0, "h", "must be positive");
  check(c.h1 > 0.0, "h1", "must be positive");
  check(c.nx >= 4 && c.nx % 2 == 0, "nx", "must be an even integer >= 4");
  check(c.ny >= 2, "ny", "must be >= 2");
  check(c.alpha_count >= 1, "alpha_count", "must be >= 1");
  check(c.n_trunc_extra >= 0, "n_trunc_extra", "must be >= 0");
  check(c.max_iter >= 0, "max_iter", "must be >= 0");
  check(c.tol_j >= 0.0, "tol_j", "must be >= 0");
  check(c.tol_kkt >= 0.0, "tol_kkt", "must be >= 0");
  try
  {
    c.bounds.validate();
  }
  catch (const ConfigError &e)
  {
    fail_at(entries["rho_r0"].line, e.what());
  }
  // Fail early on truncation and on out-of-bounds initial values.
  check_truncation(c.grid(), c.omega, c.n_trunc());
  (void)c.initial();
  return c;
}

ExperimentConfig load_config(const std::string &path)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ConfigError("cannot open config file " + path);
  }
  return parse_config(is);
}

int ExperimentConfig::n_trunc() const
{
  return default_n_trunc(omega, n_trunc_extra, nx);
}

AlphaQuadrature ExperimentConfig::quadrature() const
{
  return make_quadrature(alpha_count, omega, n_trunc());
}

ProblemSetup ExperimentConfig::setup() const
{
  return ProblemSetup(grid(), physics(), quadrature(), n_trunc());
}

OptimizerConfig ExperimentConfig::optimizer() const
{
  OptimizerConfig o;
  o.max_iter = max_iter;
  o.tol_j = tol_j;
  o.tol_kkt = tol_kkt;
  return o;
}

DesignField ExperimentConfig::initial() const
{
  return initial_design(init, grid(), bounds);
}

}  // namespace superlens
