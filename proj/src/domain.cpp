#include "superlens/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace superlens
{

Grid::Grid(int nx, int ny, double b) : nx_(nx), ny_(ny), b_(b)
{
  if (nx < 4 || ny < 2)
  {
    throw ConfigError("grid: need nx >= 4 and ny >= 2, got " + std::to_string(nx) + "x" +
                      std::to_string(ny));
  }
  if (!(b > 0.0))
  {
    throw ConfigError("grid: slab thickness b must be positive");
  }
}

std::array<int, 4> Grid::cell_nodes(int i, int j) const
{
  return {node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)};
}

void AdmissibleBounds::validate() const
{
  if (!(rho_r0 > 0.0) || !(rho_r0 <= rho_r1))
  {
    throw ConfigError("bounds: need 0 < rho_r0 <= rho_r1");
  }
  if (!(rho_i0 >= 0.0) || !(rho_i0 <= rho_i1))
  {
    throw ConfigError("bounds: need 0 <= rho_i0 <= rho_i1");
  }
}

bool AdmissibleBounds::contains(Complex v) const
{
  return v.real() >= rho_r0 && v.real() <= rho_r1 && v.imag() >= rho_i0 && v.imag() <= rho_i1;
}

Complex AdmissibleBounds::clamp(Complex v) const
{
  return {std::clamp(v.real(), rho_r0, rho_r1), std::clamp(v.imag(), rho_i0, rho_i1)};
}

DesignField::DesignField(Grid grid, AdmissibleBounds bounds, Complex fill)
  : grid_(grid), bounds_(bounds), values_(grid.num_cells(), fill)
{
}

DesignField::DesignField(Grid grid, AdmissibleBounds bounds, std::vector<Complex> values)
  : grid_(grid), bounds_(bounds), values_(std::move(values))
{
  if (static_cast<int>(values_.size()) != grid_.num_cells())
  {
    throw ConfigError("design: value count does not match grid");
  }
}

bool DesignField::is_admissible() const
{
  return std::all_of(values_.begin(), values_.end(),
                     [&](Complex v) { return bounds_.contains(v); });
}

double DesignField::asymmetry() const
{
  double worst = 0.0;
  for (int j = 0; j < grid_.ny(); j++)
  {
    for (int i = 0; i < grid_.nx(); i++)
    {
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(grid_.mirror_cell_column(i), j)));
    }
  }
  return worst;
}

std::uint64_t design_hash(const DesignField &field)
{
  std::uint64_t h = 1469598103934665603ull;
  for (const auto &v : field.values())
  {
    const double parts[2] = {v.real(), v.imag()};
    const auto *bytes = reinterpret_cast<const unsigned char *>(parts);
    for (std::size_t k = 0; k < sizeof(parts); k++)
    {
      h = (h ^ bytes[k]) * 1099511628211ull;
    }
  }
  return h;
}

DesignField project_to_admissible(DesignField field)
{
  for (auto &v : field.values())
  {
    v = field.bounds().clamp(v);
  }
  return field;
}

DesignField mirror_x(const DesignField &field)
{
  DesignField out = field;
  const Grid &g = field.grid();
  for (int j = 0; j < g.ny(); j++)
  {
    for (int i = 0; i < g.nx(); i++)
    {
      out(i, j) = field(g.mirror_cell_column(i), j);
    }
  }
  return out;
}

DesignField symmetrize_x(DesignField field)
{
  const Grid &g = field.grid();
  if (g.nx() % 2 != 0)
  {
    throw ConfigError("symmetrize_x: nx must be even, got " + std::to_string(g.nx()));
  }
  for (int j = 0; j < g.ny(); j++)
  {
    for (int i = 0; i < g.nx() / 2; i++)
    {
      const int m = g.mirror_cell_column(i);
      const Complex avg = 0.5 * (field(i, j) + field(m, j));
      field(i, j) = avg;
      field(m, j) = avg;
    }
  }
  return field;
}

namespace
{

void require_in_bounds(const AdmissibleBounds &bounds, double v, const char *what)
{
  if (!bounds.contains(Complex(v, bounds.rho_i0)))
  {
    throw ConfigError(std::string("initial design: ") + what + " = " + std::to_string(v) +
                      " lies outside [rho_r0, rho_r1]");
  }
}

struct InitVisitor
{
  const Grid &grid;
  const AdmissibleBounds &bounds;

  DesignField operator()(const UniformInit &u) const
  {
    require_in_bounds(bounds, u.value, "uniform value");
    return DesignField(grid, bounds, Complex(u.value, bounds.rho_i0));
  }

  DesignField operator()(const PhotonicCrystalInit &pc) const
  {
    require_in_bounds(bounds, pc.rod_eps, "rod_eps");
    require_in_bounds(bounds, pc.background_eps, "background_eps");
    if (pc.rod_radius < 0.0 || !(pc.lattice > 0.0))
    {
      throw ConfigError("initial design: need rod_radius >= 0 and lattice > 0");
    }
    DesignField field(grid, bounds, Complex(pc.background_eps, bounds.rho_i0));
    // Rods at (m a, -(l + 1/2) a); x measured in (-pi, pi] so the lattice is
    // centred on the mirror axis.
    for (int j = 0; j < grid.ny(); j++)
    {
      const double y = grid.cell_center_y(j);
      const double ly = -y / pc.lattice - 0.5;
      const double dy = (ly - std::round(ly)) * pc.lattice;
      for (int i = 0; i < grid.nx(); i++)
      {
        double x = grid.cell_center_x(i);
        if (x > kPi)
        {
          x -= kTwoPi;
        }
        const double dx = x - pc.lattice * std::round(x / pc.lattice);
        if (dx * dx + dy * dy < pc.rod_radius * pc.rod_radius)
        {
          field(i, j) = Complex(pc.rod_eps, bounds.rho_i0);
        }
      }
    }
    return field;
  }

  DesignField operator()(const RandomInit &r) const
  {
    std::mt19937_64 rng(r.seed);
    std::uniform_real_distribution<double> re(bounds.rho_r0, bounds.rho_r1);
    std::uniform_real_distribution<double> im(bounds.rho_i0, bounds.rho_i1);
    DesignField field(grid, bounds);
    for (auto &v : field.values())
    {
      const double a = re(rng);
      const double b = im(rng);
      v = Complex(a, b);
    }
    return field;
  }
};

}  // namespace

DesignField initial_design(const InitialKind &kind, const Grid &grid,
                           const AdmissibleBounds &bounds)
{
  bounds.validate();
  DesignField field = std::visit(InitVisitor{grid, bounds}, kind);
  return project_to_admissible(symmetrize_x(std::move(field)));
}

void write_design(std::ostream &os, const DesignField &field)
{
  const auto &g = field.grid();
  const auto &bd = field.bounds();
  os << std::setprecision(17);
  os << g.nx() << ' ' << g.ny() << ' ' << g.b() << ' ' << bd.rho_r0 << ' ' << bd.rho_r1 << ' '
     << bd.rho_i0 << ' ' << bd.rho_i1 << '\n';
  for (const auto &v : field.values())
  {
    os << v.real() << ' ' << v.imag() << '\n';
  }
}

DesignField read_design(std::istream &is)
{
  int nx = 0, ny = 0;
  double b = 0.0;
  AdmissibleBounds bd;
  if (!(is >> nx >> ny >> b >> bd.rho_r0 >> bd.rho_r1 >> bd.rho_i0 >> bd.rho_i1))
  {
    throw ConfigError("design file: malformed header");
  }
  Grid grid(nx, ny, b);
  std::vector<Complex> values(grid.num_cells());
  for (auto &v : values)
  {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im))
    {
      throw ConfigError("design file: expected " + std::to_string(grid.num_cells()) +
                        " value rows");
    }
    v = Complex(re, im);
  }
  return DesignField(grid, bd, std::move(values));
}

void save_design(const std::string &path, const DesignField &field)
{
  std::ofstream os(path);
  if (!os)
  {
    throw ConfigError("cannot write " + path);
  }
  write_design(os, field);
}

DesignField load_design(const std::string &path)
{
  std::ifstream is(path);
  if (!is)
  {
    throw ConfigError("cannot open design file " + path);
  }
  return read_design(is);
}

}  // namespace superlens
