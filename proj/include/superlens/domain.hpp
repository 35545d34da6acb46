#ifndef SUPERLENS_DOMAIN_HPP
#define SUPERLENS_DOMAIN_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "superlens/numerics.hpp"

namespace superlens
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//
// Uniform rectangular grid on the slab: x in [0, 2pi) periodic, y in [-b, 0].
// Node (i, j) sits at (i hx, -b + j hy) for 0 <= i < nx, 0 <= j <= ny; column nx
// is identified with column 0. Row j = 0 is the lower boundary, row j = ny the upper.
//
class Grid
{
public:
  Grid(int nx, int ny, double b);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double b() const { return b_; }
  double hx() const { return kTwoPi / nx_; }
  double hy() const { return b_ / ny_; }

  int num_nodes() const { return nx_ * (ny_ + 1); }
  int num_cells() const { return nx_ * ny_; }

  int node(int i, int j) const { return j * nx_ + wrap(i); }
  int cell(int i, int j) const { return j * nx_ + i; }
  int bottom_node(int i) const { return node(i, 0); }
  int top_node(int i) const { return node(i, ny_); }

  // Corner nodes in the order (i,j), (i+1,j), (i,j+1), (i+1,j+1).
  std::array<int, 4> cell_nodes(int i, int j) const;

  double node_x(int i) const { return i * hx(); }
  double node_y(int j) const { return -b_ + j * hy(); }
  double cell_center_x(int i) const { return (i + 0.5) * hx(); }
  double cell_center_y(int j) const { return -b_ + (j + 0.5) * hy(); }

  // Reflection x -> -x about node column 0.
  int mirror_cell_column(int i) const { return nx_ - 1 - i; }
  int mirror_node_column(int i) const { return wrap(nx_ - i); }

  bool operator==(const Grid &) const = default;

private:
  int wrap(int i) const { return ((i % nx_) + nx_) % nx_; }

  int nx_;
  int ny_;
  double b_;
};

struct AdmissibleBounds
{
  double rho_r0 = 1.0;
  double rho_r1 = 12.0;
  double rho_i0 = 0.0;
  double rho_i1 = 0.0;

  // Throws ConfigError unless 0 < rho_r0 <= rho_r1 and 0 <= rho_i0 <= rho_i1.
  void validate() const;
  bool contains(Complex v) const;
  Complex clamp(Complex v) const;

  bool operator==(const AdmissibleBounds &) const = default;
};

// Per-cell complex relative permittivity on the slab.
class DesignField
{
public:
  DesignField(Grid grid, AdmissibleBounds bounds, Complex fill = Complex(1.0, 0.0));
  DesignField(Grid grid, AdmissibleBounds bounds, std::vector<Complex> values);

  const Grid &grid() const { return grid_; }
  const AdmissibleBounds &bounds() const { return bounds_; }
  const std::vector<Complex> &values() const { return values_; }
  std::vector<Complex> &values() { return values_; }

  Complex operator()(int i, int j) const { return values_[grid_.cell(i, j)]; }
  Complex &operator()(int i, int j) { return values_[grid_.cell(i, j)]; }

  bool is_admissible() const;
  // Max |rho(i,j) - rho(mirror(i),j)| over all cells.
  double asymmetry() const;

  bool operator==(const DesignField &) const = default;

private:
  Grid grid_;
  AdmissibleBounds bounds_;
  std::vector<Complex> values_;
};

// FNV-1a over the raw cell values; identifies a design in error messages.
std::uint64_t design_hash(const DesignField &field);

DesignField project_to_admissible(DesignField field);
DesignField symmetrize_x(DesignField field);

// Mirror image x -> -x of the design.
DesignField mirror_x(const DesignField &field);

struct UniformInit
{
  double value;
};

struct PhotonicCrystalInit
{
  double rod_eps;
  double background_eps;
  double rod_radius;
  double lattice;
};

struct RandomInit
{
  std::uint64_t seed;
};

using InitialKind = std::variant<UniformInit, PhotonicCrystalInit, RandomInit>;

// Always returns an admissible, x-symmetric field. Throws ConfigError for
// parameters outside the bounds.
DesignField initial_design(const InitialKind &kind, const Grid &grid,
                           const AdmissibleBounds &bounds);

// Text format: header "nx ny b rho_r0 rho_r1 rho_i0 rho_i1", then nx*ny lines
// "re im" in cell order (row j outer, column i inner), 17 significant digits.
void write_design(std::ostream &os, const DesignField &field);
DesignField read_design(std::istream &is);
void save_design(const std::string &path, const DesignField &field);
DesignField load_design(const std::string &path);

}  // namespace superlens

#endif  // SUPERLENS_DOMAIN_HPP
