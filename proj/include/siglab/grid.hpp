#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "siglab/error.hpp"

namespace siglab {

// Physical point. Coordinates 0..dim-2 are tangential, coordinate dim-1 is
// the normal direction x_n; entries beyond dim are zero.
using Point = std::array<double, 3>;

using FieldFn = std::function<double(const Point&)>;

// Uniform Cartesian grid on the closed upper half-cube
// [-L,L]^{n-1} x [0,L] with one spacing h on all axes. The thin plane
// {x_n = 0} is the k = 0 node layer.
struct Grid {
  int dim = 2;         // n in {2,3}
  int resolution = 0;  // nodes per tangential axis, odd
  double extent = 0;   // L
  double spacing = 0;  // h = 2L/(resolution-1)
  int nt = 0;          // tangential nodes per axis (= resolution)
  int nz = 0;          // vertical layers, x_n = k*h for k in [0, nz)

  std::size_t node_count() const {
    std::size_t t = static_cast<std::size_t>(nt);
    if (dim == 3) t *= static_cast<std::size_t>(nt);
    return t * static_cast<std::size_t>(nz);
  }
  // Storage order: x1 fastest, x_n slowest.
  std::size_t index(int i, int j, int k) const {
    if (dim == 2) return static_cast<std::size_t>(i) + static_cast<std::size_t>(nt) * k;
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nt) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(nt) * k);
  }
  double tangential_coord(int i) const { return -extent + spacing * i; }
  double vertical_coord(int k) const { return spacing * k; }
  Point node_point(int i, int j, int k) const {
    if (dim == 2) return {tangential_coord(i), vertical_coord(k), 0.0};
    return {tangential_coord(i), tangential_coord(j), vertical_coord(k)};
  }
  bool same_layout(const Grid& o) const {
    return dim == o.dim && resolution == o.resolution && extent == o.extent;
  }
};

Grid make_grid(int dim, int resolution, double extent);

// Scalar field on the upper half-grid, logically even in x_n. Immutable
// after construction; evaluation reflects across the thin plane.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(const Grid& grid, std::vector<double> values);

  static GridFunction sample(const Grid& grid, const FieldFn& f);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t idx) const { return values_[idx]; }

  // Multilinear interpolation; points with x_n < 0 evaluate at (x', -x_n).
  double evaluate(const Point& p) const;

  double max_abs() const;

  FieldFn field() const {
    return [this](const Point& p) { return evaluate(p); };
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Discrete gradient on the upper half-grid. The x_n component at thin-plane
// nodes is the one-sided limit from above.
struct VectorField {
  Grid grid;
  std::array<std::vector<double>, 3> comp;

  // Interpolated component; for x_n < 0 tangential components reflect evenly
  // and the normal component flips sign.
  double evaluate(int axis, const Point& p) const;
};

VectorField gradient(const GridFunction& f);

// Ball centered on the thin plane; the locus of all concentric-ball
// functionals. Admissible iff contained in the grid with margin 2h and
// radius at least 4h.
struct BallSpec {
  Point center{0.0, 0.0, 0.0};
  double radius = 0.0;
};

bool ball_admissible(const Grid& grid, const BallSpec& ball);
void require_admissible(const Grid& grid, const BallSpec& ball);

}  // namespace siglab
