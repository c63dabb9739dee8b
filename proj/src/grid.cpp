#include "siglab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "siglab/kernels.hpp"

namespace siglab {

Grid make_grid(int dim, int resolution, double extent) {
  if (dim != 2 && dim != 3) throw Error(Err::ConfigError, "dim must be 2 or 3");
  if (resolution % 2 == 0)
    throw Error(Err::EvenResolution, "resolution must be odd so the thin plane lies on a node layer");
  if (resolution < 17) throw Error(Err::ResolutionTooSmall, "resolution must be at least 17");
  if (!(extent > 0)) throw Error(Err::BadExtent, "extent must be positive");
  Grid g;
  g.dim = dim;
  g.resolution = resolution;
  g.extent = extent;
  g.spacing = 2.0 * extent / (resolution - 1);
  g.nt = resolution;
  g.nz = (resolution + 1) / 2;
  return g;
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw Error(Err::ConfigError, "value array size does not match grid node count");
}

GridFunction GridFunction::sample(const Grid& grid, const FieldFn& f) {
  std::vector<double> vals(grid.node_count());
  const int nj = grid.dim == 3 ? grid.nt : 1;
  kernels::parallel_for(grid.nz, [&](std::ptrdiff_t k) {
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < grid.nt; ++i)
        vals[grid.index(i, j, static_cast<int>(k))] = f(grid.node_point(i, j, static_cast<int>(k)));
  });
  for (double v : vals)
    if (!std::isfinite(v)) throw Error(Err::NonFiniteSample, "evaluator produced a non-finite value at a node");
  return GridFunction(grid, std::move(vals));
}

namespace {

struct CellLocation {
  int cell[3];
  double frac[3];
};

// Locate p in grid cells after even reflection; throws when outside the
// closed reflected domain (tolerance one part in 1e12 of the extent).
CellLocation locate(const Grid& g, const Point& p) {
  const double L = g.extent, h = g.spacing;
  const double tol = 1e-12 * L;
  CellLocation loc{};
  const int ntan = g.dim - 1;
  for (int a = 0; a < ntan; ++a) {
    const double x = p[a];
    if (x < -L - tol || x > L + tol) throw Error(Err::OutOfDomain, "point outside tangential extent");
    double u = (std::clamp(x, -L, L) + L) / h;
    int c = std::min(static_cast<int>(u), g.nt - 2);
    loc.cell[a] = c;
    loc.frac[a] = u - c;
  }
  const double z = std::fabs(p[g.dim - 1]);
  if (z > L + tol) throw Error(Err::OutOfDomain, "point outside vertical extent");
  double u = std::clamp(z, 0.0, L) / h;
  int c = std::min(static_cast<int>(u), g.nz - 2);
  loc.cell[g.dim - 1] = c;
  loc.frac[g.dim - 1] = u - c;
  return loc;
}

}  // namespace

double GridFunction::evaluate(const Point& p) const {
  const Grid& g = grid_;
  const CellLocation loc = locate(g, p);
  if (g.dim == 2) {
    const int i = loc.cell[0], k = loc.cell[1];
    const double fx = loc.frac[0], fz = loc.frac[1];
    const double v00 = values_[g.index(i, 0, k)], v10 = values_[g.index(i + 1, 0, k)];
    const double v01 = values_[g.index(i, 0, k + 1)], v11 = values_[g.index(i + 1, 0, k + 1)];
    return (1 - fz) * ((1 - fx) * v00 + fx * v10) + fz * ((1 - fx) * v01 + fx * v11);
  }
  const int i = loc.cell[0], j = loc.cell[1], k = loc.cell[2];
  const double fx = loc.frac[0], fy = loc.frac[1], fz = loc.frac[2];
  double acc = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    const double wz = dz ? fz : 1 - fz;
    for (int dy = 0; dy < 2; ++dy) {
      const double wy = dy ? fy : 1 - fy;
      const double w = wz * wy;
      acc += w * ((1 - fx) * values_[g.index(i, j + dy, k + dz)] + fx * values_[g.index(i + 1, j + dy, k + dz)]);
    }
  }
  return acc;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double VectorField::evaluate(int axis, const Point& p) const {
  const Grid& g = grid;
  const CellLocation loc = locate(g, p);
  const std::vector<double>& c = comp[axis];
  double val;
  if (g.dim == 2) {
    const int i = loc.cell[0], k = loc.cell[1];
    const double fx = loc.frac[0], fz = loc.frac[1];
    val = (1 - fz) * ((1 - fx) * c[g.index(i, 0, k)] + fx * c[g.index(i + 1, 0, k)]) +
          fz * ((1 - fx) * c[g.index(i, 0, k + 1)] + fx * c[g.index(i + 1, 0, k + 1)]);
  } else {
    const int i = loc.cell[0], j = loc.cell[1], k = loc.cell[2];
    const double fx = loc.frac[0], fy = loc.frac[1], fz = loc.frac[2];
    val = 0.0;
    for (int dz = 0; dz < 2; ++dz) {
      const double wz = dz ? fz : 1 - fz;
      for (int dy = 0; dy < 2; ++dy) {
        const double wy = dy ? fy : 1 - fy;
        val += wz * wy * ((1 - fx) * c[g.index(i, j + dy, k + dz)] + fx * c[g.index(i + 1, j + dy, k + dz)]);
      }
    }
  }
  // The gradient of an even function has odd normal component.
  if (axis == g.dim - 1 && p[g.dim - 1] < 0) val = -val;
  return val;
}

VectorField gradient(const GridFunction& f) {
  const Grid& g = f.grid();
  VectorField vf;
  vf.grid = g;
  for (int a = 0; a < g.dim; ++a) vf.comp[a].assign(g.node_count(), 0.0);
  const std::vector<double>& v = f.values();
  const double h = g.spacing;
  const int nj = g.dim == 3 ? g.nt : 1;

  auto d_axis = [&](int pos, int n, std::size_t stride, std::size_t idx) {
    // Central in the interior, second-order one-sided at the ends. At the
    // thin plane (pos = 0 on the vertical axis) the forward stencil never
    // touches lower-half values: this is the one-sided limit from above.
    if (pos == 0) return (-3.0 * v[idx] + 4.0 * v[idx + stride] - v[idx + 2 * stride]) / (2.0 * h);
    if (pos == n - 1) return (3.0 * v[idx] - 4.0 * v[idx - stride] + v[idx - 2 * stride]) / (2.0 * h);
    return (v[idx + stride] - v[idx - stride]) / (2.0 * h);
  };

  kernels::parallel_for(g.nz, [&](std::ptrdiff_t kk) {
    const int k = static_cast<int>(kk);
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const std::size_t idx = g.index(i, j, k);
        vf.comp[0][idx] = d_axis(i, g.nt, 1, idx);
        if (g.dim == 3) vf.comp[1][idx] = d_axis(j, g.nt, static_cast<std::size_t>(g.nt), idx);
        const std::size_t vstride =
            g.dim == 2 ? static_cast<std::size_t>(g.nt) : static_cast<std::size_t>(g.nt) * g.nt;
        vf.comp[g.dim - 1][idx] = d_axis(k, g.nz, vstride, idx);
      }
  });
  return vf;
}

bool ball_admissible(const Grid& grid, const BallSpec& ball) {
  const double h = grid.spacing, L = grid.extent, r = ball.radius;
  if (std::fabs(ball.center[grid.dim - 1]) > 1e-12 * L) return false;
  if (r < 4.0 * h) return false;
  for (int a = 0; a < grid.dim - 1; ++a)
    if (std::fabs(ball.center[a]) + r > L - 2.0 * h) return false;
  if (r > L - 2.0 * h) return false;
  return true;
}

void require_admissible(const Grid& grid, const BallSpec& ball) {
  if (!ball_admissible(grid, ball))
    throw Error(Err::InadmissibleBall,
                "ball must be centered on the thin plane, have radius >= 4h and stay 2h inside the extent");
}

}  // namespace siglab
