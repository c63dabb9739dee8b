#include "siglab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "siglab/kernels.hpp"

namespace siglab {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<SphereNode> sphere_quadrature(int dim, int level) {
  std::vector<SphereNode> nodes;
  if (dim == 2) {
    const int n = 256 * level;
    nodes.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double th = kPi * (i + 0.5) / n;
      nodes.push_back({{std::cos(th), std::sin(th), 0.0}, kPi / n});
    }
    return nodes;
  }
  const int nph = 64 * level, nlm = 128 * level;
  nodes.reserve(static_cast<std::size_t>(nph) * nlm);
  const double dph = 0.5 * kPi / nph, dlm = 2.0 * kPi / nlm;
  for (int i = 0; i < nph; ++i) {
    const double ph = (i + 0.5) * dph;
    for (int j = 0; j < nlm; ++j) {
      const double lm = (j + 0.5) * dlm;
      nodes.push_back({{std::sin(ph) * std::cos(lm), std::sin(ph) * std::sin(lm), std::cos(ph)},
                       std::sin(ph) * dph * dlm});
    }
  }
  return nodes;
}

namespace {

struct CellGrid {
  int nc1, nc2, ncz;  // cells per axis (nc2 = 1 in 2D)
  std::size_t count() const {
    return static_cast<std::size_t>(nc1) * static_cast<std::size_t>(nc2) * static_cast<std::size_t>(ncz);
  }
};

CellGrid cell_grid(const Grid& g) {
  return {g.nt - 1, g.dim == 3 ? g.nt - 1 : 1, g.nz - 1};
}

// Fraction of the cell inside the ball: 1 if the farthest corner is inside,
// 0 if the nearest point of the box is outside, otherwise 4^n subsamples.
double cell_fraction(const Grid& g, const BallSpec& ball, int i, int j, int k) {
  const double h = g.spacing;
  const double r2 = ball.radius * ball.radius;
  double lo[3], hi[3];
  lo[0] = g.tangential_coord(i) - ball.center[0];
  hi[0] = lo[0] + h;
  if (g.dim == 3) {
    lo[1] = g.tangential_coord(j) - ball.center[1];
    hi[1] = lo[1] + h;
  }
  lo[g.dim - 1] = g.vertical_coord(k) - ball.center[g.dim - 1];
  hi[g.dim - 1] = lo[g.dim - 1] + h;

  double near2 = 0.0, far2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const double lo_a = lo[a], hi_a = hi[a];
    const double nearest = lo_a > 0 ? lo_a : (hi_a < 0 ? -hi_a : 0.0);
    const double farthest = std::max(std::fabs(lo_a), std::fabs(hi_a));
    near2 += nearest * nearest;
    far2 += farthest * farthest;
  }
  if (far2 <= r2) return 1.0;
  if (near2 >= r2) return 0.0;

  const int ns = 4;
  int inside = 0;
  if (g.dim == 2) {
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < ns; ++b) {
        const double x = lo[0] + (a + 0.5) * h / ns;
        const double z = lo[1] + (b + 0.5) * h / ns;
        if (x * x + z * z < r2) ++inside;
      }
    return inside / 16.0;
  }
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b)
      for (int c = 0; c < ns; ++c) {
        const double x = lo[0] + (a + 0.5) * h / ns;
        const double y = lo[1] + (b + 0.5) * h / ns;
        const double z = lo[2] + (c + 0.5) * h / ns;
        if (x * x + y * y + z * z < r2) ++inside;
      }
  return inside / 64.0;
}

}  // namespace

std::vector<double> cell_energies(const GridFunction& f) {
  const Grid& g = f.grid();
  const CellGrid cg = cell_grid(g);
  const std::vector<double>& v = f.values();
  std::vector<double> ce(cg.count());
  const double h = g.spacing;
  kernels::parallel_for(static_cast<std::ptrdiff_t>(cg.ncz), [&](std::ptrdiff_t kk) {
    const int k = static_cast<int>(kk);
    for (int j = 0; j < cg.nc2; ++j)
      for (int i = 0; i < cg.nc1; ++i) {
        double e;
        if (g.dim == 2) {
          const double f00 = v[g.index(i, 0, k)], f10 = v[g.index(i + 1, 0, k)];
          const double f01 = v[g.index(i, 0, k + 1)], f11 = v[g.index(i + 1, 0, k + 1)];
          const double gx = ((f10 - f00) + (f11 - f01)) / (2.0 * h);
          const double gz = ((f01 - f00) + (f11 - f10)) / (2.0 * h);
          e = gx * gx + gz * gz;
        } else {
          double d[3] = {0.0, 0.0, 0.0};
          for (int dz = 0; dz < 2; ++dz)
            for (int dy = 0; dy < 2; ++dy)
              d[0] += v[g.index(i + 1, j + dy, k + dz)] - v[g.index(i, j + dy, k + dz)];
          for (int dz = 0; dz < 2; ++dz)
            for (int dx = 0; dx < 2; ++dx)
              d[1] += v[g.index(i + dx, j + 1, k + dz)] - v[g.index(i + dx, j, k + dz)];
          for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx)
              d[2] += v[g.index(i + dx, j + dy, k + 1)] - v[g.index(i + dx, j + dy, k)];
          const double gx = d[0] / (4.0 * h), gy = d[1] / (4.0 * h), gz = d[2] / (4.0 * h);
          e = gx * gx + gy * gy + gz * gz;
        }
        ce[static_cast<std::size_t>(i) +
           static_cast<std::size_t>(cg.nc1) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(cg.nc2) * k)] =
            e;
      }
  });
  return ce;
}

double ball_energy_cached(const Grid& g, const std::vector<double>& cellE, const BallSpec& ball) {
  require_admissible(g, ball);
  const CellGrid cg = cell_grid(g);
  const double h = g.spacing;
  const double cellvol = std::pow(h, g.dim);
  const double s = kernels::ordered_sum(static_cast<std::ptrdiff_t>(cg.count()), [&](std::ptrdiff_t ci) {
    const int i = static_cast<int>(ci % cg.nc1);
    const int j = static_cast<int>((ci / cg.nc1) % cg.nc2);
    const int k = static_cast<int>(ci / (static_cast<std::size_t>(cg.nc1) * cg.nc2));
    const double frac = cell_fraction(g, ball, i, j, k);
    if (frac == 0.0) return 0.0;
    return frac * cellE[static_cast<std::size_t>(ci)];
  });
  return 2.0 * cellvol * s;
}

double ball_energy(const GridFunction& f, const BallSpec& ball) {
  return ball_energy_cached(f.grid(), cell_energies(f), ball);
}

double sphere_mass(const GridFunction& f, const BallSpec& ball, int level) {
  require_admissible(f.grid(), ball);
  const std::vector<SphereNode> nodes = sphere_quadrature(f.grid().dim, level);
  const double r = ball.radius;
  const int n = f.grid().dim;
  const double s = kernels::ordered_sum(static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t q) {
    const SphereNode& sn = nodes[static_cast<std::size_t>(q)];
    Point p = ball.center;
    for (int a = 0; a < n; ++a) p[a] += r * sn.xi[a];
    const double u = f.evaluate(p);
    return sn.w * u * u;
  });
  return 2.0 * s * std::pow(r, n - 1);
}

double sphere_flux_deficit(const GridFunction& f, const VectorField& grad, const BallSpec& ball, double kappa,
                           double b, double alpha, int level) {
  require_admissible(f.grid(), ball);
  const std::vector<SphereNode> nodes = sphere_quadrature(f.grid().dim, level);
  const double r = ball.radius;
  const int n = f.grid().dim;
  const double factor = kappa * (1.0 - b * std::pow(r, alpha)) / r;
  const double s = kernels::ordered_sum(static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t q) {
    const SphereNode& sn = nodes[static_cast<std::size_t>(q)];
    Point p = ball.center;
    for (int a = 0; a < n; ++a) p[a] += r * sn.xi[a];
    double unu = 0.0;
    for (int a = 0; a < n; ++a) unu += grad.evaluate(a, p) * sn.xi[a];
    const double d = unu - factor * f.evaluate(p);
    return sn.w * d * d;
  });
  return 2.0 * s * std::pow(r, n - 1);
}

double sphere_flux_deficit(const GridFunction& f, const BallSpec& ball, double kappa, double b, double alpha,
                           int level) {
  return sphere_flux_deficit(f, gradient(f), ball, kappa, b, alpha, level);
}

double total_energy(const GridFunction& f) {
  const Grid& g = f.grid();
  const std::vector<double> ce = cell_energies(f);
  const double cellvol = std::pow(g.spacing, g.dim);
  const double s =
      kernels::ordered_sum(static_cast<std::ptrdiff_t>(ce.size()), [&](std::ptrdiff_t i) { return ce[i]; });
  return 2.0 * cellvol * s;
}

}  // namespace siglab
