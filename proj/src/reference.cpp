#include "siglab/reference.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "siglab/quadrature.hpp"

namespace siglab::reference {

namespace {

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
    const double nearest = lo[a] > 0 ? lo[a] : (hi[a] < 0 ? -hi[a] : 0.0);
    const double farthest = std::max(std::fabs(lo[a]), std::fabs(hi[a]));
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

double ball_energy(const GridFunction& f, const BallSpec& ball) {
  const Grid& g = f.grid();
  require_admissible(g, ball);
  const std::vector<double>& v = f.values();
  const double h = g.spacing;
  const int nc1 = g.nt - 1, nc2 = g.dim == 3 ? g.nt - 1 : 1, ncz = g.nz - 1;
  double s = 0.0;
  for (int k = 0; k < ncz; ++k)
    for (int j = 0; j < nc2; ++j)
      for (int i = 0; i < nc1; ++i) {
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
        const double frac = cell_fraction(g, ball, i, j, k);
        if (frac == 0.0)
          s += 0.0;
        else
          s += frac * e;
      }
  return 2.0 * std::pow(h, g.dim) * s;
}

double sphere_mass(const GridFunction& f, const BallSpec& ball, int level) {
  const Grid& g = f.grid();
  require_admissible(g, ball);
  const std::vector<SphereNode> nodes = sphere_quadrature(g.dim, level);
  const double r = ball.radius;
  double s = 0.0;
  for (const SphereNode& sn : nodes) {
    Point p = ball.center;
    for (int a = 0; a < g.dim; ++a) p[a] += r * sn.xi[a];
    const double u = f.evaluate(p);
    s += sn.w * u * u;
  }
  return 2.0 * s * std::pow(r, g.dim - 1);
}

double sphere_flux_deficit(const GridFunction& f, const VectorField& grad, const BallSpec& ball, double kappa,
                           double b, double alpha, int level) {
  const Grid& g = f.grid();
  require_admissible(g, ball);
  const std::vector<SphereNode> nodes = sphere_quadrature(g.dim, level);
  const double r = ball.radius;
  const double factor = kappa * (1.0 - b * std::pow(r, alpha)) / r;
  double s = 0.0;
  for (const SphereNode& sn : nodes) {
    Point p = ball.center;
    for (int a = 0; a < g.dim; ++a) p[a] += r * sn.xi[a];
    double unu = 0.0;
    for (int a = 0; a < g.dim; ++a) unu += grad.evaluate(a, p) * sn.xi[a];
    const double d = unu - factor * f.evaluate(p);
    s += sn.w * d * d;
  }
  return 2.0 * s * std::pow(r, g.dim - 1);
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
    if (pos == 0) return (-3.0 * v[idx] + 4.0 * v[idx + stride] - v[idx + 2 * stride]) / (2.0 * h);
    if (pos == n - 1) return (3.0 * v[idx] - 4.0 * v[idx - stride] + v[idx - 2 * stride]) / (2.0 * h);
    return (v[idx + stride] - v[idx - stride]) / (2.0 * h);
  };
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const std::size_t idx = g.index(i, j, k);
        vf.comp[0][idx] = d_axis(i, g.nt, 1, idx);
        if (g.dim == 3) vf.comp[1][idx] = d_axis(j, g.nt, static_cast<std::size_t>(g.nt), idx);
        const std::size_t vstride =
            g.dim == 2 ? static_cast<std::size_t>(g.nt) : static_cast<std::size_t>(g.nt) * g.nt;
        vf.comp[g.dim - 1][idx] = d_axis(k, g.nz, vstride, idx);
      }
  return vf;
}

}  // namespace siglab::reference
