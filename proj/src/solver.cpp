#include "siglab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "siglab/kernels.hpp"
#include "siglab/quadrature.hpp"

namespace siglab {

BoundaryData BoundaryData::from_function(const Grid& g, const FieldFn& f, Source tag) {
  BoundaryData b;
  b.source = tag;
  b.values.assign(g.node_count(), 0.0);
  const int nj = g.dim == 3 ? g.nt : 1;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const bool tang_bdry = i == 0 || i == g.nt - 1 || (g.dim == 3 && (j == 0 || j == g.nt - 1));
        const bool top = k == g.nz - 1;
        if (tang_bdry || top) b.values[g.index(i, j, k)] = f(g.node_point(i, j, k));
      }
  return b;
}

BoundaryData BoundaryData::from_field(const GridFunction& f) {
  BoundaryData b;
  b.source = Source::FieldTrace;
  b.values = f.values();
  return b;
}

CoefficientField CoefficientField::drift_constant(const Grid& grid, const Point& b) {
  CoefficientField c;
  c.kind = Kind::Drift;
  c.grid = grid;
  for (int a = 0; a < grid.dim; ++a) c.drift[a].assign(grid.node_count(), b[a]);
  return c;
}

CoefficientField CoefficientField::drift_field(const Grid& grid, const std::array<FieldFn, 3>& b) {
  CoefficientField c;
  c.kind = Kind::Drift;
  c.grid = grid;
  const int nj = grid.dim == 3 ? grid.nt : 1;
  for (int a = 0; a < grid.dim; ++a) {
    c.drift[a].assign(grid.node_count(), 0.0);
    for (int k = 0; k < grid.nz; ++k)
      for (int j = 0; j < nj; ++j)
        for (int i = 0; i < grid.nt; ++i) c.drift[a][grid.index(i, j, k)] = b[a](grid.node_point(i, j, k));
    for (double v : c.drift[a])
      if (!std::isfinite(v)) throw Error(Err::NonFiniteSample, "drift component not finite");
  }
  return c;
}

CoefficientField CoefficientField::scalar_field(const Grid& grid, const FieldFn& a, double a_min) {
  CoefficientField c;
  c.kind = Kind::Scalar;
  c.grid = grid;
  c.a.assign(grid.node_count(), 0.0);
  const int nj = grid.dim == 3 ? grid.nt : 1;
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < grid.nt; ++i) c.a[grid.index(i, j, k)] = a(grid.node_point(i, j, k));
  for (double v : c.a)
    if (!std::isfinite(v) || v < a_min)
      throw Error(Err::ConfigError, "scalar coefficient must be finite and >= a_min > 0");
  return c;
}

namespace {

enum class Operator { Laplace, Drift, Weighted };

// Dimensionless stencil diag*u = sum_d coef[d]*u_nb, directions ordered
// (-x1,+x1[,-x2,+x2],-xn,+xn). Thin-plane rows carry the even-reflection
// factor 2 on the upward coupling and no downward neighbor.
struct System {
  Grid grid;
  std::ptrdiff_t off[6] = {0, 0, 0, 0, 0, 0};
  int ndirs = 4;
  std::vector<uint8_t> role;  // 0 fixed, 1 free unknown, 2 projected thin unknown
  std::array<std::vector<double>, 6> coef;
  std::vector<double> diag;
  std::vector<std::size_t> colors[2];
  std::vector<std::size_t> lex;
  bool peclet_warning = false;
};

System build_system(const Grid& g, Operator op, const CoefficientField* cf, const BallSpec* region, bool project) {
  System S;
  S.grid = g;
  const std::size_t n = g.node_count();
  S.ndirs = 2 * g.dim;
  const std::ptrdiff_t nt = g.nt;
  S.off[0] = -1;
  S.off[1] = +1;
  if (g.dim == 3) {
    S.off[2] = -nt;
    S.off[3] = +nt;
    S.off[4] = -nt * nt;
    S.off[5] = +nt * nt;
  } else {
    S.off[2] = -nt;
    S.off[3] = +nt;
  }
  const int vminus = 2 * (g.dim - 1), vplus = vminus + 1;

  S.role.assign(n, 0);
  for (int d = 0; d < S.ndirs; ++d) S.coef[d].assign(n, 0.0);
  S.diag.assign(n, 1.0);

  const double h = g.spacing;
  const int nj = g.dim == 3 ? g.nt : 1;
  const double r2 = region ? region->radius * region->radius : 0.0;

  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const std::size_t idx = g.index(i, j, k);
        const bool interior = i > 0 && i < g.nt - 1 && (g.dim == 2 || (j > 0 && j < g.nt - 1)) && k < g.nz - 1;
        bool unknown = interior;
        if (region && unknown) {
          const Point p = g.node_point(i, j, k);
          double d2 = 0.0;
          for (int a = 0; a < g.dim; ++a) {
            const double d = p[a] - region->center[a];
            d2 += d * d;
          }
          unknown = d2 < r2;
        }
        if (!unknown) continue;
        S.role[idx] = (k == 0 && project) ? 2 : 1;

        double diag = 0.0;
        for (int axis = 0; axis < g.dim; ++axis) {
          const int dm = 2 * axis, dp = 2 * axis + 1;
          const bool vertical = axis == g.dim - 1;
          double cm = 1.0, cp = 1.0, dax = 2.0;
          if (op == Operator::Drift) {
            const double ba = cf->drift[axis][idx];
            if (!(vertical && k == 0)) {  // normal drift drops on the symmetry plane
              const double pe = std::fabs(ba) * h / 2.0;
              if (pe <= 1.0) {
                cm = 1.0 + ba * h / 2.0;
                cp = 1.0 - ba * h / 2.0;
              } else {
                S.peclet_warning = true;
                if (ba > 0) {
                  cm = 1.0 + ba * h;
                  cp = 1.0;
                  dax = 2.0 + ba * h;
                } else {
                  cm = 1.0;
                  cp = 1.0 - ba * h;
                  dax = 2.0 - ba * h;
                }
              }
            }
          } else if (op == Operator::Weighted) {
            const double ai = cf->a[idx];
            const double am = cf->a[idx + S.off[dm] * (vertical && k == 0 ? 0 : 1)];
            const double ap = cf->a[idx + S.off[dp]];
            cm = 2.0 * ai * am / (ai + am);
            cp = 2.0 * ai * ap / (ai + ap);
            dax = 0.0;  // filled from faces below
          }
          if (vertical && k == 0) {
            // even reflection: the lower neighbor is the upper one
            S.coef[dm][idx] = 0.0;
            S.coef[dp][idx] = 2.0 * cp;
            diag += (op == Operator::Weighted) ? 2.0 * cp : dax;
          } else {
            S.coef[dm][idx] = cm;
            S.coef[dp][idx] = cp;
            diag += (op == Operator::Weighted) ? cm + cp : dax;
          }
        }
        S.diag[idx] = diag;
      }

  // color by index parity so a sweep over one color reads only the other
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const std::size_t idx = g.index(i, j, k);
        if (!S.role[idx]) continue;
        S.colors[(i + j + k) & 1].push_back(idx);
        S.lex.push_back(idx);
      }
  return S;
}

void sweep_color(const System& S, std::vector<double>& u, double omega, int color) {
  const std::vector<std::size_t>& nodes = S.colors[color];
  const int ndirs = S.ndirs;
  kernels::parallel_for(static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t q) {
    const std::size_t i = nodes[static_cast<std::size_t>(q)];
    double s = 0.0;
    for (int d = 0; d < ndirs; ++d) {
      const double c = S.coef[d][i];
      if (c != 0.0) s += c * u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + S.off[d])];
    }
    double un = (1.0 - omega) * u[i] + omega * (s / S.diag[i]);
    if (S.role[i] == 2 && un < 0.0) un = 0.0;
    u[i] = un;
  });
}

void sweep_lex(const System& S, std::vector<double>& u, double omega) {
  const int ndirs = S.ndirs;
  for (const std::size_t i : S.lex) {
    double s = 0.0;
    for (int d = 0; d < ndirs; ++d) {
      const double c = S.coef[d][i];
      if (c != 0.0) s += c * u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + S.off[d])];
    }
    double un = (1.0 - omega) * u[i] + omega * (s / S.diag[i]);
    if (S.role[i] == 2 && un < 0.0) un = 0.0;
    u[i] = un;
  }
}

struct Defect {
  double residual = 0.0;
  double complementarity = 0.0;
};

Defect measure_defect(const System& S, const std::vector<double>& u, double scale) {
  const double h = S.grid.spacing;
  const double h2 = h * h;
  const std::size_t n = S.lex.size();
  std::vector<double> resid(n), comp1(n), comp2(n);
  const int ndirs = S.ndirs;
  kernels::parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t q) {
    const std::size_t i = S.lex[static_cast<std::size_t>(q)];
    double s = 0.0;
    for (int d = 0; d < ndirs; ++d) {
      const double c = S.coef[d][i];
      if (c != 0.0) s += c * u[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + S.off[d])];
    }
    const double raw = (s - S.diag[i] * u[i]) / h2;
    double r = 0.0, c1 = 0.0, c2 = 0.0;
    if (S.role[i] == 1) {
      r = std::fabs(raw);
    } else {
      // discrete flux proxy for -d_n u at the thin plane
      const double flux = -raw * (h / 2.0);
      if (u[i] > 0.0) r = std::fabs(raw);
      const double m = std::min(u[i], flux);
      c1 = m < 0.0 ? -m : 0.0;
      const double prod = u[i] * flux;
      c2 = prod > 0.0 ? prod / scale : 0.0;
    }
    resid[static_cast<std::size_t>(q)] = r;
    comp1[static_cast<std::size_t>(q)] = c1;
    comp2[static_cast<std::size_t>(q)] = c2;
  });
  Defect d;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    d.residual = std::max(d.residual, resid[q]);
    m1 = std::max(m1, comp1[q]);
    m2 = std::max(m2, comp2[q]);
  }
  d.complementarity = m1 + m2;
  return d;
}

std::pair<GridFunction, SolveDiagnostics> run_psor(const System& S, std::vector<double> work,
                                                   const SolveOptions& opts) {
  if (!(opts.omega > 0.0 && opts.omega < 2.0)) throw Error(Err::ConfigError, "omega must lie in (0,2)");
  double scale = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i)
    if (!S.role[i]) scale = std::max(scale, std::fabs(work[i]));
  if (scale == 0.0) scale = 1.0;

  const int max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : 200 * S.grid.resolution;
  const int check = std::max(1, opts.check_interval);

  SolveDiagnostics diag;
  diag.scale = scale;
  diag.peclet_warning = S.peclet_warning;

  int sweep = 0;
  while (sweep < max_sweeps) {
    ++sweep;
    if (opts.ordering == SolveOptions::Ordering::RedBlack) {
      sweep_color(S, work, opts.omega, 0);
      sweep_color(S, work, opts.omega, 1);
    } else {
      sweep_lex(S, work, opts.omega);
    }
    if (sweep % check == 0 || sweep == max_sweeps) {
      const Defect d = measure_defect(S, work, scale);
      diag.final_residual = d.residual;
      diag.final_complementarity = d.complementarity;
      diag.sweeps_used = sweep;
      if (d.residual <= opts.tol_residual * scale && d.complementarity <= opts.tol_complementarity * scale) {
        diag.converged = true;
        break;
      }
    }
  }
  return {GridFunction(S.grid, std::move(work)), diag};
}

void validate_boundary(const Grid& g, const BoundaryData& b) {
  if (b.values.size() != g.node_count()) throw Error(Err::InadmissibleBoundary, "boundary array size mismatch");
  const int nj = g.dim == 3 ? g.nt : 1;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < g.nt; ++i) {
        const bool tang_bdry = i == 0 || i == g.nt - 1 || (g.dim == 3 && (j == 0 || j == g.nt - 1));
        const bool top = k == g.nz - 1;
        if (!tang_bdry && !top) continue;
        const double v = b.values[g.index(i, j, k)];
        if (!std::isfinite(v)) throw Error(Err::InadmissibleBoundary, "boundary data not finite");
        if (k == 0 && v < 0.0)
          throw Error(Err::InadmissibleBoundary, "boundary data must be >= 0 where the thin plane meets the boundary");
      }
}

std::vector<double> init_work(const System& S, const BoundaryData& b) {
  std::vector<double> work(b.values);
  for (std::size_t i = 0; i < work.size(); ++i)
    if (S.role[i]) work[i] = 0.0;
  return work;
}

std::pair<GridFunction, SolveDiagnostics> solve_cube(const Grid& g, const BoundaryData& b, Operator op,
                                                     const CoefficientField* cf, bool project,
                                                     const SolveOptions& opts) {
  validate_boundary(g, b);
  const System S = build_system(g, op, cf, nullptr, project);
  return run_psor(S, init_work(S, b), opts);
}

}  // namespace

std::pair<GridFunction, SolveDiagnostics> solve_signorini(const Grid& g, const BoundaryData& b,
                                                          const SolveOptions& opts) {
  return solve_cube(g, b, Operator::Laplace, nullptr, true, opts);
}

std::pair<GridFunction, SolveDiagnostics> solve_harmonic(const Grid& g, const BoundaryData& b,
                                                         const SolveOptions& opts) {
  return solve_cube(g, b, Operator::Laplace, nullptr, false, opts);
}

std::pair<GridFunction, SolveDiagnostics> solve_drift(const Grid& g, const BoundaryData& b,
                                                      const CoefficientField& drift, const SolveOptions& opts) {
  if (drift.kind != CoefficientField::Kind::Drift || !drift.grid.same_layout(g))
    throw Error(Err::ConfigError, "drift coefficient field does not match the grid");
  return solve_cube(g, b, Operator::Drift, &drift, true, opts);
}

std::pair<GridFunction, SolveDiagnostics> solve_weighted(const Grid& g, const BoundaryData& b,
                                                         const CoefficientField& coeff, const SolveOptions& opts) {
  if (coeff.kind != CoefficientField::Kind::Scalar || !coeff.grid.same_layout(g))
    throw Error(Err::ConfigError, "scalar coefficient field does not match the grid");
  return solve_cube(g, b, Operator::Weighted, &coeff, true, opts);
}

namespace {

GridFunction ball_solve(const GridFunction& u, const BallSpec& ball, bool project, const SolveOptions& opts) {
  const Grid& g = u.grid();
  require_admissible(g, ball);
  const System S = build_system(g, Operator::Laplace, nullptr, &ball, project);
  auto [v, diag] = run_psor(S, u.values(), opts);
  if (!diag.converged)
    throw Error(Err::NonConvergence, "ball-restricted solve exhausted its sweep budget (residual " +
                                         std::to_string(diag.final_residual) + ", complementarity " +
                                         std::to_string(diag.final_complementarity) + ")");
  return std::move(v);
}

}  // namespace

GridFunction signorini_replacement(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts) {
  return ball_solve(u, ball, true, opts);
}

GridFunction harmonic_replacement(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts) {
  return ball_solve(u, ball, false, opts);
}

double almost_minimality_ratio(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts) {
  const double eu = ball_energy(u, ball);
  const GridFunction v = signorini_replacement(u, ball, opts);
  const double ev = ball_energy(v, ball);
  if (ev <= 0.0) return 0.0;
  return eu / ev - 1.0;
}

ComplementarityReport verify_complementarity(const GridFunction& u, const ThinRegion& region) {
  const Grid& g = u.grid();
  const VectorField grad = gradient(u);
  const std::vector<double>& dn = grad.comp[g.dim - 1];
  ComplementarityReport rep;
  rep.scale = u.max_abs();
  if (rep.scale == 0.0) rep.scale = 1.0;
  const int nj = g.dim == 3 ? g.nt : 1;
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < g.nt; ++i) {
      if (i == 0 || i == g.nt - 1 || (g.dim == 3 && (j == 0 || j == g.nt - 1))) continue;
      const Point p = g.node_point(i, j, 0);
      if (region.halfwidth > 0.0) {
        bool inside = true;
        for (int a = 0; a < g.dim - 1; ++a)
          if (std::fabs(p[a] - region.center[a]) > region.halfwidth) inside = false;
        if (!inside) continue;
      }
      const std::size_t idx = g.index(i, j, 0);
      const double uv = u.value(idx), dv = dn[idx];
      rep.product_max = std::max(rep.product_max, std::fabs(uv * dv));
      rep.negativity_max = std::max(rep.negativity_max, -uv);
      rep.sign_max = std::max(rep.sign_max, dv);
    }
  rep.negativity_max = std::max(rep.negativity_max, 0.0);
  rep.sign_max = std::max(rep.sign_max, 0.0);
  rep.headline = std::max({rep.product_max, rep.negativity_max, rep.sign_max}) / rep.scale;
  return rep;
}

}  // namespace siglab
