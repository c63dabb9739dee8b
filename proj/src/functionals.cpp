#include "siglab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "siglab/kernels.hpp"
#include "siglab/quadrature.hpp"
#include "siglab/util.hpp"

namespace siglab {

namespace {

// Degeneracy floor for the boundary mass, relative to the squared field scale.
double h_floor(const GridFunction& u) {
  const double s = u.max_abs();
  return 1e-14 * s * s;
}

}  // namespace

double frequency(const GridFunction& u, const BallSpec& ball) {
  const double H = sphere_mass(u, ball);
  if (H <= h_floor(u)) throw Error(Err::DegenerateBoundaryMass, "boundary mass vanishes at this radius");
  const double D = ball_energy(u, ball);
  return ball.radius * D / H;
}

double truncated_frequency(const GridFunction& u, const BallSpec& ball, const WeissParams& params) {
  if (ball.radius > params.t0())
    throw Error(Err::InadmissibleBall, "radius exceeds t0; the corrected frequency is not monotone there");
  return nhat_from(frequency(u, ball), ball.radius, params);
}

double weiss(const GridFunction& u, const BallSpec& ball, double kappa, const WeissParams& params) {
  const double H = sphere_mass(u, ball);
  const double D = ball_energy(u, ball);
  return weiss_from(D, H, ball.radius, kappa, params.n, params.a(kappa), params.b(), params.alpha);
}

double weiss0(const GridFunction& w, double kappa) {
  const BallSpec unit{{0, 0, 0}, 1.0};
  require_admissible(w.grid(), unit);
  return ball_energy(w, unit) - kappa * sphere_mass(w, unit);
}

FrequencyProfile profile(const GridFunction& u, const Point& center, const std::vector<double>& radii,
                         const WeissParams& params) {
  if (radii.empty()) throw Error(Err::EmptyRadii, "profile requires at least one radius");
  FrequencyProfile prof;
  prof.center = center;
  prof.params = params;
  const std::vector<double> cellE = cell_energies(u);
  const double floor = h_floor(u);
  const double t0 = params.t0();
  for (double r : radii) {
    ProfileRow row;
    row.r = r;
    BallSpec ball{center, r};
    if (!ball_admissible(u.grid(), ball) || r > t0) {
      row.degenerate = true;
      prof.rows.push_back(std::move(row));
      continue;
    }
    row.H = sphere_mass(u, ball);
    row.D = ball_energy_cached(u.grid(), cellE, ball);
    if (row.H <= floor) {
      row.degenerate = true;
      prof.rows.push_back(std::move(row));
      continue;
    }
    row.N = r * row.D / row.H;
    row.Ntilde = ntilde_from(row.N, r, params);
    row.Nhat = std::min(row.Ntilde, params.kappa0);
    for (double k : params.kappas) {
      row.W.push_back(weiss_from(row.D, row.H, r, k, params.n, params.a(k), params.b(), params.alpha));
      row.m.push_back(std::sqrt(row.H / std::pow(r, params.n + 2.0 * k - 1.0)));
    }
    prof.rows.push_back(std::move(row));
  }
  return prof;
}

LimitEstimate frequency_limit(const GridFunction& u, const Point& center, const WeissParams& params, double r_max) {
  const Grid& g = u.grid();
  const double h = g.spacing;
  if (r_max <= 0.0) r_max = params.t0();
  std::vector<double> rungs;
  for (double r = r_max; r >= 4.0 * h; r *= 0.5) {
    if (ball_admissible(g, BallSpec{center, r})) rungs.push_back(r);
  }
  if (rungs.size() < 5)
    throw Error(Err::InadmissibleBall, "frequency_limit needs at least 5 admissible ladder radii below t0");

  std::vector<double> xs, ys;
  int degenerate = 0;
  std::vector<std::pair<double, double>> all;
  for (double r : rungs) {
    double N;
    try {
      N = frequency(u, BallSpec{center, r});
    } catch (const Error& e) {
      if (e.code() == Err::DegenerateBoundaryMass) {
        ++degenerate;
        continue;
      }
      throw;
    }
    const double nt = ntilde_from(N, r, params);
    all.emplace_back(std::pow(r, params.alpha), nt);
    if (nt < params.kappa0) {
      xs.push_back(std::pow(r, params.alpha));
      ys.push_back(nt);
    }
  }
  if (all.empty()) throw Error(Err::DegenerateBoundaryMass, "boundary mass vanished on every ladder radius");
  // Truncated rungs obey N_hat = kappa0 exactly and carry no information
  // about the limit; drop them when enough untruncated rungs remain.
  if (xs.size() < 3) {
    xs.clear();
    ys.clear();
    for (auto& [x, y] : all) {
      xs.push_back(x);
      ys.push_back(std::min(y, params.kappa0));
    }
  }
  LimitEstimate est;
  est.rungs_used = static_cast<int>(xs.size());
  if (xs.size() == 1) {
    est.value = std::min(ys[0], params.kappa0);
    est.quality = 1.0;
    return est;
  }
  const LineFit fit = fit_line(xs, ys);
  est.value = std::min(fit.c0, params.kappa0);
  est.quality = fit.rms;
  return est;
}

double growth_slope(const GridFunction& u, const Point& center, const std::vector<double>& radii,
                    GrowthQuantity which) {
  if (radii.size() < 4) throw Error(Err::EmptyRadii, "growth_slope needs at least 4 radii");
  std::vector<double> cellE;
  if (which == GrowthQuantity::D) cellE = cell_energies(u);
  std::vector<double> xs, ys;
  for (double r : radii) {
    const BallSpec ball{center, r};
    const double v =
        which == GrowthQuantity::H ? sphere_mass(u, ball) : ball_energy_cached(u.grid(), cellE, ball);
    if (v <= 0.0) throw Error(Err::DegenerateBoundaryMass, "nonpositive value in growth ladder");
    xs.push_back(std::log(r));
    ys.push_back(std::log(v));
  }
  return fit_line(xs, ys).c1;
}

namespace {

struct TraceQuadrature {
  std::vector<SphereNode> nodes;
  std::vector<double> g;      // trace values on the unit sphere
  std::vector<double> gt2;    // squared tangential gradient of the trace
  double H = 0.0;             // full-sphere integral of g^2
  double T = 0.0;             // full-sphere integral of |grad_S g|^2
};

// Trace of u on the sphere of `ball`, rescaled to homogeneity kappa on the
// unit sphere; tangential derivatives from the interpolated gradient.
TraceQuadrature trace_quadrature(const GridFunction& u, const BallSpec& ball, double kappa, int level) {
  TraceQuadrature tq;
  tq.nodes = sphere_quadrature(u.grid().dim, level);
  const int n = u.grid().dim;
  const double r = ball.radius;
  const VectorField grad = gradient(u);
  tq.g.resize(tq.nodes.size());
  tq.gt2.resize(tq.nodes.size());
  const double rk = std::pow(r, kappa);
  for (std::size_t q = 0; q < tq.nodes.size(); ++q) {
    const SphereNode& sn = tq.nodes[q];
    Point p = ball.center;
    for (int a = 0; a < n; ++a) p[a] += r * sn.xi[a];
    const double val = u.evaluate(p) / rk;
    double gv[3] = {0, 0, 0}, gdotxi = 0.0;
    for (int a = 0; a < n; ++a) {
      gv[a] = grad.evaluate(a, p);
      gdotxi += gv[a] * sn.xi[a];
    }
    double tang2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double t = gv[a] - gdotxi * sn.xi[a];
      tang2 += t * t;
    }
    tq.g[q] = val;
    // |grad_S g| on the unit sphere scales as r / r^kappa times the
    // tangential gradient at radius r.
    tq.gt2[q] = tang2 * r * r / (rk * rk);
    tq.H += 2.0 * sn.w * val * val;
    tq.T += 2.0 * sn.w * tq.gt2[q];
  }
  return tq;
}

}  // namespace

EpiCheck epiperimetric_check(const GridFunction& u, const BallSpec& ball, double eta, const EpiOptions& opts) {
  require_admissible(u.grid(), ball);
  const int n = u.grid().dim;
  const double kappa = 1.5;
  const double r = ball.radius;

  // Admissibility of the trace on the thin sphere.
  {
    const int samples = n == 2 ? 2 : 1024;
    for (int i = 0; i < samples; ++i) {
      Point p = ball.center;
      if (n == 2) {
        p[0] += (i == 0 ? r : -r);
      } else {
        p[0] += r * std::cos(2.0 * M_PI * i / samples);
        p[1] += r * std::sin(2.0 * M_PI * i / samples);
      }
      if (u.evaluate(p) < -1e-10 * std::max(1.0, u.max_abs()))
        throw Error(Err::InadmissibleBoundary, "trace is negative on the thin sphere");
    }
  }

  const TraceQuadrature tq = trace_quadrature(u, ball, kappa, opts.quad_level);

  EpiCheck chk;
  chk.eta = eta;
  chk.scale = std::max(tq.H, 1e-30);
  // For the homogeneous extension w(x) = |x|^kappa g(x/|x|):
  // D(w) = [T + kappa^2 H] / (n + 2 kappa - 2) and W0(w) = D(w) - kappa H.
  const double Dw = (tq.T + kappa * kappa * tq.H) / (n + 2.0 * kappa - 2.0);
  chk.w0_w = Dw - kappa * tq.H;

  // Constrained minimizer with the same trace, on a unit-ball grid.
  const Grid g1 = make_grid(n, opts.resolution, opts.extent);
  const Point c = ball.center;
  const auto w_eval = [&](const Point& x) {
    double rho2 = 0.0;
    for (int a = 0; a < n; ++a) rho2 += x[a] * x[a];
    const double rho = std::sqrt(rho2);
    if (rho == 0.0) return 0.0;
    Point src = c;
    for (int a = 0; a < n; ++a) src[a] += r * x[a] / rho;
    return std::pow(rho, kappa) * u.evaluate(src) / std::pow(r, kappa);
  };
  const GridFunction w_field = GridFunction::sample(g1, w_eval);
  const BallSpec unit{{0, 0, 0}, 1.0};
  const GridFunction v = signorini_replacement(w_field, unit, opts.solve);

  // W0(v) through the boundary flux: for the constrained minimizer the
  // thin-plane term vanishes by complementarity, so
  // D(v) = int_{dB1} g v_nu.
  const VectorField gv = gradient(v);
  const std::vector<SphereNode>& nodes = tq.nodes;
  double Dv = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const SphereNode& sn = nodes[q];
    Point p{0, 0, 0};
    for (int a = 0; a < n; ++a) p[a] = sn.xi[a];
    double vnu = 0.0;
    for (int a = 0; a < n; ++a) vnu += gv.evaluate(a, p) * sn.xi[a];
    Dv += 2.0 * sn.w * tq.g[q] * vnu;
  }
  chk.w0_v = Dv - kappa * tq.H;

  chk.lhs = chk.w0_v;
  chk.rhs = (1.0 - eta) * chk.w0_w;
  chk.pass = chk.lhs <= chk.rhs + opts.tol * chk.scale;
  return chk;
}

}  // namespace siglab
