#include "siglab/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siglab/exact.hpp"
#include "siglab/quadrature.hpp"

namespace siglab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double phi(double kappa, double r, double b, double alpha) {
  if (!(r > 0)) throw Error(Err::ConfigError, "phi requires r > 0");
  return std::exp(-(kappa * b / alpha) * std::pow(r, alpha)) * std::pow(r, kappa);
}

double phi(double kappa, double r, const WeissParams& params) { return phi(kappa, r, params.b(), params.alpha); }

namespace {

int derive_resolution(const Grid& src, double radius, double extent) {
  // Match the source sampling rate: h_target = h_src / radius, i.e.
  // resolution - 1 = 2 * extent * radius / h_src. Clamped and made odd.
  double want = 2.0 * extent * radius / src.spacing;
  int res = static_cast<int>(std::lround(want)) + 1;
  if (res % 2 == 0) ++res;
  return std::clamp(res, 33, 513);
}

}  // namespace

GridFunction rescale_field(const GridFunction& u, const RescaleSpec& spec) {
  const Grid& src = u.grid();
  const int n = src.dim;
  const double r = spec.radius;
  if (!(r > 0)) throw Error(Err::ConfigError, "rescale radius must be positive");
  for (int a = 0; a < n - 1; ++a)
    if (std::fabs(spec.center[a]) + r * spec.extent > src.extent)
      throw Error(Err::DomainExceeded, "rescaled window exceeds the source domain");
  if (r * spec.extent > src.extent) throw Error(Err::DomainExceeded, "rescaled window exceeds the source domain");

  double divisor = 1.0;
  switch (spec.kind) {
    case RescaleKind::Almgren: {
      const double H = sphere_mass(u, BallSpec{spec.center, r});
      const double s = u.max_abs();
      if (H <= 1e-14 * s * s) throw Error(Err::DegenerateBoundaryMass, "Almgren rescaling of a degenerate trace");
      divisor = std::sqrt(H / std::pow(r, n - 1));
      break;
    }
    case RescaleKind::Homogeneous:
      divisor = std::pow(r, spec.kappa);
      break;
    case RescaleKind::AlmostHomogeneous:
      divisor = phi(spec.kappa, r, spec.params);
      break;
  }

  const int res = spec.resolution > 0 ? spec.resolution : derive_resolution(src, r, spec.extent);
  const Grid target = make_grid(n, res, spec.extent);
  const Point c = spec.center;
  return GridFunction::sample(target, [&](const Point& x) {
    Point p = c;
    for (int a = 0; a < n; ++a) p[a] += r * x[a];
    return u.evaluate(p) / divisor;
  });
}

GridFunction homogeneous_replacement(const GridFunction& u, double t, double kappa) {
  const Grid& g = u.grid();
  require_admissible(g, BallSpec{{0, 0, 0}, t});
  const int n = g.dim;
  return GridFunction::sample(g, [&](const Point& x) {
    double rho2 = 0.0;
    for (int a = 0; a < n; ++a) rho2 += x[a] * x[a];
    const double rho = std::sqrt(rho2);
    if (rho == 0.0) return 0.0;
    Point p{0, 0, 0};
    for (int a = 0; a < n; ++a) p[a] = t * x[a] / rho;
    return std::pow(rho / t, kappa) * u.evaluate(p);
  });
}

BlowupResult blowup(const GridFunction& u, const Point& center, double kappa, const std::vector<double>& ladder,
                    const WeissParams& params, const BlowupOptions& opts) {
  if (ladder.size() < 3) throw Error(Err::ConfigError, "blowup ladder needs at least 3 rungs");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1])) throw Error(Err::ConfigError, "blowup ladder must be strictly decreasing");

  BlowupResult res;
  res.ladder = ladder;
  const int n = u.grid().dim;
  for (double r : ladder) {
    RescaleSpec spec;
    spec.kind = RescaleKind::AlmostHomogeneous;
    spec.center = center;
    spec.radius = r;
    spec.kappa = kappa;
    spec.params = params;
    spec.resolution = opts.resolution;
    spec.extent = opts.extent;
    res.fields.push_back(rescale_field(u, spec));
    const double H = sphere_mass(u, BallSpec{center, r});
    res.mu.push_back(std::sqrt(H / std::pow(r, n - 1)) / phi(kappa, r, params));
  }
  const std::vector<SphereNode> nodes = sphere_quadrature(n, opts.quad_level);
  for (std::size_t i = 0; i + 1 < res.fields.size(); ++i) {
    double l1 = 0.0;
    for (const SphereNode& sn : nodes) {
      Point p{0, 0, 0};
      for (int a = 0; a < n; ++a) p[a] = sn.xi[a];
      l1 += 2.0 * sn.w * std::fabs(res.fields[i].evaluate(p) - res.fields[i + 1].evaluate(p));
    }
    res.rotation.push_back(l1);
  }
  double mass = 0.0;
  for (const SphereNode& sn : nodes) {
    Point p{0, 0, 0};
    for (int a = 0; a < n; ++a) p[a] = sn.xi[a];
    const double v = res.fields.back().evaluate(p);
    mass += 2.0 * sn.w * v * v;
  }
  res.threshold = opts.threshold_factor * std::sqrt(mass);
  res.converged = !res.rotation.empty() && res.rotation.back() <= res.threshold;
  return res;
}

namespace {

double profile_shape(const Point& xi, const std::array<double, 3>& nu, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim - 1; ++a) s += xi[a] * nu[a];
  const double t = std::fabs(xi[dim - 1]);
  const double rho = std::hypot(s, t);
  if (rho == 0.0) return 0.0;
  return std::pow(rho, 1.5) * std::cos(1.5 * std::atan2(t, s));
}

struct SphereSamples {
  std::vector<SphereNode> nodes;
  std::vector<double> f;
  double mass = 0.0;  // full-sphere integral of f^2
};

SphereSamples sample_sphere(const FieldFn& w, int dim, int level) {
  SphereSamples ss;
  ss.nodes = sphere_quadrature(dim, level);
  ss.f.resize(ss.nodes.size());
  for (std::size_t q = 0; q < ss.nodes.size(); ++q) {
    ss.f[q] = w(ss.nodes[q].xi);
    ss.mass += 2.0 * ss.nodes[q].w * ss.f[q] * ss.f[q];
  }
  if (ss.mass <= 1e-24) throw Error(Err::DegenerateField, "sphere mass below the fitting floor");
  return ss;
}

// Best amplitude and residual for a fixed direction.
std::pair<double, double> fit_amplitude(const SphereSamples& ss, const std::array<double, 3>& nu, int dim) {
  double ff = 0.0, fp = 0.0, pp = 0.0;
  for (std::size_t q = 0; q < ss.nodes.size(); ++q) {
    const double p = profile_shape(ss.nodes[q].xi, nu, dim);
    const double w = 2.0 * ss.nodes[q].w;
    ff += w * ss.f[q] * ss.f[q];
    fp += w * ss.f[q] * p;
    pp += w * p * p;
  }
  if (pp <= 0.0) return {0.0, 1.0};
  const double a = fp / pp;
  if (a <= 0.0) return {a, 1.0};
  const double res2 = std::max(0.0, ff - 2.0 * a * fp + a * a * pp) / ff;
  return {a, std::sqrt(res2)};
}

}  // namespace

BlowupFit fit_regular_profile(const FieldFn& w, int dim, int quad_level) {
  const SphereSamples ss = sample_sphere(w, dim, quad_level);
  BlowupFit fit;
  fit.kind = BlowupFit::Kind::Regular;
  fit.kappa = 1.5;
  fit.residual = 2.0;

  auto consider = [&](const std::array<double, 3>& nu) {
    const auto [a, res] = fit_amplitude(ss, nu, dim);
    if (res < fit.residual) {
      fit.residual = res;
      fit.a = a;
      fit.nu = nu;
    }
  };

  if (dim == 2) {
    consider({1, 0, 0});
    consider({-1, 0, 0});
    return fit;
  }
  // Coarse scan over the tangential angle, then golden-section refinement.
  const int coarse = 64;
  double best_psi = 0.0, best_res = 2.0;
  for (int i = 0; i < coarse; ++i) {
    const double psi = 2.0 * kPi * i / coarse;
    const auto [a, res] = fit_amplitude(ss, {std::cos(psi), std::sin(psi), 0}, dim);
    (void)a;
    if (res < best_res) {
      best_res = res;
      best_psi = psi;
    }
  }
  double lo = best_psi - 2.0 * kPi / coarse, hi = best_psi + 2.0 * kPi / coarse;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  auto res_at = [&](double psi) { return fit_amplitude(ss, {std::cos(psi), std::sin(psi), 0}, dim).second; };
  double f1 = res_at(x1), f2 = res_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = res_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = res_at(x2);
    }
  }
  const double psi = 0.5 * (lo + hi);
  consider({std::cos(psi), std::sin(psi), 0});
  return fit;
}

BlowupFit fit_regular_profile(const GridFunction& w, int quad_level) {
  return fit_regular_profile(w.field(), w.grid().dim, quad_level);
}

BlowupFit fit_singular_polynomial(const FieldFn& w, int dim, int kappa, int quad_level) {
  if (kappa % 2 != 0) throw Error(Err::ConfigError, "singular fits require even integer homogeneity");
  const SphereSamples ss = sample_sphere(w, dim, quad_level);
  const std::vector<Poly>& basis = qpoly_basis(dim, kappa);
  const int k = static_cast<int>(basis.size());

  std::vector<std::vector<double>> B(k, std::vector<double>(ss.nodes.size()));
  for (int b = 0; b < k; ++b)
    for (std::size_t q = 0; q < ss.nodes.size(); ++q) B[b][q] = poly_eval(basis[b], ss.nodes[q].xi);

  std::vector<double> G(k * k, 0.0), rhs(k, 0.0);
  for (std::size_t q = 0; q < ss.nodes.size(); ++q) {
    const double w2 = 2.0 * ss.nodes[q].w;
    for (int a = 0; a < k; ++a) {
      rhs[a] += w2 * B[a][q] * ss.f[q];
      for (int b = a; b < k; ++b) G[a * k + b] += w2 * B[a][q] * B[b][q];
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < a; ++b) G[a * k + b] = G[b * k + a];

  // Cholesky solve of the small normal system.
  std::vector<double> L(k * k, 0.0);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b <= a; ++b) {
      double s = G[a * k + b];
      for (int c = 0; c < b; ++c) s -= L[a * k + c] * L[b * k + c];
      if (a == b) {
        if (s <= 0.0) throw Error(Err::DegenerateField, "singular normal system not positive definite");
        L[a * k + a] = std::sqrt(s);
      } else {
        L[a * k + b] = s / L[b * k + b];
      }
    }
  }
  std::vector<double> y(k), c(k);
  for (int a = 0; a < k; ++a) {
    double s = rhs[a];
    for (int b = 0; b < a; ++b) s -= L[a * k + b] * y[b];
    y[a] = s / L[a * k + a];
  }
  for (int a = k - 1; a >= 0; --a) {
    double s = y[a];
    for (int b = a + 1; b < k; ++b) s -= L[b * k + a] * c[b];
    c[a] = s / L[a * k + a];
  }

  BlowupFit fit;
  fit.kind = BlowupFit::Kind::Singular;
  fit.kappa = kappa;
  fit.coeffs = c;

  double ss2 = 0.0, qq = 0.0;
  for (std::size_t q = 0; q < ss.nodes.size(); ++q) {
    double qv = 0.0;
    for (int a = 0; a < k; ++a) qv += c[a] * B[a][q];
    const double w2 = 2.0 * ss.nodes[q].w;
    ss2 += w2 * (ss.f[q] - qv) * (ss.f[q] - qv);
    qq += w2 * qv * qv;
  }
  fit.residual = std::sqrt(ss2 / ss.mass);
  fit.lambda = std::sqrt(qq);

  Poly qpol;
  for (int a = 0; a < k; ++a)
    for (const Monomial& m : basis[a]) {
      Monomial mm = m;
      mm.c *= c[a];
      if (mm.c != 0.0) qpol.push_back(mm);
    }
  const int samples = dim == 2 ? 2 : 2048;
  double qmin = 0.0;
  for (int i = 0; i < samples; ++i) {
    Point x{0, 0, 0};
    if (dim == 2) {
      x[0] = i == 0 ? 1.0 : -1.0;
    } else {
      x[0] = std::cos(2.0 * kPi * i / samples);
      x[1] = std::sin(2.0 * kPi * i / samples);
    }
    qmin = std::min(qmin, poly_eval(qpol, x));
  }
  fit.not_in_q = qmin < -1e-8 * fit.lambda;
  return fit;
}

BlowupFit fit_singular_polynomial(const GridFunction& w, int kappa, int quad_level) {
  return fit_singular_polynomial(w.field(), w.grid().dim, kappa, quad_level);
}

}  // namespace siglab
