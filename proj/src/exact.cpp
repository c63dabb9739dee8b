#include "siglab/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace siglab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double poly_eval(const Poly& p, const Point& x) {
  double s = 0.0;
  for (const Monomial& m : p) {
    double t = m.c;
    for (int a = 0; a < 3; ++a)
      for (int e = 0; e < m.e[a]; ++e) t *= x[a];
    s += t;
  }
  return s;
}

Poly poly_derivative(const Poly& p, int axis) {
  Poly d;
  for (const Monomial& m : p) {
    if (m.e[axis] == 0) continue;
    Monomial dm = m;
    dm.c = m.c * m.e[axis];
    dm.e[axis] -= 1;
    d.push_back(dm);
  }
  return d;
}

const std::vector<Poly>& qpoly_basis(int dim, int kappa) {
  auto mono = [](int e0, int e1, int e2, double c) { return Monomial{{e0, e1, e2}, c}; };
  // 2D: x2 is the normal axis. 3D: x3 is the normal axis.
  static const std::vector<Poly> b2d2 = {{mono(2, 0, 0, 1), mono(0, 2, 0, -1)}};  // x1^2 - x2^2
  static const std::vector<Poly> b2d4 = {
      {mono(4, 0, 0, 1), mono(2, 2, 0, -6), mono(0, 4, 0, 1)}};  // Re(x1+ix2)^4
  static const std::vector<Poly> b3d2 = {
      {mono(2, 0, 0, 1), mono(0, 0, 2, -1)},  // x1^2 - x3^2
      {mono(0, 2, 0, 1), mono(0, 0, 2, -1)},  // x2^2 - x3^2
      {mono(1, 1, 0, 1)}};                    // x1 x2
  // Even-in-x3 harmonics of degree 4 (solid harmonics m = 0, +-2, +-4),
  // expanded in monomials.
  static const std::vector<Poly> b3d4 = {
      // 35 x3^4 - 30 x3^2 |x|^2 + 3 |x|^4
      {mono(0, 0, 4, 8), mono(2, 0, 2, -24), mono(0, 2, 2, -24), mono(4, 0, 0, 3), mono(0, 4, 0, 3),
       mono(2, 2, 0, 6)},
      // (x1^2 - x2^2)(6 x3^2 - x1^2 - x2^2)
      {mono(2, 0, 2, 6), mono(0, 2, 2, -6), mono(4, 0, 0, -1), mono(0, 4, 0, 1)},
      // x1 x2 (6 x3^2 - x1^2 - x2^2)
      {mono(1, 1, 2, 6), mono(3, 1, 0, -1), mono(1, 3, 0, -1)},
      // Re(x1+ix2)^4
      {mono(4, 0, 0, 1), mono(2, 2, 0, -6), mono(0, 4, 0, 1)},
      // Im(x1+ix2)^4 / 4
      {mono(3, 1, 0, 1), mono(1, 3, 0, -1)}};
  if (dim == 2 && kappa == 2) return b2d2;
  if (dim == 2 && kappa == 4) return b2d4;
  if (dim == 3 && kappa == 2) return b3d2;
  if (dim == 3 && kappa == 4) return b3d4;
  throw Error(Err::ConfigError, "Q_kappa basis available only for kappa in {2,4}, dim in {2,3}");
}

double ExactSolution::operator()(const Point& x) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::FullContact:
      return -a_ * std::fabs(x[dim_ - 1]);
    case Kind::QPoly: {
      Point xe = x;
      xe[dim_ - 1] = std::fabs(x[dim_ - 1]);
      return poly_eval(poly_, xe);
    }
    case Kind::Regular32: {
      double s = 0.0;
      for (int a = 0; a < dim_ - 1; ++a) s += x[a] * nu_[a];
      const double t = std::fabs(x[dim_ - 1]);
      const double rho = std::hypot(s, t);
      if (rho == 0.0) return 0.0;
      const double theta = std::atan2(t, s);
      return a_ * std::pow(rho, 1.5) * std::cos(1.5 * theta);
    }
  }
  return 0.0;
}

Point ExactSolution::grad(const Point& x) const {
  Point g{0.0, 0.0, 0.0};
  switch (kind_) {
    case Kind::Constant:
      break;
    case Kind::FullContact:
      g[dim_ - 1] = -a_;
      break;
    case Kind::QPoly: {
      Point xe = x;
      xe[dim_ - 1] = std::fabs(x[dim_ - 1]);
      for (int a = 0; a < dim_; ++a) g[a] = poly_eval(poly_grad_[a], xe);
      break;
    }
    case Kind::Regular32: {
      double s = 0.0;
      for (int a = 0; a < dim_ - 1; ++a) s += x[a] * nu_[a];
      const double t = std::fabs(x[dim_ - 1]);
      const double rho = std::hypot(s, t);
      if (rho == 0.0) break;
      const double theta = std::atan2(t, s);
      // d/ds Re f(s+it) = Re f', d/dt Re f(s+it) = -Im f' with f' = (3/2) z^{1/2}.
      const double ds = a_ * 1.5 * std::sqrt(rho) * std::cos(0.5 * theta);
      const double dt = -a_ * 1.5 * std::sqrt(rho) * std::sin(0.5 * theta);
      for (int a = 0; a < dim_ - 1; ++a) g[a] = ds * nu_[a];
      g[dim_ - 1] = dt;
      break;
    }
  }
  return g;
}

ExactSolution regular32(int dim, double a, std::array<double, 3> nu) {
  if (!(a > 0)) throw Error(Err::ConfigError, "regular32 requires a > 0");
  double norm = 0.0;
  for (int i = 0; i < dim - 1; ++i) norm += nu[i] * nu[i];
  if (std::fabs(nu[dim - 1]) > 1e-14 || std::fabs(norm - 1.0) > 1e-10)
    throw Error(Err::ConfigError, "nu must be a unit tangential vector");
  ExactSolution s;
  s.kind_ = ExactSolution::Kind::Regular32;
  s.dim_ = dim;
  s.kappa_ = 1.5;
  s.a_ = a;
  s.nu_ = nu;
  return s;
}

ExactSolution qpoly(int dim, int kappa, std::vector<double> coeffs) {
  const std::vector<Poly>& basis = qpoly_basis(dim, kappa);
  if (coeffs.size() != basis.size()) throw Error(Err::ConfigError, "coefficient count does not match basis size");
  Poly p;
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (const Monomial& m : basis[b]) {
      Monomial mm = m;
      mm.c *= coeffs[b];
      if (mm.c != 0.0) p.push_back(mm);
    }
  // Membership in Q_kappa requires q >= 0 on the thin unit sphere.
  const int samples = dim == 2 ? 2 : 4096;
  double qmin = 0.0;
  for (int i = 0; i < samples; ++i) {
    Point x{0.0, 0.0, 0.0};
    if (dim == 2) {
      x[0] = i == 0 ? 1.0 : -1.0;
    } else {
      const double phi = 2.0 * kPi * i / samples;
      x[0] = std::cos(phi);
      x[1] = std::sin(phi);
    }
    qmin = std::min(qmin, poly_eval(p, x));
  }
  if (qmin < -1e-12) throw Error(Err::NotInQ, "polynomial is negative on the thin unit sphere");
  ExactSolution s;
  s.kind_ = ExactSolution::Kind::QPoly;
  s.dim_ = dim;
  s.kappa_ = kappa;
  s.coeffs_ = std::move(coeffs);
  s.poly_ = std::move(p);
  for (int a = 0; a < dim; ++a) s.poly_grad_[a] = poly_derivative(s.poly_, a);
  return s;
}

ExactSolution constant(int dim, double c) {
  if (c < 0) throw Error(Err::ConfigError, "constant library member requires c >= 0");
  ExactSolution s;
  s.dim_ = dim;
  s.kind_ = ExactSolution::Kind::Constant;
  s.kappa_ = 0.0;
  s.a_ = c;
  return s;
}

ExactSolution full_contact(int dim, double c) {
  if (!(c > 0)) throw Error(Err::ConfigError, "full_contact requires c > 0");
  ExactSolution s;
  s.dim_ = dim;
  s.kind_ = ExactSolution::Kind::FullContact;
  s.kappa_ = 1.0;
  s.a_ = c;
  return s;
}

ExactSolution parse_solution(int dim, const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
      if (!item.empty()) out.push_back(item);
    return out;
  };
  if (head == "regular32") {
    double a = 1.0, angle = 0.0;
    for (const std::string& kv : split(args, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(Err::ConfigError, "malformed parameter '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      std::string val = kv.substr(eq + 1);
      if (key == "a") {
        a = std::stod(val);
      } else if (key == "nu") {
        double scale = 1.0;
        if (val.size() > 3 && val.substr(val.size() - 3) == "deg") {
          scale = kPi / 180.0;
          val = val.substr(0, val.size() - 3);
        } else if (val.size() > 3 && val.substr(val.size() - 3) == "rad") {
          val = val.substr(0, val.size() - 3);
        }
        angle = std::stod(val) * scale;
      } else {
        throw Error(Err::ConfigError, "unknown regular32 parameter '" + key + "'");
      }
    }
    std::array<double, 3> nu{std::cos(angle), 0.0, 0.0};
    if (dim == 3) nu[1] = std::sin(angle);
    else if (std::fabs(std::sin(angle)) > 1e-12)
      throw Error(Err::ConfigError, "2D profiles admit only nu = +-e1 (angle 0 or 180 deg)");
    return regular32(dim, a, nu);
  }
  if (head == "qpoly2d" || head == "qpoly3d" || head == "qpoly") {
    int d = head == "qpoly2d" ? 2 : head == "qpoly3d" ? 3 : dim;
    if (d != dim) throw Error(Err::ConfigError, "solution dimension does not match grid dimension");
    std::vector<double> coeffs;
    for (const std::string& c : split(args, ',')) coeffs.push_back(std::stod(c));
    return qpoly(d, 2, coeffs);
  }
  if (head == "constant") return constant(dim, args.empty() ? 1.0 : std::stod(args));
  if (head == "fullcontact") return full_contact(dim, args.empty() ? 1.0 : std::stod(args));
  throw Error(Err::ConfigError, "unknown exact solution '" + head + "'");
}

double oracle_sphere_mass(const ExactSolution& sol, double r, int order) {
  if (sol.dim() == 2) {
    const int n = std::max(order, 2048);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double th = kPi * (i + 0.5) / n;  // upper semicircle
      const Point x{r * std::cos(th), r * std::sin(th), 0.0};
      const double u = sol(x);
      s += u * u;
    }
    return 2.0 * s * (kPi / n) * r;
  }
  const int nph = std::max(order / 8, 512), nlm = 2 * nph;
  double s = 0.0;
  for (int i = 0; i < nph; ++i) {
    const double ph = 0.5 * kPi * (i + 0.5) / nph;  // colatitude from the pole
    double band = 0.0;
    for (int j = 0; j < nlm; ++j) {
      const double lm = 2.0 * kPi * (j + 0.5) / nlm;
      const Point x{r * std::sin(ph) * std::cos(lm), r * std::sin(ph) * std::sin(lm), r * std::cos(ph)};
      const double u = sol(x);
      band += u * u;
    }
    s += band * std::sin(ph);
  }
  return 2.0 * s * (0.5 * kPi / nph) * (2.0 * kPi / nlm) * r * r;
}

double oracle_ball_energy(const ExactSolution& sol, double r, int order) {
  const double kappa = sol.homogeneity();
  if (kappa == 0.0) return 0.0;
  // kappa-homogeneous solutions have D(r) = kappa * r^{n+2kappa-2} * H(1):
  // the boundary term of the Dirichlet energy carries the whole integral, and
  // the thin-plane term drops by complementarity.
  const int n = sol.dim();
  return kappa * std::pow(r, n + 2.0 * kappa - 2.0) * oracle_sphere_mass(sol, 1.0, order);
}

double oracle_ball_energy_shell(const ExactSolution& sol, double r, int order) {
  std::vector<double> gs, gw;
  gauss_legendre_01(48, gs, gw);
  const int n = sol.dim();
  double total = 0.0;
  for (std::size_t q = 0; q < gs.size(); ++q) {
    const double s = r * gs[q];
    double shell = 0.0;
    if (n == 2) {
      const int na = std::max(order, 2048);
      for (int i = 0; i < na; ++i) {
        const double th = kPi * (i + 0.5) / na;
        const Point x{s * std::cos(th), s * std::sin(th), 0.0};
        const Point g = sol.grad(x);
        shell += g[0] * g[0] + g[1] * g[1];
      }
      shell *= 2.0 * (kPi / na) * s;
    } else {
      const int nph = std::max(order / 8, 256), nlm = 2 * nph;
      for (int i = 0; i < nph; ++i) {
        const double ph = 0.5 * kPi * (i + 0.5) / nph;
        double band = 0.0;
        for (int j = 0; j < nlm; ++j) {
          const double lm = 2.0 * kPi * (j + 0.5) / nlm;
          const Point x{s * std::sin(ph) * std::cos(lm), s * std::sin(ph) * std::sin(lm), s * std::cos(ph)};
          const Point g = sol.grad(x);
          band += g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        }
        shell += band * std::sin(ph);
      }
      shell *= 2.0 * (0.5 * kPi / nph) * (2.0 * kPi / nlm) * s * s;
    }
    total += gw[q] * shell;
  }
  return total * r;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate for roots on [-1,1].
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace siglab
