#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "siglab/grid.hpp"
#include "siglab/solver.hpp"

namespace siglab {

// Constants of the corrected monotonicity formulas:
// a_kappa = (n + 2 kappa - 2)/alpha, b = (n + 2 kappa0)/alpha, and the
// admissible radius cap keeps 1 - b t^alpha >= 1/2.
struct WeissParams {
  int n = 2;
  double alpha = 1.5;
  double kappa0 = 2.0;
  double t0_config = 0.25;
  std::vector<double> kappas = {1.5, 2.0};

  double b() const { return (n + 2.0 * kappa0) / alpha; }
  double a(double kappa) const { return (n + 2.0 * kappa - 2.0) / alpha; }
  double t0() const { return std::min(t0_config, std::pow(2.0 * b(), -1.0 / alpha)); }
};

inline double ntilde_from(double N, double r, const WeissParams& p) {
  return N / (1.0 - p.b() * std::pow(r, p.alpha));
}
inline double nhat_from(double N, double r, const WeissParams& p) {
  return std::min(ntilde_from(N, r, p), p.kappa0);
}
// Weiss value from precomputed D and H (pure algebra, shared by weiss() and
// the identity tests):
// e^{a r^alpha} / r^{n+2kappa-2} * [D - kappa (1 - b r^alpha)/r * H].
inline double weiss_from(double D, double H, double r, double kappa, int n, double a, double b, double alpha) {
  const double ra = std::pow(r, alpha);
  return std::exp(a * ra) / std::pow(r, n + 2.0 * kappa - 2.0) * (D - kappa * (1.0 - b * ra) / r * H);
}

double frequency(const GridFunction& u, const BallSpec& ball);
double truncated_frequency(const GridFunction& u, const BallSpec& ball, const WeissParams& params);
double weiss(const GridFunction& u, const BallSpec& ball, double kappa, const WeissParams& params);
// W0_kappa(w) = int_{B1} |grad w|^2 - kappa int_{dB1} w^2 on w's grid.
double weiss0(const GridFunction& w, double kappa);

struct ProfileRow {
  double r = 0, H = 0, D = 0, N = 0, Ntilde = 0, Nhat = 0;
  std::vector<double> W;  // one entry per params.kappas
  std::vector<double> m;  // (H / r^{n+2k-1})^{1/2} per kappa
  bool degenerate = false;
};

struct FrequencyProfile {
  Point center{0, 0, 0};
  WeissParams params;
  std::vector<ProfileRow> rows;
};

FrequencyProfile profile(const GridFunction& u, const Point& center, const std::vector<double>& radii,
                         const WeissParams& params);

struct LimitEstimate {
  double value = 0.0;
  double quality = 0.0;  // rms of the fit residual; lower is better
  int rungs_used = 0;
};

// N_hat(0+) from a geometric radius ladder r_max * 2^{-k} down to 4h,
// extrapolated linearly in r^alpha. Rungs pinned at the truncation level are
// dropped from the fit when enough remain.
LimitEstimate frequency_limit(const GridFunction& u, const Point& center, const WeissParams& params,
                              double r_max = 0.0);

enum class GrowthQuantity { H, D };
double growth_slope(const GridFunction& u, const Point& center, const std::vector<double>& radii,
                    GrowthQuantity which);

struct EpiCheck {
  double lhs = 0.0;   // W0_{3/2}(v)
  double rhs = 0.0;   // (1 - eta) W0_{3/2}(w)
  double w0_w = 0.0;
  double w0_v = 0.0;
  double eta = 0.0;
  double scale = 1.0;  // sphere mass of the trace
  bool pass = false;
};

struct EpiOptions {
  int resolution = 257;      // unit-ball grid resolution
  double extent = 1.25;
  double tol = 1e-3;         // pass slack, times the trace sphere mass
  int quad_level = 8;
  SolveOptions solve = {};
};

// Epiperimetric comparison for the trace of u on the given sphere: w is the
// 3/2-homogeneous extension of the rescaled trace, v the constrained
// minimizer with the same boundary values on the unit ball.
EpiCheck epiperimetric_check(const GridFunction& u, const BallSpec& ball, double eta, const EpiOptions& opts = {});

}  // namespace siglab
