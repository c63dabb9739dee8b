#pragma once

#include <vector>

#include "siglab/functionals.hpp"
#include "siglab/grid.hpp"

namespace siglab {

// phi_kappa(r) = e^{-(kappa b / alpha) r^alpha} r^kappa, the almost-homogeneous
// normalizer; solves phi' = kappa phi (1 - b r^alpha)/r.
double phi(double kappa, double r, double b, double alpha);
double phi(double kappa, double r, const WeissParams& params);

enum class RescaleKind { Almgren, Homogeneous, AlmostHomogeneous };

struct RescaleSpec {
  RescaleKind kind = RescaleKind::AlmostHomogeneous;
  Point center{0, 0, 0};
  double radius = 0.0;
  double kappa = 1.5;
  WeissParams params;
  int resolution = 0;    // 0 = derived from the source spacing
  double extent = 1.25;  // target half-width (covers the unit ball)
};

// u(r x + x0) / divisor resampled onto a unit-ball-covering grid; the divisor
// is (H(r)/r^{n-1})^{1/2}, r^kappa or phi_kappa(r) by kind.
GridFunction rescale_field(const GridFunction& u, const RescaleSpec& spec);

// w(x) = (|x|/t)^kappa u(t x / |x|) on u's own grid.
GridFunction homogeneous_replacement(const GridFunction& u, double t, double kappa);

struct BlowupResult {
  std::vector<double> ladder;        // strictly decreasing radii
  std::vector<GridFunction> fields;  // rescaled field per rung
  std::vector<double> rotation;      // L1 sphere distance between consecutive rungs
  std::vector<double> mu;            // Almgren-to-phi normalizer ratio per rung
  bool converged = false;
  double threshold = 0.0;
  const GridFunction& limit() const { return fields.back(); }
};

struct BlowupOptions {
  int resolution = 0;
  double extent = 1.25;
  double threshold_factor = 0.02;  // times the sphere mass^(1/2) of the finest rung
  int quad_level = 1;
};

BlowupResult blowup(const GridFunction& u, const Point& center, double kappa, const std::vector<double>& ladder,
                    const WeissParams& params, const BlowupOptions& opts = {});

struct BlowupFit {
  enum class Kind { Regular, Singular } kind = Kind::Regular;
  // Regular: u = a Re(x'.nu + i|x_n|)^{3/2}
  double a = 0.0;
  std::array<double, 3> nu{1, 0, 0};
  // Singular: coefficients over the hardcoded Q_kappa basis
  double kappa = 1.5;
  std::vector<double> coeffs;
  double lambda = 0.0;  // (int_{dB1} q^2)^{1/2}
  bool not_in_q = false;
  double residual = 0.0;  // relative L2 on the unit sphere
};

// Least squares of a Re(x'.nu + i|x_n|)^{3/2} on the unit-sphere quadrature.
BlowupFit fit_regular_profile(const FieldFn& w, int dim, int quad_level = 4);
BlowupFit fit_regular_profile(const GridFunction& w, int quad_level = 4);

// Linear least squares over the Q_kappa basis; flags NotInQ when the fitted
// polynomial dips below -1e-8 lambda on the thin unit sphere.
BlowupFit fit_singular_polynomial(const FieldFn& w, int dim, int kappa, int quad_level = 4);
BlowupFit fit_singular_polynomial(const GridFunction& w, int kappa, int quad_level = 4);

}  // namespace siglab
