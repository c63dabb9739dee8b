#pragma once

#include <string>
#include <vector>

#include "siglab/functionals.hpp"
#include "siglab/grid.hpp"
#include "siglab/rescale.hpp"

namespace siglab {

// Node u <= tau marks contact; tau = c_tau * scale * h^{3/2} under the
// scaled policy (solutions detach like dist^{3/2} at regular points).
struct ThresholdPolicy {
  enum class Kind { Scaled, Absolute } kind = Kind::Scaled;
  double c_tau = 1.0;
  double absolute = 0.0;
};

struct FreeBoundarySet {
  std::vector<uint8_t> lambda_mask;  // one flag per thin-plane node
  std::vector<Point> gamma_points;   // midpoints of mask transitions
  double tau = 0.0;
};

FreeBoundarySet coincidence_set(const GridFunction& u, const ThresholdPolicy& policy = {});

// Contact area fraction of the thin disk B'_r(center): cell-area weighted
// count over |B'_r|.
double coincidence_density(const FreeBoundarySet& fb, const Grid& grid, const Point& center, double r);

struct ClassifyThresholds {
  double delta_gap = 0.15;   // width of the admissible frequency bands
  double rho_sing = 0.1;     // density ceiling for singular verdicts
  double quality_max = 0.05; // extrapolation quality gate
  double density_radius = 0.2;
  std::vector<double> blowup_ladder = {0.16, 0.08, 0.04};
  double fit_accept = 0.05;
  double freq_r_max = 0.0;  // 0 = t0
};

struct Classification {
  enum class Verdict { Regular, Singular, Other, Unresolved } verdict = Verdict::Unresolved;
  double kappa = 0.0;  // 1.5, the matched even integer, or the frequency estimate
  double nhat_limit = 0.0;
  double quality = 0.0;
  double density = 0.0;
  BlowupFit fit;
  Point point{0, 0, 0};
  std::string note;
};

Classification classify_point(const GridFunction& u, const Point& x0, const WeissParams& params,
                              const ClassifyThresholds& thresholds = {});

struct GraphFitOptions {
  double halfwidth = 0.2;   // window half-width along the rotated boundary
  int slices = 5;
  double fit_radius = 0.08; // blowup rung for the per-point normals
  double gamma = 0.5;       // Holder exponent of the quotient table
};

struct GraphFit {
  std::vector<double> s;        // abscissae along the rotated boundary
  std::vector<double> g;        // graph values in the rotated frame
  std::vector<Point> normals;   // fitted normals per sample
  std::vector<double> quotients;  // |nu_x - nu_y| / |x-y|^gamma over pairs
  double max_quotient = 0.0;
  Point seed{0, 0, 0};
};

// Regular set as a graph near a Regular seed (n = 3; in n = 2 the free
// boundary is the seed point itself).
GraphFit regular_graph_fit(const GridFunction& u, const Classification& seed, const GraphFitOptions& opts = {});

// d = (n-1) minus the rank of the tangential-gradient coefficient map of the
// fitted polynomial restricted to the thin plane.
int singular_dimension(const BlowupFit& fit, int dim);

}  // namespace siglab
