#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "siglab/grid.hpp"

namespace siglab {

// Dirichlet data on the outer boundary of the solve region. Values are
// stored on the full node array; only boundary entries are read.
struct BoundaryData {
  enum class Source { ExactSolution, FieldTrace };
  std::vector<double> values;
  Source source = Source::FieldTrace;

  static BoundaryData from_function(const Grid& grid, const FieldFn& f,
                                    Source tag = Source::ExactSolution);
  static BoundaryData from_field(const GridFunction& f);
};

struct SolveOptions {
  double omega = 1.8;                 // relaxation factor in (0,2)
  double tol_residual = 1e-8;         // relative to the boundary-data scale
  double tol_complementarity = 1e-8;  // relative
  int max_sweeps = 0;                 // 0 = 200 * resolution
  enum class Ordering { Lexicographic, RedBlack } ordering = Ordering::RedBlack;
  int check_interval = 8;
};

struct SolveDiagnostics {
  int sweeps_used = 0;
  double final_residual = 0.0;         // max |discrete Laplacian|, off-plane and non-contact thin nodes
  double final_complementarity = 0.0;  // discrete Signorini defect on the thin plane
  bool converged = false;
  bool peclet_warning = false;  // upwind fallback engaged somewhere
  double scale = 1.0;
};

// Per-node drift vector or per-node scalar coefficient.
struct CoefficientField {
  enum class Kind { Drift, Scalar } kind = Kind::Scalar;
  Grid grid;
  std::array<std::vector<double>, 3> drift;
  std::vector<double> a;

  static CoefficientField drift_constant(const Grid& grid, const Point& b);
  static CoefficientField drift_field(const Grid& grid, const std::array<FieldFn, 3>& b);
  static CoefficientField scalar_field(const Grid& grid, const FieldFn& a, double a_min = 1e-12);
};

// Projected SOR on the symmetric 5/7-point Dirichlet energy of the upper
// half-domain; thin-plane nodes are clamped at zero from below each sweep.
std::pair<GridFunction, SolveDiagnostics> solve_signorini(const Grid& grid, const BoundaryData& boundary,
                                                          const SolveOptions& opts = {});

// Same machinery without the projection.
std::pair<GridFunction, SolveDiagnostics> solve_harmonic(const Grid& grid, const BoundaryData& boundary,
                                                         const SolveOptions& opts = {});

// -Delta u + b . grad u = 0 off the plane (central convection, upwind
// fallback past cell Peclet 1), Signorini conditions on the thin plane.
std::pair<GridFunction, SolveDiagnostics> solve_drift(const Grid& grid, const BoundaryData& boundary,
                                                      const CoefficientField& drift,
                                                      const SolveOptions& opts = {});

// div(a grad u) = 0 with harmonic-mean face coefficients; constrained on the
// thin plane.
std::pair<GridFunction, SolveDiagnostics> solve_weighted(const Grid& grid, const BoundaryData& boundary,
                                                         const CoefficientField& coeff,
                                                         const SolveOptions& opts = {});

// Constrained minimizer inside the ball with u's own values as Dirichlet
// data on the discrete shell; equals u outside. Throws NonConvergence.
GridFunction signorini_replacement(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts = {});
GridFunction harmonic_replacement(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts = {});

// J(u)/J(signorini_replacement(u, ball)) - 1 with J the Dirichlet energy of
// the ball.
double almost_minimality_ratio(const GridFunction& u, const BallSpec& ball, const SolveOptions& opts = {});

struct ComplementarityReport {
  double product_max = 0.0;    // max |u * d_n u|
  double negativity_max = 0.0; // max (-u)^+
  double sign_max = 0.0;       // max (d_n u)^+
  double scale = 1.0;          // max |u|
  double headline = 0.0;       // largest of the three over scale
};

// Optional region restricts to thin-plane nodes with |x_a - center_a| <=
// halfwidth on the tangential axes.
struct ThinRegion {
  Point center{0, 0, 0};
  double halfwidth = 0.0;  // 0 = whole interior thin plane
};

ComplementarityReport verify_complementarity(const GridFunction& u, const ThinRegion& region = {});

}  // namespace siglab
