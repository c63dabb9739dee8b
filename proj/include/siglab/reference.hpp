#pragma once

#include "siglab/grid.hpp"

// Straightforward serial implementations of the quadrature kernels, kept for
// testing the OpenMP paths (results must agree bit-for-bit: same arithmetic
// in the same order) and as the baseline in the benchmark.
namespace siglab::reference {

double ball_energy(const GridFunction& f, const BallSpec& ball);
double sphere_mass(const GridFunction& f, const BallSpec& ball, int level = 1);
double sphere_flux_deficit(const GridFunction& f, const VectorField& grad, const BallSpec& ball, double kappa,
                           double b, double alpha, int level = 1);
VectorField gradient(const GridFunction& f);

}  // namespace siglab::reference
