#pragma once

#include <vector>

#include <Eigen/Core>

#include "valgeo/polytope.hpp"
#include "valgeo/random.hpp"
#include "valgeo/subspace.hpp"

namespace valgeo::bodies {

// Volume of the n-dimensional Euclidean unit ball.
double unit_ball_volume(int n);

Polytope cube(int n);                 // [0,1]^n
Polytope cross_polytope(int n);       // conv{+-e_i}; the octahedron for n = 3
Polytope segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
Polytope point(const Eigen::VectorXd& p);

// Symmetric polytopal ball approximant: 128 vertices for n = 2, 3 and 256
// vertices for n = 4, volume-calibrated so vol(ball_approx) = omega_n.
// Deterministic construction.
Polytope ball_approx(int n);
// Relative volume deficit 1 - vol(ball_approx)/omega_n (about 0 after
// calibration; kept as a diagnostic).
double ball_approx_deficit(int n);
// max |h(ball_approx, u) - 1| over a dense direction grid: the documented
// approximation error that widens ball-identity tolerances.
double ball_approx_support_deviation(int n);

// Zonotope sum of the segments [-g, g].
Polytope zonotope(const std::vector<Eigen::VectorXd>& generators);

Polytope random_polytope(int n, int points, RandomStream& rng);
Polytope random_zonotope(int n, int generators, RandomStream& rng);

// An i-dimensional axis box of the given side length inside E, translated to
// touch the origin.
Polytope box_in_subspace(const Subspace& E, double side);

// Deterministic half-sphere direction grids (the +-v pairs cover S^{n-1}):
// symmetrized Fibonacci points for n = 3, an inverse-normal-quantile
// (Halton-driven) grid for other n.
std::vector<Eigen::VectorXd> sphere_grid(int n, int count);

}  // namespace valgeo::bodies
