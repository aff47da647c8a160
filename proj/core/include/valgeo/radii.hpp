#pragma once

#include <cstdint>
#include <vector>

#include "valgeo/minball.hpp"
#include "valgeo/polytope.hpp"
#include "valgeo/random.hpp"

namespace valgeo {

// Sampled bounds on the successive radii: R_upper >= R_i(K) from projection
// circumradii, r_lower <= r_i(K) from section inradii.
struct RadiiReport {
    int i = 0;
    double R_upper = 0.0;
    double r_lower = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

// Minimum enclosing ball of the vertex set.
Ball circumradius(const Polytope& P);

// Chebyshev center over the facet inequalities, computed inside aff K for
// lower-dimensional bodies.
Ball inradius(const Polytope& P);

// Sampled bounds for all i = 1..n: nested random flags give chain-consistent
// draws, a stochastic coordinate-descent refinement sharpens each level, and
// a final cascade enforces the monotone chains exactly. i = n is exact.
std::vector<RadiiReport> successive_radii(const Polytope& P, int samples, RandomStream& rng,
                                          int refine_steps = 50);
RadiiReport successive_radii_single(const Polytope& P, int i, int samples, RandomStream& rng,
                                    int refine_steps = 50);

struct PerelmanCheck {
    bool pass = false;   // false means inconclusive, never a violation
    double ratio = 0.0;  // R_{n-i+1}_upper / r_i_lower
    double bound = 0.0;  // i + 1
};

// Since R_upper >= R and r_lower <= r, ratio <= i+1 strictly confirms the
// inequality; a failure only means the sampled bounds are too loose.
PerelmanCheck perelman_check(const std::vector<RadiiReport>& reports, int i);

}  // namespace valgeo
