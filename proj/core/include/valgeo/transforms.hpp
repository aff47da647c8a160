#pragma once

#include <functional>
#include <vector>

#include "valgeo/random.hpp"
#include "valgeo/subspace.hpp"
#include "valgeo/valuation.hpp"

namespace valgeo {

// Continuous function on G_i(R^n); eval must be frame-invariant.
struct GrassFunction {
    int ambient_dim = 0;
    int degree = 0;
    std::function<double(const Subspace&)> eval;
};

// Finite atomic signed measure on G_i(R^n).
struct AtomicGrassMeasure {
    int ambient_dim = 0;
    int dim = 0;
    std::vector<std::pair<Subspace, double>> atoms;

    double total_mass() const {
        double t = 0.0;
        for (const auto& [s, w] : atoms) t += w;
        return t;
    }
};

struct MCValue {
    double value = 0.0;
    double stderr_ = 0.0;
    int samples = 0;
};

// Radon transform R_{ji} f (F): average of f over G_i^F. Exact when
// dim F == degree of f (the E = F clause), Monte Carlo otherwise.
MCValue radon(const GrassFunction& f, const Subspace& F, int samples, RandomStream& rng);

// R_{ji} mu through its defining adjoint relation: integrates g in C(G_j)
// as sum_k w_k R_{ij} g(E_k). Total mass is preserved.
struct RadonMeasure {
    const AtomicGrassMeasure* mu = nullptr;
    int target_dim = 0;

    MCValue integrate(const GrassFunction& g, int samples, RandomStream& rng) const;
    double total_mass() const { return mu->total_mass(); }
};
RadonMeasure radon_measure(const AtomicGrassMeasure& mu, int j);

// Cosine transform of a function (Monte Carlo) or an atomic measure (exact).
MCValue cosine_transform(const GrassFunction& f, const Subspace& E, int samples,
                         RandomStream& rng);
double cosine_transform(const AtomicGrassMeasure& mu, const Subspace& E);

// Two-route checks of the Radon adjointness identity and the
// perp-conjugation identity of the cosine transform.
TwoRouteCheck check_adjoint(const GrassFunction& f, const GrassFunction& g, int samples,
                            RandomStream& rng);
TwoRouteCheck check_cos_perp_duality(const GrassFunction& f, const Subspace& E, int samples,
                                     RandomStream& rng);

}  // namespace valgeo
