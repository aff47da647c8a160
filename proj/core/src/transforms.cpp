#include "valgeo/transforms.hpp"

#include <cmath>

#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

MCValue mc_mean(const std::function<double(RandomStream&)>& draw, int samples,
                RandomStream& rng) {
    double s = 0.0, ssq = 0.0;
    for (int t = 0; t < samples; ++t) {
        const double v = draw(rng);
        s += v;
        ssq += v * v;
    }
    MCValue out;
    out.samples = samples;
    out.value = s / samples;
    out.stderr_ = std::sqrt(std::max(ssq / samples - out.value * out.value, 0.0) / samples);
    return out;
}

}  // namespace

MCValue radon(const GrassFunction& f, const Subspace& F, int samples, RandomStream& rng) {
    if (f.ambient_dim != F.ambient_dim()) throw DimensionMismatch("radon: ambient dims differ");
    const int i = f.degree;
    if (i < 1 || i >= f.ambient_dim) throw BadDimension("radon: bad function degree");
    if (i == F.dim()) {
        MCValue out;
        out.value = f.eval(F);
        out.stderr_ = 0.0;
        out.samples = 0;
        return out;
    }
    return mc_mean([&](RandomStream& r) { return f.eval(sample_incident(F, i, r)); }, samples,
                   rng);
}

RadonMeasure radon_measure(const AtomicGrassMeasure& mu, int j) {
    if (j < 1 || j >= mu.ambient_dim) throw BadDimension("radon_measure: bad target dimension");
    RadonMeasure rm;
    rm.mu = &mu;
    rm.target_dim = j;
    return rm;
}

MCValue RadonMeasure::integrate(const GrassFunction& g, int samples, RandomStream& rng) const {
    if (g.degree != target_dim)
        throw DimensionMismatch("RadonMeasure::integrate: function lives on the wrong Grassmannian");
    MCValue out;
    out.samples = samples;
    double var = 0.0;
    for (const auto& [E, w] : mu->atoms) {
        const MCValue r = radon(g, E, samples, rng);
        out.value += w * r.value;
        var += w * w * r.stderr_ * r.stderr_;
    }
    out.stderr_ = std::sqrt(var);
    return out;
}

MCValue cosine_transform(const GrassFunction& f, const Subspace& E, int samples,
                         RandomStream& rng) {
    if (f.ambient_dim != E.ambient_dim())
        throw DimensionMismatch("cosine_transform: ambient dims differ");
    if (f.degree != E.dim()) throw DimensionMismatch("cosine_transform: degree mismatch");
    const int n = f.ambient_dim, i = f.degree;
    return mc_mean(
        [&](RandomStream& r) {
            const Subspace F = sample_uniform(n, i, r);
            return cos_angle(E, F) * f.eval(F);
        },
        samples, rng);
}

double cosine_transform(const AtomicGrassMeasure& mu, const Subspace& E) {
    if (mu.ambient_dim != E.ambient_dim())
        throw DimensionMismatch("cosine_transform: ambient dims differ");
    if (mu.dim != E.dim()) throw DimensionMismatch("cosine_transform: dimension mismatch");
    double s = 0.0;
    for (const auto& [F, w] : mu.atoms) s += w * cos_angle(E, F);
    return s;
}

TwoRouteCheck check_adjoint(const GrassFunction& f, const GrassFunction& g, int samples,
                            RandomStream& rng) {
    const int n = f.ambient_dim;
    if (g.ambient_dim != n) throw DimensionMismatch("check_adjoint: ambient dims differ");
    const int i = f.degree, j = g.degree;
    // (R_{ji} f, g) over G_j versus (f, R_{ij} g) over G_i: both are the
    // integral of f(E) g(F) over incident pairs, sampled from either side
    const MCValue lhs = mc_mean(
        [&](RandomStream& r) {
            const Subspace F = sample_uniform(n, j, r);
            const Subspace E = sample_incident(F, i, r);
            return f.eval(E) * g.eval(F);
        },
        samples, rng);
    const MCValue rhs = mc_mean(
        [&](RandomStream& r) {
            const Subspace E = sample_uniform(n, i, r);
            const Subspace F = sample_incident(E, j, r);
            return f.eval(E) * g.eval(F);
        },
        samples, rng);
    TwoRouteCheck out;
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.diff = lhs.value - rhs.value;
    out.sigma = std::sqrt(lhs.stderr_ * lhs.stderr_ + rhs.stderr_ * rhs.stderr_);
    return out;
}

TwoRouteCheck check_cos_perp_duality(const GrassFunction& f, const Subspace& E, int samples,
                                     RandomStream& rng) {
    const int n = f.ambient_dim, i = f.degree;
    if (E.dim() != i) throw DimensionMismatch("check_cos_perp_duality: dimension mismatch");
    const MCValue lhs = cosine_transform(f, E, samples, rng);
    GrassFunction fperp;
    fperp.ambient_dim = n;
    fperp.degree = n - i;
    fperp.eval = [&f](const Subspace& G) { return f.eval(perp(G)); };
    const MCValue rhs = cosine_transform(fperp, perp(E), samples, rng);
    TwoRouteCheck out;
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.diff = lhs.value - rhs.value;
    out.sigma = std::sqrt(lhs.stderr_ * lhs.stderr_ + rhs.stderr_ * rhs.stderr_);
    return out;
}

}  // namespace valgeo
