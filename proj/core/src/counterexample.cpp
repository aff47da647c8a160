#include "valgeo/counterexample.hpp"

#include <cmath>

#include "valgeo/bodies.hpp"
#include "valgeo/minball.hpp"
#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

// V_i(B^n) = binom(n,i) omega_n / omega_{n-i}
double intrinsic_of_ball(int n, int i) {
    return binomial(n, i) * bodies::unit_ball_volume(n) / bodies::unit_ball_volume(n - i);
}

// Certified term-wise upper bound of ||phi|| = sup{|phi(K)| : K subset B^n}.
double norm_upper_bound(const ValuationSpec& phi) {
    const int n = phi.ambient_dim;
    double bound = 0.0;
    for (const auto& term : phi.terms) {
        if (std::holds_alternative<HIntegralTerm>(term)) {
            // |h_K(u)| <= 1 for K inside the unit ball and unit u
            for (const auto& [u, w] : std::get<HIntegralTerm>(term).atoms)
                bound += std::abs(w) * u.norm();
        } else if (std::holds_alternative<IntrinsicTerm>(term)) {
            const auto& t = std::get<IntrinsicTerm>(term);
            bound += std::abs(t.coeff) * intrinsic_of_ball(n, t.index);
        } else if (std::holds_alternative<MixedVolumeTerm>(term)) {
            // monotonicity in the body slot, with the approximant inflated
            // by its support deviation
            const auto& t = std::get<MixedVolumeTerm>(term);
            const double dev = bodies::ball_approx_support_deviation(n);
            std::vector<Polytope> args;
            const Polytope ball = bodies::ball_approx(n).scaled(1.0 + dev);
            for (int k = 0; k < t.degree; ++k) args.push_back(ball);
            for (const auto& L : t.bodies) args.push_back(L);
            bound += std::abs(t.coeff) * std::abs(mixed_volume(args));
        } else {
            bound += std::abs(std::get<ConstantTerm>(term).value);
        }
    }
    return bound;
}

Polytope random_body_in_ball(int n, RandomStream& rng) {
    return bodies::random_polytope(n, 6 + static_cast<int>(rng.uniform_index(5)), rng);
}

}  // namespace

PositivityConstants positivity_constants(const ValuationSpec& phi, int audit_grid_size, int samples,
                                 RandomStream& rng) {
    const int n = phi.ambient_dim;
    const auto deg = phi.homogeneous_degree();
    if (!deg || *deg != 1) throw MixedDegrees("positivity_constants: phi must be 1-homogeneous");

    // hypothesis: Klain_phi strictly positive (checked on the audit grid)
    const auto audit = bodies::sphere_grid(n, audit_grid_size);
    double klain_min = 1e300;
    for (const auto& u : audit) klain_min = std::min(klain_min, klain(phi, line_span(u)));
    if (klain_min <= 0.0)
        throw KlainNotPositive("positivity_constants: Klain function not strictly positive (min " +
                               std::to_string(klain_min) + ")");

    PositivityConstants out;
    out.norm_upper = norm_upper_bound(phi);

    // sampled lower bound of the norm (diagnostic)
    double lower = 0.0;
    for (int t = 0; t < samples; ++t)
        lower = std::max(lower, std::abs(evaluate(phi, random_body_in_ball(n, rng))));
    out.norm_lower = lower;

    // epsilon: min of phi over segments in N = {dim 1, K in B^n, 2R(K) >= 1}
    double eps = 1e300;
    for (int t = 0; t < samples; ++t) {
        const Eigen::VectorXd u = rng.unit_vector(n);
        const double len = rng.uniform(1.0, 2.0);
        const Polytope seg = bodies::segment((-0.5 * len * u).eval(), (0.5 * len * u).eval());
        eps = std::min(eps, evaluate(phi, seg));
    }
    if (eps <= 1e-12)
        throw EpsilonZero("positivity_constants: phi vanishes on a sampled segment");
    out.epsilon_hat = eps;

    // eta sweep: largest 2^-k (< 1/12) such that sampled pairs in M with
    // d_H < 6 eta stay within epsilon. Pairs are built as (K, vertex-wise
    // perturbation of K), which bounds d_H by the perturbation radius.
    for (int k = 4; k <= 20 && out.eta_hat == 0.0; ++k) {
        const double eta = std::pow(2.0, -k);
        const double delta = 6.0 * eta * 0.99;
        const double lo = 0.5 + delta + 0.01, hi = 1.0 - delta - 0.01;
        if (lo >= hi) continue;  // cannot place both bodies in M at this eta
        bool ok = true;
        RandomStream pair_rng = rng.fork(0xe7a + k);
        for (int t = 0; t < samples && ok; ++t) {
            // center at the circumcenter, rescale so R(K) lands in [lo, hi]:
            // then K is in B^n with 2R(K) >= 1, and so is the perturbation
            Polytope K0 = random_body_in_ball(n, pair_rng);
            const Ball ball = min_enclosing_ball(K0.vertices());
            Eigen::MatrixXd verts = K0.vertices().colwise() - ball.center;
            verts *= pair_rng.uniform(lo, hi) / std::max(ball.radius, 1e-12);
            const Polytope K = Polytope::from_points(verts);
            Eigen::MatrixXd perturbed = K.vertices();
            for (int c = 0; c < perturbed.cols(); ++c)
                perturbed.col(c) += delta * pair_rng.uniform() * pair_rng.unit_vector(n);
            const Polytope L = Polytope::from_points(perturbed);
            if (std::abs(evaluate(phi, K) - evaluate(phi, L)) >= eps) ok = false;
        }
        if (ok) out.eta_hat = eta;
    }
    if (out.eta_hat == 0.0)
        throw Error("positivity_constants: continuity sweep failed down to 2^-20");

    out.c0 = out.norm_upper;
    out.c1 = out.norm_upper / (M_PI * out.eta_hat * out.eta_hat);
    return out;
}

CounterexampleReport build_counterexample(int n, int grid_size, RandomStream& rng,
                                          const Polytope* body, int stress_trials,
                                          int continuity_pairs) {
    if (n < 3) throw BadDimension("build_counterexample: needs n >= 3");
    const Polytope K = body ? *body : bodies::cross_polytope(n);

    CounterexampleReport rep(K);
    rep.grid_size = grid_size;
    rep.seed = rng.seed();

    std::string reason;
    auto w = zonoid_witness(K, grid_size, rng, -1e-6, &reason);
    if (!w) throw Error("build_counterexample: witness stage failed: " + reason);

    double t = 0.0, audit_min = 0.0;
    rep.phi = shift_to_strict(w->spec(n), K, w->audit_grid_size, &t, &audit_min);
    rep.shift_t = t;

    // audit of the shifted Klain function
    const auto audit = bodies::sphere_grid(n, w->audit_grid_size);
    double shifted_min = 1e300;
    for (const auto& u : audit)
        shifted_min = std::min(shifted_min, klain(rep.phi, line_span(u)));
    if (shifted_min <= 0.0)
        throw Error("build_counterexample: shift stage left the Klain function nonpositive");
    rep.klain_audit_min = shifted_min;

    rep.constants = positivity_constants(rep.phi, w->audit_grid_size, continuity_pairs, rng);

    // psi = c0 + phi + c1 V_2
    rep.psi = rep.phi;
    rep.psi.terms.push_back(ConstantTerm{rep.constants.c0});
    rep.psi.terms.push_back(IntrinsicTerm{2, rep.constants.c1});

    rep.components = homogeneous_components(rep.psi, K);
    double sum = 0.0;
    for (double c : rep.components) sum += c;
    rep.component_sum_residual = std::abs(sum - evaluate(rep.psi, K));
    if (rep.components[1] >= 0.0)
        throw Error("build_counterexample: component stage: degree-1 component not negative");

    // positivity stress: random polytopes across scales; psi(tK) follows
    // from the term homogeneities
    const double scales[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    double min_psi = 1e300;
    for (int trial = 0; trial < stress_trials; ++trial) {
        const Polytope M = random_body_in_ball(n, rng);
        const double h1 = evaluate(rep.phi, M);   // degree 1
        const double v2 = intrinsic_volume(M, 2); // degree 2
        for (double s : scales)
            min_psi = std::min(min_psi, rep.constants.c0 + s * h1 +
                                            rep.constants.c1 * s * s * v2);
    }
    rep.positivity_trials = stress_trials;
    rep.min_psi_observed = min_psi;
    if (min_psi < 0.0)
        throw Error("build_counterexample: positivity stage observed a negative value");
    return rep;
}

bool minkowski_nondecomposition_check(const CounterexampleReport& report) {
    if (report.components.size() < 2) return false;
    const double c = report.components[1];
    if (c >= 0.0) return false;
    // c|e1+e2| > c|e1| + c|e2| for negative c: sqrt(2) c > 2 c
    return c * std::sqrt(2.0) > 2.0 * c;
}

}  // namespace valgeo
