#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "valgeo/polytope.hpp"
#include "valgeo/random.hpp"
#include "valgeo/subspace.hpp"

namespace valgeo {

// phi(K) = coeff * V(K[degree], bodies[0], ..., bodies[n-degree-1])
struct MixedVolumeTerm {
    int degree = 1;
    std::vector<Polytope> bodies;
    double coeff = 1.0;
};

// phi(K) = sum_k w_k h(K, u_k); atoms come in +-u pairs of equal weight so
// the valuation is even (and hence translation-invariant). Degree 1.
struct HIntegralTerm {
    std::vector<std::pair<Eigen::VectorXd, double>> atoms;
};

// phi(K) = coeff * V_index(K)
struct IntrinsicTerm {
    int index = 1;
    double coeff = 1.0;
};

struct ConstantTerm {
    double value = 0.0;
};

using ValuationTerm = std::variant<MixedVolumeTerm, HIntegralTerm, IntrinsicTerm, ConstantTerm>;

// Declarative finite sum of valuation terms; the serializable subset of
// translation-invariant even valuations this library works with.
struct ValuationSpec {
    int ambient_dim = 0;
    std::vector<ValuationTerm> terms;

    // common homogeneity degree of all terms, or nullopt when mixed
    std::optional<int> homogeneous_degree() const;
};

int term_degree(const ValuationTerm& t);

// One face's contribution to the polytopal area measure S_i(P, .): the
// density times the spherical region carved by the normal cone.
struct FaceMeasurePiece {
    int face_id = 0;          // index into lattice().faces_by_dim[i]
    double density = 0.0;     // binom(n,i)^{-1} * n/(n-i) * vol_i(F)
    Cone region;              // N(F, P)
    double region_measure = 0.0;  // H^{n-1-i}(N cap S^{n-1})
    double region_stderr = 0.0;   // 0 when the region is a point or arc
};

struct KlainFunction {
    int ambient_dim = 0;
    int degree = 0;
    std::function<double(const Subspace&)> eval;
};

struct TwoRouteCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double diff = 0.0;
    double sigma = 0.0;  // combined standard error of the sampled routes
};

double binomial(int n, int k);

// n-dimensional volume; 0 for lower-dimensional bodies.
double volume(const Polytope& P);

// Mixed volume of n bodies in R^n, normalized so V(K,...,K) = vol_n(K).
// Computed by interpolating vol(lambda_1 K_1 + ... + lambda_m K_m) on the
// grid lambda in {1..n}^m over the distinct bodies. Throws IllConditioned if
// the interpolation residual exceeds 1e-6.
double mixed_volume(const std::vector<Polytope>& bodies, double* condition = nullptr);

// V_i via the face formula sum_F gamma(F,P) vol_i(F); V_0 = 1, V_dim = vol.
double intrinsic_volume(const Polytope& P, int i);

// vol_i(P|E); cross-check against binom(n,i) V(P[i], L_E[n-i]) available via
// projection_volume_mixed_route.
double projection_volume(const Polytope& P, const Subspace& E);
double projection_volume_mixed_route(const Polytope& P, const Subspace& E);

// Polytopal area measure S_i(P, .), one piece per i-face.
std::vector<FaceMeasurePiece> area_measure(const Polytope& P, int i);
double area_measure_total(const std::vector<FaceMeasurePiece>& pieces);

// Integral of f over S_i(P, .): exact for point/arc regions, Monte Carlo
// with reported standard error otherwise.
double integrate_against_area_measure(const Polytope& P, int i,
                                      const std::function<double(const Eigen::VectorXd&)>& f,
                                      RandomStream& rng, int mc_samples = 200000,
                                      double* stderr_out = nullptr);

double evaluate(const ValuationSpec& phi, const Polytope& K);

// Klain function of a homogeneous spec at E in G_i (throws MixedDegrees when
// the spec mixes homogeneity degrees).
double klain(const ValuationSpec& phi, const Subspace& E);
KlainFunction klain_function(const ValuationSpec& phi);

// McMullen components (phi_0(K), ..., phi_n(K)) of a black-box evaluator,
// from the degree-n polynomial t -> phi(tK) on t = 0..n.
std::vector<double> homogeneous_components(const std::function<double(const Polytope&)>& phi,
                                           const Polytope& K, int n);
std::vector<double> homogeneous_components(const ValuationSpec& phi, const Polytope& K);

// The angular functional of a Klain function g of degree i:
// sum over i-faces of g(dir F) gamma(F,P) vol_i(F).
double angular_evaluate(const KlainFunction& g, const Polytope& P, int i);

// Degree-(n-1) inverse Klain map: Tf(P) = (1/2) sum over facets of
// f(facet direction) * facet area, i.e. (1/2) integral of f(u^perp) dS_{n-1}.
double inverse_klain_top(const std::function<double(const Subspace&)>& f, const Polytope& P);

// Two-route check of V(K, B^n[i-1] : E) = omega_i R_{i,1}(h_K)(E) for origin
// symmetric K: projection mixed volume with the ball approximant on the
// left, Monte Carlo Radon average of the support function on the right.
TwoRouteCheck radon_projection_check(const Polytope& K, const Subspace& E, RandomStream& rng,
                             int samples = 100000);

}  // namespace valgeo
