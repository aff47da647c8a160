#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valgeo/polytope.hpp"
#include "valgeo/random.hpp"
#include "valgeo/transforms.hpp"
#include "valgeo/valuation.hpp"

namespace valgeo {

// Outcome of the polytopal G(i)/K(i) decision. Exactly one of
// violating_faces / measure is populated. For polytopes the two classes
// coincide, so a single verdict answers both.
struct MembershipCertificate {
    bool member = false;
    int i = 0;
    std::vector<int> violating_faces;             // ids into faces_by_dim[i+1]
    std::optional<AtomicGrassMeasure> measure;    // mu_P on G_i
    double projection_residual = 0.0;             // max |vol_i(P|E) - integral|
    double klain_residual = 0.0;                  // max spec-identity residual
};

// A signed even measure rho on the direction grid witnessing that K is not a
// zonoid: the cosine transform of rho is >= 0 on the grid while
// int h_K d(rho) < 0. A witness is only returned when it survives the
// 10x-finer audit: the V_1 shift can make its Klain function strictly
// positive while the evaluation on K stays negative.
struct ZonoidWitness {
    std::vector<std::pair<Eigen::VectorXd, double>> atoms;  // +-v pairs, equal weights
    double objective = 0.0;   // sum_k rho_k h_K(v_k) (< 0)
    double min_cosine = 0.0;  // min of the witness cosine transform on the grid
    int grid_size = 0;
    int lp_iterations = 0;
    int audit_grid_size = 0;
    double audit_min = 0.0;   // min Klain over the audit grid (pre-shift)

    // the induced degree-1 valuation phi(M) = sum_k rho_k h_M(v_k)
    ValuationSpec spec(int ambient_dim) const;
};

// Membership of a centrally symmetric polytope in G(i) (equivalently K(i)):
// member iff all (i+1)-faces are centrally symmetric; i = n-1 is always a
// member. On membership the representing measure is constructed and
// verified; rng drives the verification sampling.
MembershipCertificate decide_G(const Polytope& P, int i, RandomStream& rng,
                               int verify_trials = 100);

// Constructive mu_P: group the i-faces into parallel classes, check equal
// volumes and that each class's normal cones tile the orthogonal complement
// subspace, then place one atom (direction space, common volume) per class.
AtomicGrassMeasure representing_measure(const Polytope& P, int i, RandomStream& rng);

// max over random E in G_i of |vol_i(P|E) - sum_k w_k cos(E, E_k)|, plus the
// Klain-identity residual over random mixed-volume specs (reported through
// klain_residual when non-null).
double verify_integral_rep(const Polytope& P, int i, const AtomicGrassMeasure& mu, int trials,
                           RandomStream& rng, double* klain_residual = nullptr);

// Zonoid separation by linear programming on a symmetrized direction grid:
// minimize sum rho_k h_K(v_k) subject to the cosine transform of rho being
// nonnegative on the grid and total variation 1. Returns nullopt (NoneFound)
// when the optimum is above -1e-6 or when the optimum fails the audit-grid
// shift test (a finite-grid artifact, reported distinctly via none_reason).
std::optional<ZonoidWitness> zonoid_witness(const Polytope& K, int grid_size, RandomStream& rng,
                                            double threshold = -1e-6,
                                            std::string* none_reason = nullptr);

// phi + t V_1 with t chosen so the Klain function becomes strictly positive
// on a 10x finer audit grid while evaluate(phi + t V_1, K) stays negative.
// audit_min_out receives the audited minimum of the *input* Klain function.
ValuationSpec shift_to_strict(const ValuationSpec& phi, const Polytope& K, int audit_grid_size,
                              double* t_out = nullptr, double* audit_min_out = nullptr);

}  // namespace valgeo
