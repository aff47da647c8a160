#pragma once

#include <cstdint>
#include <vector>

#include "valgeo/membership.hpp"
#include "valgeo/polytope.hpp"
#include "valgeo/random.hpp"
#include "valgeo/valuation.hpp"

namespace valgeo {

// Constants making c0 + phi + c1 V_2 nonnegative for a degree-1 phi with
// strictly positive Klain function. norm_upper is a certified term-wise
// bound of the valuation norm; eta_hat is estimated from sampled pairs, so
// positivity downstream is a sampled statement, not a certificate.
struct PositivityConstants {
    double c0 = 0.0;          // norm_upper
    double c1 = 0.0;          // norm_upper / (pi eta_hat^2)
    double epsilon_hat = 0.0; // min of phi over sampled dim-1 test bodies
    double eta_hat = 0.0;     // largest 2^-k passing the continuity sweep
    double norm_upper = 0.0;
    double norm_lower = 0.0;  // sampled, diagnostic only
};

PositivityConstants positivity_constants(const ValuationSpec& phi, int audit_grid_size, int samples,
                                 RandomStream& rng);

struct CounterexampleReport {
    explicit CounterexampleReport(Polytope body) : witness_body(std::move(body)) {}

    ValuationSpec psi;              // c0 + phi + c1 V_2, positive (sampled)
    ValuationSpec phi;              // shifted witness, degree 1
    Polytope witness_body;          // K*
    std::vector<double> components; // homogeneous components of psi at K*
    PositivityConstants constants;
    double shift_t = 0.0;
    double klain_audit_min = 0.0;   // min of Klain_phi over the audit grid
    int positivity_trials = 0;
    double min_psi_observed = 0.0;
    double component_sum_residual = 0.0;
    int grid_size = 0;
    std::uint64_t seed = 0;
};

// Full pipeline of the positive-valuation counterexample: witness ->
// strict shift -> constants -> psi, with component and positivity
// verification. The default witness body is the cross-polytope.
CounterexampleReport build_counterexample(int n, int grid_size, RandomStream& rng,
                                          const Polytope* body = nullptr,
                                          int stress_trials = 10000,
                                          int continuity_pairs = 10000);

// The degree-1 component c of psi at K* is negative, so c|x| violates
// subadditivity: c|e1+e2| > c|e1| + c|e2|. Returns true when the violation
// is exhibited.
bool minkowski_nondecomposition_check(const CounterexampleReport& report);

}  // namespace valgeo
