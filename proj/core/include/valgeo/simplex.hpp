#pragma once

#include <vector>

#include <Eigen/Core>

namespace valgeo {

enum class Rel { LE, GE, EQ };

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    double objective = 0.0;
    Eigen::VectorXd x;
    int iterations = 0;
};

// Minimize c.x subject to A x (<=,>=,==) b and x >= 0.
// Dense two-phase tableau simplex with Bland's rule: deterministic pivot
// order, cycle-free, intended for the small instances this library builds
// (a few hundred rows/columns).
LPResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, const std::vector<Rel>& rel);

}  // namespace valgeo
