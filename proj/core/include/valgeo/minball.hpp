#pragma once

#include <Eigen/Core>

namespace valgeo {

struct Ball {
    Eigen::VectorXd center;
    double radius = 0.0;
};

// Minimum enclosing ball of the columns of pts: Welzl's algorithm with
// move-to-front, exact at small scale.
Ball min_enclosing_ball(const Eigen::MatrixXd& pts);

}  // namespace valgeo
