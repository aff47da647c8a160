#include "valgeo/minball.hpp"

#include <cmath>
#include <list>
#include <vector>

#include <Eigen/Dense>

#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

// Smallest ball with the given points on its boundary (affinely independent
// support set of size <= d+1): circumcenter via the linear system
// (p_i - p_0) . c = (|p_i|^2 - |p_0|^2) / 2.
Ball circumball(const std::vector<Eigen::VectorXd>& support, int n) {
    Ball b;
    if (support.empty()) {
        b.center = Eigen::VectorXd::Zero(n);
        b.radius = 0.0;
        return b;
    }
    const int k = static_cast<int>(support.size()) - 1;
    if (k == 0) {
        b.center = support[0];
        b.radius = 0.0;
        return b;
    }
    // shifted coordinates q_i = p_i - p_0: the min-norm solution of
    // q_i . m = |q_i|^2 / 2 lies in span{q_i}, so p_0 + m is the
    // circumcenter inside the support's affine hull
    Eigen::MatrixXd a(k, n);
    Eigen::VectorXd rhs(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd q = support[i + 1] - support[0];
        a.row(i) = q.transpose();
        rhs[i] = q.squaredNorm() / 2.0;
    }
    b.center = support[0] + a.completeOrthogonalDecomposition().solve(rhs);
    b.radius = (support[0] - b.center).norm();
    return b;
}

bool inside(const Ball& b, const Eigen::VectorXd& p, double tol) {
    return (p - b.center).norm() <= b.radius + tol;
}

Ball welzl(std::list<int>& order, std::list<int>::iterator end,
           std::vector<Eigen::VectorXd>& support, const Eigen::MatrixXd& pts, double tol) {
    const int n = static_cast<int>(pts.rows());
    Ball b = circumball(support, n);
    if (static_cast<int>(support.size()) == n + 1) return b;
    for (auto it = order.begin(); it != end;) {
        const int p = *it;
        if (!inside(b, pts.col(p), tol)) {
            support.push_back(pts.col(p));
            b = welzl(order, it, support, pts, tol);
            support.pop_back();
            // move-to-front
            auto next = std::next(it);
            order.erase(it);
            order.push_front(p);
            it = next;
        } else {
            ++it;
        }
    }
    return b;
}

}  // namespace

Ball min_enclosing_ball(const Eigen::MatrixXd& pts) {
    if (pts.cols() < 1) throw BadDimension("min_enclosing_ball: no points");
    const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
    const double tol = 1e-12 * scale;
    std::list<int> order;
    for (int j = 0; j < pts.cols(); ++j) order.push_back(j);
    std::vector<Eigen::VectorXd> support;
    return welzl(order, order.end(), support, pts, tol);
}

}  // namespace valgeo
