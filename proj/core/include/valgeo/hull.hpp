#pragma once

#include <vector>

#include <Eigen/Core>

namespace valgeo::detail {

struct FacetPlane {
    Eigen::VectorXd normal;        // unit outward normal
    double offset;                 // normal . x <= offset over the hull
    std::vector<int> vertex_ids;   // sorted ids into the input point list
};

struct HullData {
    std::vector<int> vertex_ids;     // extreme points, sorted ids into the input list
    std::vector<FacetPlane> facets;  // one entry per supporting hyperplane
    double volume = 0.0;             // d-dimensional volume
};

// Convex hull of pts (d x m) assumed to affinely span R^d, d >= 1.
// Incremental quickhull on a simplicial structure followed by a coplanar
// merge pass; combinatorial decisions use the tolerance band `tol`.
HullData hull_full_dim(const Eigen::MatrixXd& pts, double tol);

}  // namespace valgeo::detail
