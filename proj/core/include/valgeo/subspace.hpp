#pragma once

#include <vector>

#include <Eigen/Core>

#include "valgeo/random.hpp"

namespace valgeo {

// Default tolerances: frame orthonormality, rank/pivot decisions, and
// geometric comparisons. Chosen for double precision with O(n^3) error
// growth at ambient dimensions up to 8.
inline constexpr double kOrthoTol = 1e-12;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kGeomTol = 1e-9;

// A linear subspace of R^n held as an orthonormal frame (columns).
// Everything observable is frame-invariant: two Subspaces with the same
// column span are the same Grassmannian element.
class Subspace {
public:
    // Frame columns must be orthonormal within kOrthoTol.
    explicit Subspace(Eigen::MatrixXd frame);

    int ambient_dim() const { return static_cast<int>(frame_.rows()); }
    int dim() const { return static_cast<int>(frame_.cols()); }

    const Eigen::MatrixXd& frame() const { return frame_; }

    // Orthogonal projector frame * frame^T, the frame-free representation.
    Eigen::MatrixXd projector() const { return frame_ * frame_.transpose(); }

    // Coordinates of x in this frame (dim-sized).
    Eigen::VectorXd coords(const Eigen::VectorXd& x) const;

    // Orthogonal projection of x onto the subspace, in ambient coordinates.
    Eigen::VectorXd project_point(const Eigen::VectorXd& x) const;

    bool contains_vector(const Eigen::VectorXd& x, double tol = kGeomTol) const;
    bool contains_subspace(const Subspace& other, double tol = kGeomTol) const;

    // max-abs entry distance between the two projectors; zero iff equal spans.
    static double projector_distance(const Subspace& a, const Subspace& b);

    bool same_span(const Subspace& other, double tol = kGeomTol) const {
        return projector_distance(*this, other) < tol;
    }

private:
    Eigen::MatrixXd frame_;  // n x i, orthonormal columns
};

// Gram-Schmidt via Householder QR. Throws RankDeficient if the vectors are
// dependent (pivot tolerance kRankTol), DimensionMismatch on mixed lengths.
Subspace orthonormalize(const std::vector<Eigen::VectorXd>& vectors);
Subspace orthonormalize_columns(const Eigen::MatrixXd& columns);

// cos(E,F) = |det(U^T V)| for orthonormal frames U, V: the i-volume
// distortion of orthogonal projection from F to E. Symmetric, in [0,1].
double cos_angle(const Subspace& E, const Subspace& F);

// Orthogonal complement, dim n-i.
Subspace perp(const Subspace& E);

// Haar-uniform element of G_i(R^n): orthonormalized Gaussian frame.
Subspace sample_uniform(int n, int i, RandomStream& rng);

// Uniform element of G_i^F: subspaces of dim i containing F (i > dim F)
// or contained in F (i < dim F). i == dim F returns F itself.
Subspace sample_incident(const Subspace& F, int i, RandomStream& rng);

// Spans of the coordinate axes, convenience constructors.
Subspace coordinate_subspace(int n, const std::vector<int>& axes);
Subspace line_span(const Eigen::VectorXd& u);

}  // namespace valgeo
