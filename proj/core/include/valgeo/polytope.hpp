#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "valgeo/hull.hpp"
#include "valgeo/subspace.hpp"

namespace valgeo {

// A face of a polytope: vertex ids into the parent's vertex list plus an
// orthonormal frame of its direction space (ambient coordinates).
struct Face {
    int dim = 0;
    std::vector<int> vertex_ids;       // sorted
    Eigen::MatrixXd direction_frame;   // n x dim, empty for vertices
    std::vector<int> covered_by;       // ids into faces_by_dim[dim+1]
};

// Complete face lattice, proper faces plus the polytope itself as the top
// face. faces_by_dim[k] is sorted lexicographically by vertex ids.
struct FaceLattice {
    std::vector<std::vector<Face>> faces_by_dim;  // k = 0 .. dim(P)

    int total_faces() const {
        int t = 0;
        for (const auto& level : faces_by_dim) t += static_cast<int>(level.size());
        return t;
    }
};

// Polyhedral cone with apex at the origin. Lineality directions (present for
// faces of lower-dimensional polytopes) appear as +/- generator pairs.
struct Cone {
    Eigen::MatrixXd generators;  // n x k columns
};

// Convex polytope stored by its irredundant vertex list. Lower-dimensional
// bodies are first class: the hull is computed inside the affine hull and
// facet data lives in intrinsic coordinates. Immutable after construction;
// the face lattice is computed once on demand and shared across copies.
class Polytope {
public:
    // Hull of arbitrary points (n x m columns). Stored vertices are the
    // extreme points only.
    static Polytope from_points(const Eigen::MatrixXd& points);
    static Polytope from_points(const std::vector<Eigen::VectorXd>& points);

    int ambient_dim() const { return n_; }
    int dim() const { return dim_; }
    int vertex_count() const { return static_cast<int>(verts_.cols()); }
    const Eigen::MatrixXd& vertices() const { return verts_; }
    Eigen::VectorXd vertex(int j) const { return verts_.col(j); }

    const Eigen::VectorXd& aff_point() const { return aff_point_; }
    const Eigen::MatrixXd& aff_basis() const { return aff_basis_; }  // n x dim
    // vertices in intrinsic (affine hull) coordinates, dim x V
    const Eigen::MatrixXd& local_vertices() const { return local_verts_; }

    // Facet planes in intrinsic coordinates (dim-sized normals).
    const std::vector<detail::FacetPlane>& facets() const { return facets_; }
    // Outward facet normal in ambient coordinates.
    Eigen::VectorXd facet_normal_ambient(int f) const { return aff_basis_ * facets_[f].normal; }

    // dim(P)-dimensional volume inside the affine hull.
    double intrinsic_volume_measure() const { return intrinsic_vol_; }

    double support(const Eigen::VectorXd& x) const;
    bool contains(const Eigen::VectorXd& x, double tol = kGeomTol) const;

    Eigen::VectorXd centroid() const { return verts_.rowwise().mean(); }

    const FaceLattice& lattice() const;

    Polytope translated(const Eigen::VectorXd& v) const;
    Polytope scaled(double t) const;  // about the origin

private:
    Polytope() = default;

    int n_ = 0;
    int dim_ = 0;
    Eigen::MatrixXd verts_;       // n x V
    Eigen::VectorXd aff_point_;
    Eigen::MatrixXd aff_basis_;   // n x dim, orthonormal columns
    Eigen::MatrixXd local_verts_; // dim x V
    std::vector<detail::FacetPlane> facets_;  // intrinsic coordinates
    double intrinsic_vol_ = 0.0;

    struct LatticeCache;
    std::shared_ptr<LatticeCache> cache_;
};

Polytope convex_hull(const std::vector<Eigen::VectorXd>& points);

FaceLattice face_lattice(const Polytope& P);  // convenience: P.lattice() copy-free access

double face_volume(const Polytope& P, const Face& F);

Cone normal_cone(const Polytope& P, const Face& F);

// Is the ambient direction u in the normal cone of P at F?
bool in_normal_cone(const Polytope& P, const Face& F, const Eigen::VectorXd& u,
                    double tol = kGeomTol);

// Normalized exterior angle: the fraction of the unit sphere of the normal
// cone's linear span covered by the cone. Exact for codimension <= 2, Monte
// Carlo (deterministically seeded from the face) otherwise.
double exterior_angle(const Polytope& P, const Face& F, int mc_samples = 1000000);

bool is_centrally_symmetric(const Polytope& P, double tol = kGeomTol);
bool is_centrally_symmetric(const Polytope& P, const Face& F, double tol = kGeomTol);

struct SymmetryReport {
    bool all_symmetric = true;
    std::vector<int> violating_faces;  // ids into lattice level k
};
SymmetryReport has_centrally_symmetric_k_faces(const Polytope& P, int k);

Polytope minkowski_sum(const Polytope& P, const Polytope& Q);

// Orthogonal projection onto E, expressed in E's frame coordinates
// (the result lives in an ambient space of dimension dim E).
Polytope project(const Polytope& P, const Subspace& E);

double hausdorff_distance(const Polytope& P, const Polytope& Q);

// Euclidean distance from a point to the polytope (0 if inside).
double distance_to(const Polytope& P, const Eigen::VectorXd& x);

// Direction space of a face as a Subspace (requires F.dim >= 1).
Subspace face_direction(const Polytope& P, const Face& F);

}  // namespace valgeo
