#include "valgeo/subspace.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "valgeo/errors.hpp"

namespace valgeo {

Subspace::Subspace(Eigen::MatrixXd frame) : frame_(std::move(frame)) {
    const int n = static_cast<int>(frame_.rows());
    const int i = static_cast<int>(frame_.cols());
    if (n < 1 || i < 1 || i > n)
        throw BadDimension("Subspace: need 1 <= dim <= ambient_dim");
    const Eigen::MatrixXd gram = frame_.transpose() * frame_;
    const double err = (gram - Eigen::MatrixXd::Identity(i, i)).cwiseAbs().maxCoeff();
    // A freshly QR-orthonormalized frame sits well below 1e-12; frames read
    // from files get a looser re-orthonormalization elsewhere.
    if (err > 1e3 * kOrthoTol)
        throw RankDeficient("Subspace: frame not orthonormal (deviation " + std::to_string(err) + ")");
}

Eigen::VectorXd Subspace::coords(const Eigen::VectorXd& x) const {
    if (x.size() != frame_.rows()) throw DimensionMismatch("Subspace::coords: wrong length");
    return frame_.transpose() * x;
}

Eigen::VectorXd Subspace::project_point(const Eigen::VectorXd& x) const {
    return frame_ * coords(x);
}

bool Subspace::contains_vector(const Eigen::VectorXd& x, double tol) const {
    const double nrm = x.norm();
    if (nrm < tol) return true;
    return (x - project_point(x)).norm() <= tol * std::max(1.0, nrm);
}

bool Subspace::contains_subspace(const Subspace& other, double tol) const {
    for (int j = 0; j < other.dim(); ++j)
        if (!contains_vector(other.frame().col(j), tol)) return false;
    return true;
}

double Subspace::projector_distance(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("projector_distance: ambient dims differ");
    return (a.projector() - b.projector()).cwiseAbs().maxCoeff();
}

Subspace orthonormalize_columns(const Eigen::MatrixXd& columns) {
    const int n = static_cast<int>(columns.rows());
    const int k = static_cast<int>(columns.cols());
    if (k < 1) throw BadDimension("orthonormalize: no vectors");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(columns);
    qr.setThreshold(kRankTol);
    if (qr.rank() < k)
        throw RankDeficient("orthonormalize: input vectors are linearly dependent");
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    return Subspace(q);
}

Subspace orthonormalize(const std::vector<Eigen::VectorXd>& vectors) {
    if (vectors.empty()) throw BadDimension("orthonormalize: no vectors");
    const int n = static_cast<int>(vectors.front().size());
    Eigen::MatrixXd m(n, static_cast<int>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n)
            throw DimensionMismatch("orthonormalize: vectors of mixed lengths");
        m.col(static_cast<int>(j)) = vectors[j];
    }
    return orthonormalize_columns(m);
}

double cos_angle(const Subspace& E, const Subspace& F) {
    if (E.ambient_dim() != F.ambient_dim())
        throw DimensionMismatch("cos_angle: ambient dims differ");
    if (E.dim() != F.dim())
        throw DimensionMismatch("cos_angle: subspace dims differ");
    const Eigen::MatrixXd m = E.frame().transpose() * F.frame();
    double c = std::abs(m.determinant());
    if (c > 1.0) c = 1.0;  // clip rounding excess
    return c;
}

Subspace perp(const Subspace& E) {
    const int n = E.ambient_dim();
    const int i = E.dim();
    if (i >= n) throw BadDimension("perp: complement would be trivial");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(E.frame());
    const Eigen::MatrixXd q = qr.householderQ();
    return Subspace(q.rightCols(n - i));
}

Subspace sample_uniform(int n, int i, RandomStream& rng) {
    if (!(0 < i && i < n)) throw BadDimension("sample_uniform: need 0 < i < n");
    while (true) {
        const Eigen::MatrixXd g = rng.normal_matrix(n, i);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
        qr.setThreshold(kRankTol);
        if (qr.rank() < i) continue;  // measure-zero event
        return orthonormalize_columns(g);
    }
}

Subspace sample_incident(const Subspace& F, int i, RandomStream& rng) {
    const int n = F.ambient_dim();
    const int j = F.dim();
    if (i < 1 || i > n - 1) throw BadDimension("sample_incident: need 0 < i < n");
    if (i == j) return F;
    if (i < j) {
        // uniform i-subspace of F: Gaussian coefficients against F's frame
        const Eigen::MatrixXd g = rng.normal_matrix(j, i);
        return orthonormalize_columns(F.frame() * g);
    }
    // extend F by a uniform (i-j)-subspace of F^perp
    const Subspace comp = perp(F);
    const Eigen::MatrixXd g = rng.normal_matrix(n - j, i - j);
    Eigen::MatrixXd cols(n, i);
    cols.leftCols(j) = F.frame();
    cols.rightCols(i - j) = comp.frame() * g;
    return orthonormalize_columns(cols);
}

Subspace coordinate_subspace(int n, const std::vector<int>& axes) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, static_cast<int>(axes.size()));
    for (std::size_t j = 0; j < axes.size(); ++j) {
        if (axes[j] < 0 || axes[j] >= n) throw BadDimension("coordinate_subspace: axis out of range");
        m(axes[j], static_cast<int>(j)) = 1.0;
    }
    return Subspace(m);
}

Subspace line_span(const Eigen::VectorXd& u) {
    const double nrm = u.norm();
    if (nrm < kRankTol) throw RankDeficient("line_span: zero vector");
    Eigen::MatrixXd m(u.size(), 1);
    m.col(0) = u / nrm;
    return Subspace(m);
}

}  // namespace valgeo
