#include "valgeo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

double coordinate_scale(const Eigen::MatrixXd& pts) {
    return std::max(1.0, pts.cwiseAbs().maxCoeff());
}

std::uint64_t face_hash(const std::vector<int>& ids) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : ids) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b9ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

// Orthonormal basis of span{cols - cols.col(0)} with the expected rank.
Eigen::MatrixXd direction_basis(const Eigen::MatrixXd& verts, const std::vector<int>& ids,
                                int expected_dim) {
    if (expected_dim == 0) return Eigen::MatrixXd(verts.rows(), 0);
    Eigen::MatrixXd diff(verts.rows(), ids.size() - 1);
    for (std::size_t j = 1; j < ids.size(); ++j)
        diff.col(static_cast<int>(j - 1)) = verts.col(ids[j]) - verts.col(ids[0]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diff);
    qr.setThreshold(kGeomTol);
    return qr.householderQ() * Eigen::MatrixXd::Identity(verts.rows(), expected_dim);
}

int affine_rank(const Eigen::MatrixXd& verts, const std::vector<int>& ids) {
    if (ids.size() <= 1) return 0;
    Eigen::MatrixXd diff(verts.rows(), ids.size() - 1);
    for (std::size_t j = 1; j < ids.size(); ++j)
        diff.col(static_cast<int>(j - 1)) = verts.col(ids[j]) - verts.col(ids[0]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diff);
    qr.setThreshold(kGeomTol);
    return static_cast<int>(qr.rank());
}

}  // namespace

struct Polytope::LatticeCache {
    std::once_flag flag;
    std::unique_ptr<FaceLattice> lattice;
};

Polytope Polytope::from_points(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw BadDimension("Polytope: need at least one point");
    const int n = static_cast<int>(points.front().size());
    Eigen::MatrixXd m(n, static_cast<int>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != n) throw DimensionMismatch("Polytope: points of mixed dimension");
        m.col(static_cast<int>(j)) = points[j];
    }
    return from_points(m);
}

Polytope Polytope::from_points(const Eigen::MatrixXd& points) {
    if (points.cols() < 1 || points.rows() < 1)
        throw BadDimension("Polytope: need at least one point");
    const int n = static_cast<int>(points.rows());
    const double scale = coordinate_scale(points);
    const double tol = kGeomTol * scale;

    // deduplicate, keeping first occurrences
    std::vector<int> uniq;
    for (int j = 0; j < points.cols(); ++j) {
        bool dup = false;
        for (int u : uniq)
            if ((points.col(j) - points.col(u)).cwiseAbs().maxCoeff() <= tol) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(j);
    }
    Eigen::MatrixXd pts(n, uniq.size());
    for (std::size_t j = 0; j < uniq.size(); ++j) pts.col(static_cast<int>(j)) = points.col(uniq[j]);

    Polytope P;
    P.n_ = n;
    P.aff_point_ = pts.rowwise().mean();
    P.cache_ = std::make_shared<LatticeCache>();

    Eigen::MatrixXd centered = pts.colwise() - P.aff_point_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(centered);
    qr.setThreshold(kGeomTol);
    P.dim_ = (pts.cols() == 1) ? 0 : static_cast<int>(qr.rank());

    if (P.dim_ == 0) {
        P.verts_ = pts.leftCols(1);
        P.aff_point_ = P.verts_.col(0);
        P.aff_basis_ = Eigen::MatrixXd(n, 0);
        P.local_verts_ = Eigen::MatrixXd(0, 1);
        P.intrinsic_vol_ = 1.0;  // counting measure
        return P;
    }

    P.aff_basis_ = qr.householderQ() * Eigen::MatrixXd::Identity(n, P.dim_);
    Eigen::MatrixXd local = P.aff_basis_.transpose() * centered;

    detail::HullData hull = detail::hull_full_dim(local, tol);

    const int V = static_cast<int>(hull.vertex_ids.size());
    P.verts_.resize(n, V);
    P.local_verts_.resize(P.dim_, V);
    std::map<int, int> remap;
    for (int j = 0; j < V; ++j) {
        remap[hull.vertex_ids[j]] = j;
        P.verts_.col(j) = pts.col(hull.vertex_ids[j]);
        P.local_verts_.col(j) = local.col(hull.vertex_ids[j]);
    }
    P.facets_ = std::move(hull.facets);
    for (auto& f : P.facets_)
        for (auto& v : f.vertex_ids) v = remap.at(v);
    P.intrinsic_vol_ = hull.volume;
    return P;
}

double Polytope::support(const Eigen::VectorXd& x) const {
    if (x.size() != n_) throw DimensionMismatch("support: wrong direction length");
    return (verts_.transpose() * x).maxCoeff();
}

bool Polytope::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != n_) throw DimensionMismatch("contains: wrong point length");
    const double s = tol * coordinate_scale(verts_);
    const Eigen::VectorXd rel = x - aff_point_;
    if (dim_ < n_) {
        const Eigen::VectorXd res = rel - aff_basis_ * (aff_basis_.transpose() * rel);
        if (res.cwiseAbs().maxCoeff() > s) return false;
    }
    if (dim_ == 0) return true;
    const Eigen::VectorXd y = aff_basis_.transpose() * rel;
    for (const auto& f : facets_)
        if (f.normal.dot(y) > f.offset + s) return false;
    return true;
}

Polytope Polytope::translated(const Eigen::VectorXd& v) const {
    if (v.size() != n_) throw DimensionMismatch("translated: wrong vector length");
    Polytope out = *this;
    out.verts_ = verts_.colwise() + v;
    out.aff_point_ = aff_point_ + v;
    out.cache_ = std::make_shared<LatticeCache>();  // ids unchanged, but keep caches private
    return out;
}

Polytope Polytope::scaled(double t) const {
    if (t > 0) {
        Polytope out = *this;
        out.verts_ = t * verts_;
        out.aff_point_ = t * aff_point_;
        out.local_verts_ = t * local_verts_;
        for (auto& f : out.facets_) f.offset *= t;
        double p = 1.0;
        for (int k = 0; k < dim_; ++k) p *= t;
        out.intrinsic_vol_ = p * intrinsic_vol_;
        out.cache_ = std::make_shared<LatticeCache>();
        return out;
    }
    return from_points((t * verts_).eval());
}

const FaceLattice& Polytope::lattice() const {
    std::call_once(cache_->flag, [this] {
        auto lat = std::make_unique<FaceLattice>();
        auto& levels = lat->faces_by_dim;
        levels.resize(dim_ + 1);

        // top face: the polytope itself
        Face top;
        top.dim = dim_;
        top.vertex_ids.resize(vertex_count());
        for (int j = 0; j < vertex_count(); ++j) top.vertex_ids[j] = j;
        top.direction_frame = aff_basis_;
        levels[dim_] = {std::move(top)};

        if (dim_ >= 1) {
            auto& lvl = levels[dim_ - 1];
            for (const auto& f : facets_) {
                Face face;
                face.dim = dim_ - 1;
                face.vertex_ids = f.vertex_ids;
                face.direction_frame = direction_basis(verts_, face.vertex_ids, dim_ - 1);
                face.covered_by = {0};
                lvl.push_back(std::move(face));
            }
            std::sort(lvl.begin(), lvl.end(),
                      [](const Face& a, const Face& b) { return a.vertex_ids < b.vertex_ids; });
        }

        for (int k = dim_ - 1; k >= 1; --k) {
            std::map<std::vector<int>, std::vector<int>> next;  // verts -> covering ids
            std::map<std::vector<int>, int> dim_memo;
            for (int g = 0; g < static_cast<int>(levels[k].size()); ++g) {
                const auto& sg = levels[k][g].vertex_ids;
                for (const auto& f : facets_) {
                    std::vector<int> t;
                    std::set_intersection(sg.begin(), sg.end(), f.vertex_ids.begin(),
                                          f.vertex_ids.end(), std::back_inserter(t));
                    if (t.empty() || t.size() == sg.size()) continue;
                    auto it = dim_memo.find(t);
                    int dt;
                    if (it == dim_memo.end()) {
                        dt = affine_rank(verts_, t);
                        dim_memo.emplace(t, dt);
                    } else {
                        dt = it->second;
                    }
                    if (dt != k - 1) continue;
                    next[t].push_back(g);
                }
            }
            auto& lvl = levels[k - 1];
            for (auto& [ids, cover] : next) {
                Face face;
                face.dim = k - 1;
                face.vertex_ids = ids;
                face.direction_frame = direction_basis(verts_, ids, k - 1);
                std::sort(cover.begin(), cover.end());
                cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
                face.covered_by = std::move(cover);
                lvl.push_back(std::move(face));
            }
            // map keys are already lexicographically sorted
        }
        cache_->lattice = std::move(lat);
    });
    return *cache_->lattice;
}

Polytope convex_hull(const std::vector<Eigen::VectorXd>& points) {
    return Polytope::from_points(points);
}

FaceLattice face_lattice(const Polytope& P) { return P.lattice(); }

double face_volume(const Polytope& P, const Face& F) {
    if (F.dim == 0) return 1.0;  // 0-dimensional counting measure
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(F.vertex_ids.size());
    for (int v : F.vertex_ids) pts.push_back(P.vertex(v));
    const Polytope sub = Polytope::from_points(pts);
    if (sub.dim() != F.dim) throw Error("face_volume: face dimension mismatch");
    return sub.intrinsic_volume_measure();
}

Cone normal_cone(const Polytope& P, const Face& F) {
    std::vector<Eigen::VectorXd> gens;
    for (int f = 0; f < static_cast<int>(P.facets().size()); ++f) {
        const auto& ids = P.facets()[f].vertex_ids;
        if (std::includes(ids.begin(), ids.end(), F.vertex_ids.begin(), F.vertex_ids.end()))
            gens.push_back(P.facet_normal_ambient(f));
    }
    if (P.dim() < P.ambient_dim()) {
        // lineality: the affine hull's orthogonal complement
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(P.aff_basis());
        const Eigen::MatrixXd q = qr.householderQ();
        for (int j = P.dim(); j < P.ambient_dim(); ++j) {
            gens.push_back(q.col(j));
            gens.push_back(-q.col(j));
        }
    }
    Cone c;
    c.generators.resize(P.ambient_dim(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) c.generators.col(static_cast<int>(j)) = gens[j];
    return c;
}

bool in_normal_cone(const Polytope& P, const Face& F, const Eigen::VectorXd& u, double tol) {
    const double s = tol * std::max(1.0, u.norm()) * coordinate_scale(P.vertices());
    const double h = P.support(u);
    for (int v : F.vertex_ids)
        if (u.dot(P.vertex(v)) < h - s) return false;
    return true;
}

double exterior_angle(const Polytope& P, const Face& F, int mc_samples) {
    const int d = P.dim();
    const int codim = d - F.dim;
    if (codim <= 0) throw DegenerateFace("exterior_angle: face must be proper");
    if (codim == 1) return 0.5;

    // intrinsic coordinates: normal cone span = orthocomplement of the face
    // direction inside the affine hull of P
    std::vector<int> carriers;
    for (int f = 0; f < static_cast<int>(P.facets().size()); ++f) {
        const auto& ids = P.facets()[f].vertex_ids;
        if (std::includes(ids.begin(), ids.end(), F.vertex_ids.begin(), F.vertex_ids.end()))
            carriers.push_back(f);
    }
    if (codim == 2) {
        if (carriers.size() != 2) throw Error("exterior_angle: codim-2 face without two facets");
        const double c = P.facets()[carriers[0]].normal.dot(P.facets()[carriers[1]].normal);
        const double theta = std::acos(std::clamp(c, -1.0, 1.0));
        return theta / (2.0 * M_PI);
    }

    // Monte Carlo over the unit sphere of the cone's span; deterministic
    // seed so that scaled copies of P report identical angles.
    Eigen::MatrixXd dir_local(d, F.dim);
    if (F.dim > 0) dir_local = P.aff_basis().transpose() * F.direction_frame;
    Eigen::MatrixXd span(d, codim);
    if (F.dim == 0) {
        span.setIdentity(d, d);
    } else {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(dir_local);
        span = (qr.householderQ() * Eigen::MatrixXd::Identity(d, d)).rightCols(codim);
    }

    // support test in intrinsic coordinates
    const Eigen::MatrixXd& lv = P.local_vertices();
    const double s = kGeomTol * coordinate_scale(P.vertices());
    RandomStream rng(face_hash(F.vertex_ids) ^ 0xa77e5ULL);
    int hits = 0;
    for (int t = 0; t < mc_samples; ++t) {
        const Eigen::VectorXd u = span * rng.unit_vector(codim);
        const Eigen::VectorXd vals = lv.transpose() * u;
        const double h = vals.maxCoeff();
        bool in = true;
        for (int v : F.vertex_ids)
            if (vals[v] < h - s) {
                in = false;
                break;
            }
        if (in) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(mc_samples);
}

bool is_centrally_symmetric(const Polytope& P, double tol) {
    const Eigen::MatrixXd& v = P.vertices();
    const int m = static_cast<int>(v.cols());
    const Eigen::VectorXd c = v.rowwise().mean();
    const double s = tol * coordinate_scale(v);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd target = 2.0 * c - v.col(j);
        bool found = false;
        for (int k = 0; k < m; ++k)
            if ((v.col(k) - target).cwiseAbs().maxCoeff() <= s) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

bool is_centrally_symmetric(const Polytope& P, const Face& F, double tol) {
    const int m = static_cast<int>(F.vertex_ids.size());
    Eigen::MatrixXd v(P.ambient_dim(), m);
    for (int j = 0; j < m; ++j) v.col(j) = P.vertex(F.vertex_ids[j]);
    const Eigen::VectorXd c = v.rowwise().mean();
    const double s = tol * coordinate_scale(P.vertices());
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd target = 2.0 * c - v.col(j);
        bool found = false;
        for (int k = 0; k < m; ++k)
            if ((v.col(k) - target).cwiseAbs().maxCoeff() <= s) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

SymmetryReport has_centrally_symmetric_k_faces(const Polytope& P, int k) {
    if (k < 1 || k > P.dim()) throw BadDimension("has_centrally_symmetric_k_faces: bad k");
    SymmetryReport rep;
    const auto& lvl = P.lattice().faces_by_dim[k];
    for (int j = 0; j < static_cast<int>(lvl.size()); ++j) {
        if (!is_centrally_symmetric(P, lvl[j])) {
            rep.all_symmetric = false;
            rep.violating_faces.push_back(j);
        }
    }
    return rep;
}

Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
    if (P.ambient_dim() != Q.ambient_dim())
        throw DimensionMismatch("minkowski_sum: ambient dims differ");
    const int vp = P.vertex_count(), vq = Q.vertex_count();
    Eigen::MatrixXd sums(P.ambient_dim(), vp * vq);
    int c = 0;
    for (int i = 0; i < vp; ++i)
        for (int j = 0; j < vq; ++j) sums.col(c++) = P.vertex(i) + Q.vertex(j);
    return Polytope::from_points(sums);
}

Polytope project(const Polytope& P, const Subspace& E) {
    if (P.ambient_dim() != E.ambient_dim())
        throw DimensionMismatch("project: ambient dims differ");
    return Polytope::from_points((E.frame().transpose() * P.vertices()).eval());
}

namespace {

// Wolfe's min-norm-point algorithm over conv(columns of V).
double min_norm_in_hull(const Eigen::MatrixXd& V) {
    const int m = static_cast<int>(V.cols());
    const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
    const double eps = 1e-12 * scale * scale;

    int s = 0;
    double best = V.col(0).squaredNorm();
    for (int j = 1; j < m; ++j) {
        const double q = V.col(j).squaredNorm();
        if (q < best) {
            best = q;
            s = j;
        }
    }
    std::vector<int> S = {s};
    Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd x = V.col(s);

    for (int outer = 0; outer < 16 * m + 256; ++outer) {
        int jb = -1;
        double db = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
            const double v = x.dot(V.col(j));
            if (v < db) {
                db = v;
                jb = j;
            }
        }
        if (x.squaredNorm() <= db + eps) break;
        if (std::find(S.begin(), S.end(), jb) != S.end()) break;  // numerical stall
        S.push_back(jb);
        lambda.conservativeResize(S.size());
        lambda[S.size() - 1] = 0.0;

        while (true) {
            const int k = static_cast<int>(S.size());
            Eigen::MatrixXd sub(V.rows(), k);
            for (int j = 0; j < k; ++j) sub.col(j) = V.col(S[j]);
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
            kkt.topLeftCorner(k, k) = sub.transpose() * sub;
            kkt.col(k).head(k).setOnes();
            kkt.row(k).head(k).setOnes();
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
            rhs[k] = 1.0;
            const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
            const Eigen::VectorXd alpha = sol.head(k);

            if (alpha.minCoeff() > 1e-12) {
                lambda = alpha;
                x = sub * lambda;
                break;
            }
            double theta = 1.0;
            for (int j = 0; j < k; ++j)
                if (alpha[j] <= 1e-12 && lambda[j] - alpha[j] > 1e-15)
                    theta = std::min(theta, lambda[j] / (lambda[j] - alpha[j]));
            lambda = lambda + theta * (alpha - lambda);
            std::vector<int> keepS;
            std::vector<double> keepL;
            for (int j = 0; j < k; ++j)
                if (lambda[j] > 1e-12) {
                    keepS.push_back(S[j]);
                    keepL.push_back(lambda[j]);
                }
            if (keepS.empty()) {
                keepS.push_back(S[0]);
                keepL.push_back(1.0);
            }
            S = std::move(keepS);
            lambda = Eigen::Map<Eigen::VectorXd>(keepL.data(), keepL.size());
            lambda /= lambda.sum();
            if (static_cast<int>(S.size()) == k) break;  // no progress, accept
        }
    }
    return x.norm();
}

}  // namespace

double distance_to(const Polytope& P, const Eigen::VectorXd& x) {
    if (x.size() != P.ambient_dim()) throw DimensionMismatch("distance_to: wrong point length");
    return min_norm_in_hull(P.vertices().colwise() - x);
}

double hausdorff_distance(const Polytope& P, const Polytope& Q) {
    if (P.ambient_dim() != Q.ambient_dim())
        throw DimensionMismatch("hausdorff_distance: ambient dims differ");
    double d = 0.0;
    for (int j = 0; j < P.vertex_count(); ++j) d = std::max(d, distance_to(Q, P.vertex(j)));
    for (int j = 0; j < Q.vertex_count(); ++j) d = std::max(d, distance_to(P, Q.vertex(j)));
    return d;
}

Subspace face_direction(const Polytope& P, const Face& F) {
    if (F.dim < 1) throw BadDimension("face_direction: face must have dim >= 1");
    (void)P;
    return Subspace(F.direction_frame);
}

}  // namespace valgeo
