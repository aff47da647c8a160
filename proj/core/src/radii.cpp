#include "valgeo/radii.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "valgeo/errors.hpp"
#include "valgeo/simplex.hpp"
#include "valgeo/subspace.hpp"

namespace valgeo {

namespace {

// Ambient H-representation of a full-dimensional polytope.
struct HRep {
    Eigen::MatrixXd normals;  // n x F unit columns
    Eigen::VectorXd offsets;  // normals.col(f) . x <= offsets[f]
};

HRep ambient_hrep(const Polytope& P) {
    HRep h;
    const int nf = static_cast<int>(P.facets().size());
    h.normals.resize(P.ambient_dim(), nf);
    h.offsets.resize(nf);
    for (int f = 0; f < nf; ++f) {
        const Eigen::VectorXd a = P.facet_normal_ambient(f);
        h.normals.col(f) = a;
        h.offsets[f] = P.facets()[f].offset + a.dot(P.aff_point());
    }
    return h;
}

// Chebyshev radius of {y : normals.col(j) . y <= offsets[j]} with unit rows.
double chebyshev_radius(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets) {
    const int d = static_cast<int>(normals.rows());
    const int m = static_cast<int>(normals.cols());
    Eigen::MatrixXd A(m, 2 * d + 1);
    Eigen::VectorXd b(m);
    for (int j = 0; j < m; ++j) {
        A.block(j, 0, 1, d) = normals.col(j).transpose();
        A.block(j, d, 1, d) = -normals.col(j).transpose();
        A(j, 2 * d) = 1.0;
        b[j] = offsets[j];
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * d + 1);
    c[2 * d] = -1.0;  // maximize r
    const auto res = solve_lp(A, b, c, std::vector<Rel>(m, Rel::LE));
    if (res.status == LPStatus::Unbounded) return std::numeric_limits<double>::infinity();
    if (res.status != LPStatus::Optimal) return 0.0;
    return res.x[2 * d];
}

// Inradius of the slice P cap (x0 + span E) for an interior point x0,
// computed in E-coordinates from the ambient facet inequalities.
double slice_inradius(const HRep& h, const Eigen::VectorXd& x0, const Eigen::MatrixXd& frame) {
    const int i = static_cast<int>(frame.cols());
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    for (int f = 0; f < h.normals.cols(); ++f) {
        Eigen::VectorXd g = frame.transpose() * h.normals.col(f);
        const double nrm = g.norm();
        const double r = h.offsets[f] - h.normals.col(f).dot(x0);
        if (nrm < 1e-12) continue;  // facet parallel to the flat; x0 interior keeps it slack
        rows.push_back(g / nrm);
        rhs.push_back(r / nrm);
    }
    if (rows.empty()) return 0.0;
    Eigen::MatrixXd normals(i, rows.size());
    Eigen::VectorXd offsets(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        normals.col(static_cast<int>(j)) = rows[j];
        offsets[static_cast<int>(j)] = rhs[j];
    }
    const double r = chebyshev_radius(normals, offsets);
    return std::isfinite(r) ? std::max(r, 0.0) : 0.0;
}

Eigen::VectorXd random_interior_point(const Polytope& P, RandomStream& rng) {
    const int m = P.vertex_count();
    Eigen::VectorXd w(m);
    for (int j = 0; j < m; ++j) w[j] = -std::log(std::max(rng.uniform(), 1e-300));
    w /= w.sum();
    return P.vertices() * w;
}

double projection_circumradius(const Polytope& P, const Eigen::MatrixXd& frame) {
    return min_enclosing_ball((frame.transpose() * P.vertices()).eval()).radius;
}

}  // namespace

Ball circumradius(const Polytope& P) { return min_enclosing_ball(P.vertices()); }

Ball inradius(const Polytope& P) {
    Ball b;
    if (P.dim() == 0) {
        b.center = P.vertex(0);
        b.radius = 0.0;
        return b;
    }
    const int d = P.dim();
    const int m = static_cast<int>(P.facets().size());
    // facets are already unit-normal in intrinsic coordinates
    Eigen::MatrixXd A(m, 2 * d + 1);
    Eigen::VectorXd rhs(m);
    for (int f = 0; f < m; ++f) {
        const auto& facet = P.facets()[f];
        A.block(f, 0, 1, d) = facet.normal.transpose();
        A.block(f, d, 1, d) = -facet.normal.transpose();
        A(f, 2 * d) = 1.0;
        rhs[f] = facet.offset;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * d + 1);
    c[2 * d] = -1.0;
    const auto res = solve_lp(A, rhs, c, std::vector<Rel>(m, Rel::LE));
    if (res.status != LPStatus::Optimal) throw Error("inradius: Chebyshev LP failed");
    const Eigen::VectorXd y = res.x.head(d) - res.x.segment(d, d);
    b.center = P.aff_point() + P.aff_basis() * y;
    b.radius = res.x[2 * d];
    return b;
}

std::vector<RadiiReport> successive_radii(const Polytope& P, int samples, RandomStream& rng,
                                          int refine_steps) {
    const int n = P.ambient_dim();
    if (P.dim() != n) throw BadDimension("successive_radii: polytope must be full-dimensional");
    const std::uint64_t seed = rng.seed();
    const HRep hrep = ambient_hrep(P);

    std::vector<double> best_R(n + 1, std::numeric_limits<double>::infinity());
    std::vector<double> best_r(n + 1, 0.0);
    std::vector<Eigen::MatrixXd> best_R_frame(n + 1), best_r_frame(n + 1);
    std::vector<Eigen::VectorXd> best_r_point(n + 1);

    best_R[n] = circumradius(P).radius;
    best_r[n] = inradius(P).radius;

    // nested flags: one orthonormal n-frame per draw serves every level
    for (int s = 0; s < samples; ++s) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.normal_matrix(n, n));
        const Eigen::MatrixXd Q = qr.householderQ();
        const Eigen::VectorXd x0 = random_interior_point(P, rng);
        for (int i = 1; i < n; ++i) {
            const Eigen::MatrixXd frame = Q.leftCols(i);
            const double R = projection_circumradius(P, frame);
            if (R < best_R[i]) {
                best_R[i] = R;
                best_R_frame[i] = frame;
            }
            const double r = slice_inradius(hrep, x0, frame);
            if (r > best_r[i]) {
                best_r[i] = r;
                best_r_frame[i] = frame;
                best_r_point[i] = x0;
            }
        }
    }

    // stochastic coordinate descent around the incumbents, forked streams so
    // refinement draws do not depend on the sample count
    for (int i = 1; i < n; ++i) {
        RandomStream rr = rng.fork(0xadd + i);
        double sigma = 0.3;
        const double decay = std::pow(1e-4, 1.0 / std::max(refine_steps - 1, 1));
        for (int step = 0; step < refine_steps; ++step, sigma *= decay) {
            for (int probe = 0; probe < 8; ++probe) {
                if (best_R_frame[i].size() > 0) {
                    Eigen::MatrixXd cand = best_R_frame[i] + sigma * rr.normal_matrix(n, i);
                    Eigen::HouseholderQR<Eigen::MatrixXd> q2(cand);
                    const Eigen::MatrixXd f2 =
                        q2.householderQ() * Eigen::MatrixXd::Identity(n, i);
                    const double R = projection_circumradius(P, f2);
                    if (R < best_R[i]) {
                        best_R[i] = R;
                        best_R_frame[i] = f2;
                    }
                }
                if (best_r_frame[i].size() > 0) {
                    Eigen::MatrixXd cand = best_r_frame[i] + sigma * rr.normal_matrix(n, i);
                    Eigen::HouseholderQR<Eigen::MatrixXd> q2(cand);
                    const Eigen::MatrixXd f2 =
                        q2.householderQ() * Eigen::MatrixXd::Identity(n, i);
                    Eigen::VectorXd p2 = best_r_point[i] + sigma * rr.normal_vector(n);
                    if (!P.contains(p2)) p2 = best_r_point[i];
                    const double r = slice_inradius(hrep, p2, f2);
                    if (r > best_r[i]) {
                        best_r[i] = r;
                        best_r_frame[i] = f2;
                        best_r_point[i] = p2;
                    }
                }
            }
        }
    }

    // enforce the monotone chains: an upper bound for R_{i+1} bounds R_i,
    // a lower bound for r_{i+1} bounds r_i
    for (int i = n - 1; i >= 1; --i) {
        best_R[i] = std::min(best_R[i], best_R[i + 1]);
        best_r[i] = std::max(best_r[i], best_r[i + 1]);
    }

    std::vector<RadiiReport> out;
    for (int i = 1; i <= n; ++i) {
        RadiiReport rep;
        rep.i = i;
        rep.R_upper = best_R[i];
        rep.r_lower = best_r[i];
        rep.samples = samples;
        rep.seed = seed;
        out.push_back(rep);
    }
    return out;
}

RadiiReport successive_radii_single(const Polytope& P, int i, int samples, RandomStream& rng,
                                    int refine_steps) {
    if (i < 1 || i > P.ambient_dim()) throw BadDimension("successive_radii_single: bad index");
    return successive_radii(P, samples, rng, refine_steps)[i - 1];
}

PerelmanCheck perelman_check(const std::vector<RadiiReport>& reports, int i) {
    const int n = static_cast<int>(reports.size());
    if (i < 1 || i > n || n - i + 1 < 1) throw BadDimension("perelman_check: bad index");
    const RadiiReport& upper = reports[n - i + 1 - 1];
    const RadiiReport& lower = reports[i - 1];
    PerelmanCheck out;
    out.bound = i + 1.0;
    if (lower.r_lower <= 0.0) {
        out.ratio = std::numeric_limits<double>::infinity();
        out.pass = false;
        return out;
    }
    out.ratio = upper.R_upper / lower.r_lower;
    out.pass = out.ratio <= out.bound;
    return out;
}

}  // namespace valgeo
