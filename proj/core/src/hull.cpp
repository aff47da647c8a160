#include "valgeo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "valgeo/errors.hpp"

namespace valgeo::detail {

namespace {

struct QFacet {
    Eigen::VectorXd normal;
    double offset = 0.0;
    std::vector<int> verts;      // d input-point ids
    std::vector<int> neighbors;  // d facet ids sharing a ridge
    std::vector<int> outside;    // conflict list
    int furthest = -1;
    double furthest_dist = 0.0;
    bool dead = false;

    double dist(const Eigen::MatrixXd& pts, int p) const {
        return normal.dot(pts.col(p)) - offset;
    }
};

// Unit normal of the hyperplane through d points.
Eigen::VectorXd hyperplane_normal(const Eigen::MatrixXd& pts, const std::vector<int>& ids) {
    const int d = static_cast<int>(pts.rows());
    Eigen::MatrixXd diff(d, d - 1);
    for (int j = 1; j < d; ++j) diff.col(j - 1) = pts.col(ids[j]) - pts.col(ids[0]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(diff);
    const Eigen::MatrixXd q = qr.householderQ();
    return q.col(d - 1);
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

HullData hull_1d(const Eigen::MatrixXd& pts, double tol) {
    const int m = static_cast<int>(pts.cols());
    int lo = 0, hi = 0;
    for (int j = 1; j < m; ++j) {
        if (pts(0, j) < pts(0, lo)) lo = j;
        if (pts(0, j) > pts(0, hi)) hi = j;
    }
    if (std::abs(pts(0, hi) - pts(0, lo)) <= tol)
        throw RankDeficient("hull_full_dim: 1-d point set does not span");
    HullData out;
    out.vertex_ids = {std::min(lo, hi), std::max(lo, hi)};
    FacetPlane up, dn;
    up.normal = Eigen::VectorXd::Ones(1);
    up.offset = pts(0, hi);
    up.vertex_ids = {hi};
    dn.normal = -Eigen::VectorXd::Ones(1);
    dn.offset = -pts(0, lo);
    dn.vertex_ids = {lo};
    out.facets = {dn, up};
    out.volume = pts(0, hi) - pts(0, lo);
    return out;
}

}  // namespace

HullData hull_full_dim(const Eigen::MatrixXd& pts, double tol) {
    const int d = static_cast<int>(pts.rows());
    const int m = static_cast<int>(pts.cols());
    if (d < 1 || m < d + 1) {
        if (d == 1 && m >= 2) return hull_1d(pts, tol);
        throw RankDeficient("hull_full_dim: too few points for dimension");
    }
    if (d == 1) return hull_1d(pts, tol);

    // Initial simplex: lexicographically smallest point, then greedily the
    // point furthest from the affine hull of the chosen ones.
    std::vector<int> init;
    {
        int p0 = 0;
        for (int j = 1; j < m; ++j) {
            for (int k = 0; k < d; ++k) {
                if (pts(k, j) < pts(k, p0) - 1e-15) {
                    p0 = j;
                    break;
                }
                if (pts(k, j) > pts(k, p0) + 1e-15) break;
            }
        }
        init.push_back(p0);
        Eigen::MatrixXd basis(d, 0);
        while (static_cast<int>(init.size()) < d + 1) {
            int best = -1;
            double best_dist = tol;
            for (int j = 0; j < m; ++j) {
                Eigen::VectorXd r = pts.col(j) - pts.col(init[0]);
                if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
                const double dist = r.norm();
                if (dist > best_dist) {
                    best_dist = dist;
                    best = j;
                }
            }
            if (best < 0) throw RankDeficient("hull_full_dim: points do not span R^d");
            init.push_back(best);
            Eigen::VectorXd r = pts.col(best) - pts.col(init[0]);
            if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
            basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
            basis.col(basis.cols() - 1) = r / r.norm();
        }
    }

    Eigen::VectorXd interior = Eigen::VectorXd::Zero(d);
    for (int id : init) interior += pts.col(id);
    interior /= static_cast<double>(d + 1);

    std::vector<QFacet> facets;
    facets.reserve(64);
    auto make_facet = [&](std::vector<int> verts) {
        std::sort(verts.begin(), verts.end());
        QFacet f;
        f.normal = hyperplane_normal(pts, verts);
        f.offset = f.normal.dot(pts.col(verts[0]));
        if (f.normal.dot(interior) > f.offset) {
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
        f.verts = std::move(verts);
        return f;
    };

    for (int k = 0; k <= d; ++k) {
        std::vector<int> verts;
        for (int j = 0; j <= d; ++j)
            if (j != k) verts.push_back(init[j]);
        QFacet f = make_facet(std::move(verts));
        for (int j = 0; j <= d; ++j)
            if (j != k) f.neighbors.push_back(j);
        facets.push_back(std::move(f));
    }

    auto push_outside = [&](QFacet& f, int p) {
        const double dist = f.dist(pts, p);
        if (dist > tol) {
            f.outside.push_back(p);
            if (dist > f.furthest_dist) {
                f.furthest_dist = dist;
                f.furthest = p;
            }
            return true;
        }
        return false;
    };

    {
        std::vector<bool> used(m, false);
        for (int id : init) used[id] = true;
        for (int p = 0; p < m; ++p) {
            if (used[p]) continue;
            for (auto& f : facets)
                if (push_outside(f, p)) break;
        }
    }

    std::vector<int> pending;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i)
        if (!facets[i].outside.empty()) pending.push_back(i);

    while (!pending.empty()) {
        const int fi = pending.back();
        pending.pop_back();
        if (facets[fi].dead || facets[fi].outside.empty()) continue;
        const int apex = facets[fi].furthest;

        // visible region BFS
        std::vector<int> visible = {fi};
        std::vector<std::pair<std::vector<int>, int>> horizon;  // ridge verts, border facet
        facets[fi].dead = true;
        std::vector<int> stack = {fi};
        while (!stack.empty()) {
            const int g = stack.back();
            stack.pop_back();
            for (int h : facets[g].neighbors) {
                if (facets[h].dead) continue;
                if (facets[h].dist(pts, apex) > tol) {
                    facets[h].dead = true;
                    visible.push_back(h);
                    stack.push_back(h);
                } else {
                    auto ridge = sorted_intersection(facets[g].verts, facets[h].verts);
                    if (static_cast<int>(ridge.size()) != d - 1)
                        throw Error("hull_full_dim: inconsistent ridge");
                    horizon.emplace_back(std::move(ridge), h);
                }
            }
        }

        // new cone of facets from the apex over the horizon
        std::vector<int> fresh;
        std::map<std::vector<int>, std::pair<int, bool>> ridge_map;
        for (auto& [ridge, border] : horizon) {
            std::vector<int> verts = ridge;
            verts.push_back(apex);
            QFacet nf = make_facet(std::move(verts));
            const int nid = static_cast<int>(facets.size());
            nf.neighbors.push_back(border);
            auto& bn = facets[border].neighbors;
            bool linked = false;
            for (auto& x : bn)
                if (facets[x].dead && !linked) {
                    // border pointed at a now-dead facet across this ridge
                    auto shared = sorted_intersection(facets[x].verts, facets[border].verts);
                    if (shared == ridge) {
                        x = nid;
                        linked = true;
                    }
                }
            if (!linked) throw Error("hull_full_dim: border relink failed");
            facets.push_back(std::move(nf));
            fresh.push_back(nid);
            // inner ridges (those containing the apex) pair up fresh facets
            for (int w : ridge) {
                std::vector<int> key;
                for (int v : facets[nid].verts)
                    if (v != w) key.push_back(v);
                auto it = ridge_map.find(key);
                if (it == ridge_map.end()) {
                    ridge_map.emplace(std::move(key), std::make_pair(nid, false));
                } else {
                    if (it->second.second) throw Error("hull_full_dim: ridge shared three times");
                    it->second.second = true;
                    facets[nid].neighbors.push_back(it->second.first);
                    facets[it->second.first].neighbors.push_back(nid);
                }
            }
        }
        for (int nid : fresh)
            if (static_cast<int>(facets[nid].neighbors.size()) != d)
                throw Error("hull_full_dim: open horizon");

        // redistribute conflict points of the dead facets
        for (int g : visible) {
            for (int p : facets[g].outside) {
                if (p == apex) continue;
                for (int nid : fresh)
                    if (push_outside(facets[nid], p)) break;
            }
            facets[g].outside.clear();
        }
        for (int nid : fresh)
            if (!facets[nid].outside.empty()) pending.push_back(nid);
    }

    // d-volume from the simplicial boundary
    double vol = 0.0;
    Eigen::MatrixXd span(d, d);
    for (const auto& f : facets) {
        if (f.dead) continue;
        for (int j = 0; j < d; ++j) span.col(j) = pts.col(f.verts[j]) - interior;
        vol += std::abs(span.determinant());
    }
    double dfact = 1.0;
    for (int j = 2; j <= d; ++j) dfact *= j;
    vol /= dfact;

    // merge coplanar adjacent facets: union-find driven by the criterion
    // "all vertices of the neighbor lie on my plane"
    std::vector<int> live;
    std::vector<int> uf(facets.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
        if (facets[i].dead) continue;
        live.push_back(i);
        for (int h : facets[i].neighbors) {
            if (facets[h].dead) continue;
            bool coplanar = true;
            for (int v : facets[h].verts)
                if (std::abs(facets[i].dist(pts, v)) > 2 * tol) {
                    coplanar = false;
                    break;
                }
            if (coplanar) uf[find(i)] = find(h);
        }
    }

    std::map<int, std::vector<int>> groups;
    for (int i : live) groups[find(i)].push_back(i);

    std::vector<int> candidates;
    for (int i : live)
        for (int v : facets[i].verts) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    HullData out;
    out.volume = vol;
    for (auto& [root, members] : groups) {
        std::vector<int> gverts;
        for (int i : members)
            for (int v : facets[i].verts) gverts.push_back(v);
        std::sort(gverts.begin(), gverts.end());
        gverts.erase(std::unique(gverts.begin(), gverts.end()), gverts.end());

        FacetPlane plane;
        if (members.size() == 1) {
            plane.normal = facets[members[0]].normal;
            plane.offset = facets[members[0]].offset;
        } else {
            // refit the supporting hyperplane over the whole patch
            Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
            for (int v : gverts) c += pts.col(v);
            c /= static_cast<double>(gverts.size());
            Eigen::MatrixXd centered(d, gverts.size());
            for (std::size_t j = 0; j < gverts.size(); ++j)
                centered.col(static_cast<int>(j)) = pts.col(gverts[j]) - c;
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullU);
            Eigen::VectorXd nrm = svd.matrixU().col(d - 1);
            if (nrm.dot(facets[members[0]].normal) < 0) nrm = -nrm;
            plane.normal = nrm;
            plane.offset = nrm.dot(c);
        }
        // all candidate vertices on the plane belong to the facet
        for (int v : candidates)
            if (std::abs(plane.normal.dot(pts.col(v)) - plane.offset) <= 4 * tol)
                plane.vertex_ids.push_back(v);
        out.facets.push_back(std::move(plane));
    }

    // prune candidates that sit in the relative interior of a face: a true
    // vertex has active facet normals of full rank
    std::vector<char> keep(candidates.size(), 0);
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        const int v = candidates[ci];
        std::vector<int> active;
        for (int h = 0; h < static_cast<int>(out.facets.size()); ++h) {
            const auto& ids = out.facets[h].vertex_ids;
            if (std::binary_search(ids.begin(), ids.end(), v)) active.push_back(h);
        }
        if (static_cast<int>(active.size()) < d) continue;
        Eigen::MatrixXd normals(d, active.size());
        for (std::size_t j = 0; j < active.size(); ++j)
            normals.col(static_cast<int>(j)) = out.facets[active[j]].normal;
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(normals);
        qr.setThreshold(1e-8);
        if (qr.rank() == d) keep[ci] = 1;
    }
    for (std::size_t ci = 0; ci < candidates.size(); ++ci)
        if (keep[ci]) out.vertex_ids.push_back(candidates[ci]);
    if (out.vertex_ids.empty()) throw Error("hull_full_dim: vertex pruning removed everything");

    for (auto& f : out.facets) {
        std::vector<int> kept;
        for (int v : f.vertex_ids)
            if (std::binary_search(out.vertex_ids.begin(), out.vertex_ids.end(), v))
                kept.push_back(v);
        f.vertex_ids = std::move(kept);
    }

    // deterministic facet order: lexicographic by vertex ids
    std::sort(out.facets.begin(), out.facets.end(),
              [](const FacetPlane& a, const FacetPlane& b) { return a.vertex_ids < b.vertex_ids; });
    return out;
}

}  // namespace valgeo::detail
