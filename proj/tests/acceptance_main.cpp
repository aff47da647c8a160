// Acceptance suite: one criterion per numbered block, one PASS/FAIL line
// each, nonzero exit if anything fails. Tolerances are fixed here, not
// configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "valgeo/bodies.hpp"
#include "valgeo/counterexample.hpp"
#include "valgeo/io.hpp"
#include "valgeo/membership.hpp"
#include "valgeo/radii.hpp"
#include "valgeo/transforms.hpp"
#include "valgeo/valuation.hpp"

using namespace valgeo;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

Eigen::VectorXd vec3(double x, double y, double z) {
    Eigen::VectorXd v(3);
    v << x, y, z;
    return v;
}

// independent 2-d hull area oracle (monotone chain + shoelace)
double hull_area_2d(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> h(2 * pts.size());
    int k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    for (int i = static_cast<int>(pts.size()) - 2, t = k + 1; i >= 0; i--) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        area += a.x() * b.y() - b.x() * a.y();
    }
    return std::abs(area) / 2.0;
}

void criterion_1_exact_geometry() {
    bool ok = true;
    std::string detail;
    const auto C = bodies::cube(3);
    const auto O = bodies::cross_polytope(3);
    const auto& lc = C.lattice();
    const auto& lo = O.lattice();
    ok &= lc.faces_by_dim[0].size() == 8 && lc.faces_by_dim[1].size() == 12 &&
          lc.faces_by_dim[2].size() == 6;
    ok &= lo.faces_by_dim[0].size() == 6 && lo.faces_by_dim[1].size() == 12 &&
          lo.faces_by_dim[2].size() == 8;

    const auto diag = line_span(vec3(1, 1, 1));
    const double seg = projection_volume(C, diag);
    ok &= std::abs(seg - std::sqrt(3.0)) < 1e-9;

    const auto hexplane = perp(diag);
    const double hex = projection_volume(C, hexplane);
    ok &= std::abs(hex - std::sqrt(3.0)) < 1e-9;

    std::vector<Eigen::Vector2d> proj;
    for (int j = 0; j < C.vertex_count(); ++j) {
        const Eigen::VectorXd c = hexplane.coords(C.vertex(j));
        proj.emplace_back(c[0], c[1]);
    }
    const double oracle = hull_area_2d(proj);
    ok &= std::abs(hex - oracle) < 1e-9;
    detail = "face counts (8,12,6)/(6,12,8); cube|diag = " + io::format_sig(seg) +
             ", hexagon area = " + io::format_sig(hex) + " (hull oracle " +
             io::format_sig(oracle) + ")";
    report(1, ok, detail);
}

void criterion_2_mixed_volume() {
    bool ok = true;
    const auto C = bodies::cube(3);
    const auto B = bodies::ball_approx(3);
    const double vccc = mixed_volume({C, C, C});
    ok &= std::abs(vccc - 1.0) < 1e-9;
    const double vccb = mixed_volume({C, C, B});
    ok &= std::abs(vccb - 2.0) <= 0.02 * 2.0;
    const double vcbb = mixed_volume({C, B, B});
    ok &= std::abs(vcbb - M_PI) <= 0.02 * M_PI;

    // polynomiality at off-grid lambda
    RandomStream rng(1001);
    const auto K = bodies::random_polytope(3, 9, rng);
    const auto L = bodies::random_zonotope(3, 4, rng);
    double mv[4];
    for (int j = 0; j <= 3; ++j) {
        std::vector<Polytope> args;
        for (int k = 0; k < j; ++k) args.push_back(K);
        for (int k = j; k < 3; ++k) args.push_back(L);
        mv[j] = mixed_volume(args);
    }
    const double offgrid[][2] = {{2.5, 1.3}, {0.7, 2.2}, {1.9, 0.4}, {3.3, 1.1}, {0.2, 0.9}};
    double worst = 0.0;
    for (const auto& ab : offgrid) {
        double poly = 0.0;
        for (int j = 0; j <= 3; ++j)
            poly += binomial(3, j) * std::pow(ab[0], j) * std::pow(ab[1], 3 - j) * mv[j];
        const double direct = volume(minkowski_sum(K.scaled(ab[0]), L.scaled(ab[1])));
        worst = std::max(worst, std::abs(poly - direct));
    }
    ok &= worst < 1e-7;
    report(2, ok,
           "V(C,C,C) = " + io::format_sig(vccc) + "; V(C,C,B) = " + io::format_sig(vccb) +
               "; V(C,B,B) = " + io::format_sig(vcbb) + "; off-grid poly residual " +
               io::format_sig(worst));
}

void criterion_3_area_measure() {
    bool ok = true;
    const auto C = bodies::cube(3);
    const auto s2 = area_measure(C, 2);
    ok &= s2.size() == 6;
    for (const auto& p : s2)
        ok &= std::abs(p.density - 1.0) < 1e-12 && std::abs(p.region_measure - 1.0) < 1e-12;

    const auto s1 = area_measure(C, 1);
    const double total = area_measure_total(s1);
    ok &= std::abs(total - 3.0 * M_PI) < 1e-6;

    const auto B = bodies::ball_approx(3);
    RandomStream rng(33);
    const double ib = integrate_against_area_measure(
        C, 1, [&](const Eigen::VectorXd& u) { return B.support(u); }, rng);
    const double viamixed = mixed_volume({C, B, B});
    ok &= std::abs(ib / 3.0 - viamixed) <= 0.02 * M_PI;
    report(3, ok,
           "S2(cube) six unit atoms; S1 total = " + io::format_sig(total) +
               "; (1/3) int h_B dS1 = " + io::format_sig(ib / 3.0) + " vs mixed route " +
               io::format_sig(viamixed));
}

void criterion_4_klain() {
    bool ok = true;
    RandomStream rng(44);
    double worst_vi = 0.0;
    for (int i = 1; i <= 2; ++i) {
        ValuationSpec vi;
        vi.ambient_dim = 3;
        vi.terms.push_back(IntrinsicTerm{i, 1.0});
        for (int t = 0; t < 50; ++t) {
            const auto E = sample_uniform(3, i, rng);
            worst_vi = std::max(worst_vi, std::abs(klain(vi, E) - 1.0));
        }
    }
    ok &= worst_vi < 1e-9;

    ValuationSpec phi;
    phi.ambient_dim = 3;
    MixedVolumeTerm t;
    t.degree = 1;
    t.bodies = {bodies::cube(3), bodies::cube(3)};
    phi.terms.push_back(t);
    const double at_e1 = klain(phi, line_span(vec3(1, 0, 0)));
    ok &= std::abs(at_e1 - 1.0 / 3.0) < 1e-8;

    double worst_box = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto E = sample_uniform(3, 1, rng);
        const auto box = bodies::box_in_subspace(E, 0.8);
        worst_box = std::max(worst_box, std::abs(evaluate(phi, box) - klain(phi, E) * 0.8));
    }
    ok &= worst_box < 1e-8;
    report(4, ok,
           "Klain(V_i) = 1 within " + io::format_sig(worst_vi) + "; Klain V(.,C,C)(e1) = " +
               io::format_sig(at_e1) + "; box consistency residual " + io::format_sig(worst_box));
}

void criterion_5_transforms() {
    bool ok = true;
    RandomStream rng(55);

    // R(1) = 1 exactly
    GrassFunction one{3, 1, [](const Subspace&) { return 1.0; }};
    const auto r1 = radon(one, sample_uniform(3, 2, rng), 100, rng);
    ok &= r1.value == 1.0;

    // cosine of the constant on G_1(R^2)
    GrassFunction one2{2, 1, [](const Subspace&) { return 1.0; }};
    Eigen::VectorXd e1(2);
    e1 << 1, 0;
    const auto c = cosine_transform(one2, line_span(e1), 100000, rng);
    ok &= std::abs(c.value - 2.0 / M_PI) <= 3.0 * c.stderr_;

    // adjointness
    const auto L0 = line_span(vec3(0.3, 0.8, -0.52));
    const auto P0 = orthonormalize({vec3(1, 1, 0), vec3(0, 1, 1)});
    GrassFunction f{3, 1, [L0](const Subspace& E) {
                        const double v = cos_angle(E, L0);
                        return v * v;
                    }};
    GrassFunction g{3, 2, [P0](const Subspace& F) {
                        const double v = cos_angle(F, P0);
                        return v * v;
                    }};
    const auto adj = check_adjoint(f, g, 100000, rng);
    ok &= std::abs(adj.diff) <= 3.0 * adj.sigma;

    // perp duality
    const auto dual = check_cos_perp_duality(f, sample_uniform(3, 1, rng), 100000, rng);
    ok &= std::abs(dual.diff) <= 3.0 * dual.sigma;

    // Radon composition in R^4
    const auto ref = line_span(Eigen::Vector4d(0.2, -0.4, 0.7, 0.5));
    GrassFunction f4{4, 1, [ref](const Subspace& E) {
                         const double v = cos_angle(E, ref);
                         return v * v;
                     }};
    const auto F = sample_uniform(4, 3, rng);
    const auto direct = radon(f4, F, 100000, rng);
    double s = 0.0, ssq = 0.0;
    const int N = 100000;
    for (int k = 0; k < N; ++k) {
        const auto Pm = sample_incident(F, 2, rng);
        const auto Lm = sample_incident(Pm, 1, rng);
        const double v = f4.eval(Lm);
        s += v;
        ssq += v * v;
    }
    const double mean = s / N;
    const double se = std::sqrt(std::max(ssq / N - mean * mean, 0.0) / N);
    const double sig = std::sqrt(se * se + direct.stderr_ * direct.stderr_);
    ok &= std::abs(direct.value - mean) <= 3.0 * sig;

    report(5, ok,
           "R(1) = 1; C(1) on G_1(R^2) = " + io::format_sig(c.value) + " (2/pi within 3s); adjoint diff " +
               io::format_sig(adj.diff) + "; perp-duality diff " + io::format_sig(dual.diff) +
               "; composition diff " + io::format_sig(direct.value - mean));
}

void criterion_6_membership() {
    bool ok = true;
    RandomStream rng(66);
    std::string detail;

    const auto cube = bodies::cube(3);
    const auto cert_cube = decide_G(cube, 1, rng);
    ok &= cert_cube.member && cert_cube.projection_residual < 1e-6;

    const auto cube4 = bodies::cube(4);
    const auto cert_c4 = decide_G(cube4, 2, rng);
    ok &= cert_c4.member && cert_c4.projection_residual < 1e-6;

    for (int trial = 0; trial < 2; ++trial) {
        const auto Z = bodies::random_zonotope(3, 5 + trial, rng);
        for (int i = 1; i <= 2; ++i) {
            const auto cz = decide_G(Z, i, rng);
            ok &= cz.member && cz.projection_residual < 1e-6;
        }
    }

    const auto oct = bodies::cross_polytope(3);
    const auto cert_oct = decide_G(oct, 1, rng);
    ok &= !cert_oct.member && cert_oct.violating_faces.size() == 8;

    const auto x4 = bodies::cross_polytope(4);
    for (int i = 1; i <= 2; ++i) {
        const auto cx = decide_G(x4, i, rng);
        ok &= !cx.member && !cx.violating_faces.empty();
    }
    ok &= decide_G(x4, 3, rng).member;
    ok &= decide_G(oct, 2, rng).member;

    // area-measure mass equals the transported representing-measure mass
    const auto mu = representing_measure(cube, 1, rng);
    double mass = 0.0;
    for (const auto& [E, w] : mu.atoms) mass += w;
    const double s1_total = area_measure_total(area_measure(cube, 1));
    const double predicted = 3.0 * bodies::unit_ball_volume(2) / binomial(3, 1) * mass;
    ok &= std::abs(s1_total - predicted) < 1e-6;

    report(6, ok,
           "cube/4-cube/zonotopes member (residual < 1e-6); octahedron 8 violations, "
           "4-cross non-member for i <= 2, i = n-1 member; S1 mass " +
               io::format_sig(s1_total) + " = " + io::format_sig(predicted));
}

void criterion_7_witness() {
    bool ok = true;
    RandomStream rng(77);
    const auto oct = bodies::cross_polytope(3);
    const auto w = zonoid_witness(oct, 240, rng);
    ok &= w.has_value();
    double evaluate_shifted = 0.0, audit_shifted_min = 0.0, objective = 0.0;
    if (w) {
        objective = w->objective;
        ok &= w->objective < -1e-6;
        ok &= w->min_cosine >= -1e-9;
        double t = 0.0;
        const auto shifted = shift_to_strict(w->spec(3), oct, w->audit_grid_size, &t);
        const auto audit = bodies::sphere_grid(3, w->audit_grid_size);
        audit_shifted_min = 1e300;
        for (const auto& u : audit)
            audit_shifted_min = std::min(audit_shifted_min, klain(shifted, line_span(u)));
        evaluate_shifted = evaluate(shifted, oct);
        ok &= audit_shifted_min > 0.0;
        ok &= evaluate_shifted < 0.0;
    }
    std::string reason;
    const auto wc = zonoid_witness(bodies::cube(3), 240, rng, -1e-6, &reason);
    ok &= !wc.has_value();
    report(7, ok,
           "octahedron objective " + io::format_sig(objective) + ", shifted Klain min " +
               io::format_sig(audit_shifted_min) + " > 0, evaluate " +
               io::format_sig(evaluate_shifted) + " < 0; cube NoneFound");
}

void criterion_8_counterexample() {
    bool ok = true;
    RandomStream rng(88);
    const auto rep = build_counterexample(3, 240, rng, nullptr, 10000, 10000);
    ok &= rep.components.size() == 4;
    ok &= rep.components[1] < 0.0;
    ok &= rep.component_sum_residual < 1e-8;
    ok &= rep.min_psi_observed >= 0.0;
    ok &= rep.positivity_trials == 10000;
    ok &= rep.klain_audit_min > 0.0;
    ok &= minkowski_nondecomposition_check(rep);
    report(8, ok,
           "component_1 = " + io::format_sig(rep.components[1]) + " < 0; sum residual " +
               io::format_sig(rep.component_sum_residual) + "; sampled positivity min " +
               io::format_sig(rep.min_psi_observed) + " over 10000 bodies x scales; c sqrt2 > 2c");
}

void criterion_9_radii() {
    bool ok = true;
    const auto C = bodies::cube(3);
    RandomStream rng(99);
    const auto reps = successive_radii(C, 10000, rng);
    ok &= std::abs(reps[0].R_upper - 0.5) < 1e-3;
    ok &= std::abs(reps[0].r_lower - std::sqrt(3.0) / 2.0) < 1e-3;
    ok &= std::abs(reps[2].R_upper - circumradius(C).radius) < 1e-12;
    ok &= std::abs(reps[2].r_lower - inradius(C).radius) < 1e-12;

    const auto chk_cube = perelman_check(reps, 2);
    ok &= chk_cube.pass;

    const auto B = bodies::ball_approx(3);
    RandomStream rngb(991);
    const auto repb = successive_radii(B, 3000, rngb);
    bool ball_pass = true;
    for (int i = 1; i <= 3; ++i) ball_pass &= perelman_check(repb, i).pass;
    ok &= ball_pass;

    report(9, ok,
           "cube R1 = " + io::format_sig(reps[0].R_upper) + " (1/2), r1 = " +
               io::format_sig(reps[0].r_lower) + " (sqrt3/2); i = n exact; Perelman PASS on cube (ratio " +
               io::format_sig(chk_cube.ratio) + ") and ball");
}

void criterion_10_radon_projection() {
    bool ok = true;
    RandomStream rng(110);
    const auto B = bodies::ball_approx(3);
    const auto C = bodies::cube(3);
    std::string parts;
    for (int i = 1; i <= 2; ++i) {
        const auto E = sample_uniform(3, i, rng);
        const auto cb = radon_projection_check(B, E, rng, 50000);
        ok &= std::abs(cb.diff) <= 3.0 * cb.sigma + 0.02 * std::abs(cb.lhs);
        const auto cc = radon_projection_check(C, E, rng, 50000);
        ok &= std::abs(cc.diff) <= 3.0 * cc.sigma + 0.02 * std::abs(cc.lhs);
        parts += " i=" + std::to_string(i) + ": ball diff " + io::format_sig(cb.diff) +
                 ", cube diff " + io::format_sig(cc.diff) + ";";
    }
    report(10, ok, "two-route agreement within 3 sigma + 2%:" + parts);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1_exact_geometry();
    criterion_2_mixed_volume();
    criterion_3_area_measure();
    criterion_4_klain();
    criterion_5_transforms();
    criterion_6_membership();
    criterion_7_witness();
    criterion_8_counterexample();
    criterion_9_radii();
    criterion_10_radon_projection();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/10 criteria passed in %.1f s\n", 10 - failures, dt);
    return failures == 0 ? 0 : 1;
}
