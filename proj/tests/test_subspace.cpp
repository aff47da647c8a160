#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "valgeo/errors.hpp"
#include "valgeo/random.hpp"
#include "valgeo/subspace.hpp"

using namespace valgeo;

namespace {

Eigen::VectorXd vec3(double x, double y, double z) {
    Eigen::VectorXd v(3);
    v << x, y, z;
    return v;
}

// Independent oracle: area of the projection of the unit square spanned by
// F's frame, via a shoelace formula over the projected corners.
double project_square_area(const Subspace& E, const Subspace& F) {
    std::vector<Eigen::Vector2d> pts;
    const Eigen::VectorXd f1 = F.frame().col(0), f2 = F.frame().col(1);
    for (const auto& corner : {Eigen::VectorXd(Eigen::VectorXd::Zero(f1.size())), f1, f2,
                               Eigen::VectorXd(f1 + f2)}) {
        const Eigen::VectorXd c = E.coords(corner);
        pts.emplace_back(c[0], c[1]);
    }
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (const auto& p : pts) c += p / 4.0;
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a.y() - c.y(), a.x() - c.x()) <
               std::atan2(b.y() - c.y(), b.x() - c.x());
    });
    double area = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& a = pts[k];
        const auto& b = pts[(k + 1) % pts.size()];
        area += a.x() * b.y() - b.x() * a.y();
    }
    return std::abs(area) / 2.0;
}

Eigen::MatrixXd rotation3() {
    Eigen::MatrixXd r1 = Eigen::MatrixXd::Identity(3, 3);
    r1(0, 0) = std::cos(0.7);
    r1(0, 1) = -std::sin(0.7);
    r1(1, 0) = std::sin(0.7);
    r1(1, 1) = std::cos(0.7);
    Eigen::MatrixXd r2 = Eigen::MatrixXd::Identity(3, 3);
    r2(1, 1) = std::cos(1.1);
    r2(1, 2) = -std::sin(1.1);
    r2(2, 1) = std::sin(1.1);
    r2(2, 2) = std::cos(1.1);
    return r2 * r1;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("orthonormalize basics") {
    auto E = orthonormalize({vec3(1, 0, 0), vec3(0, 1, 0)});
    CHECK(E.dim() == 2);
    CHECK(E.contains_vector(vec3(1, 0, 0)));
    CHECK(E.contains_vector(vec3(0, 1, 0)));

    auto F = orthonormalize({vec3(1, 1, 0), vec3(1, 0, 0)});
    // spans the xy-plane: projector equality
    CHECK(Subspace::projector_distance(E, F) < 1e-12);

    CHECK_THROWS_AS(orthonormalize({vec3(1, 1, 0), vec3(2, 2, 0)}), RankDeficient);

    Eigen::VectorXd short_v(2);
    short_v << 1, 0;
    CHECK_THROWS_AS(orthonormalize(std::vector<Eigen::VectorXd>{vec3(1, 0, 0), short_v}),
                    DimensionMismatch);
}

TEST_CASE("cos_angle closed forms") {
    auto E = orthonormalize({vec3(1, 0, 0), vec3(0, 1, 0)});
    CHECK(cos_angle(E, E) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd e1(2), diag(2);
    e1 << 1, 0;
    diag << 1, 1;
    CHECK(cos_angle(line_span(e1), line_span(diag)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    auto A = coordinate_subspace(4, {0, 1});
    auto B = coordinate_subspace(4, {2, 3});
    CHECK(cos_angle(A, B) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(cos_angle(A, coordinate_subspace(4, {0})), DimensionMismatch);
}

TEST_CASE("cos_angle agrees with the projected-square oracle") {
    RandomStream rng(42);
    for (int t = 0; t < 50; ++t) {
        auto E = sample_uniform(4, 2, rng);
        auto F = sample_uniform(4, 2, rng);
        const double expected = project_square_area(E, F);
        CHECK(std::abs(cos_angle(E, F) - expected) < 1e-9);
    }
}

TEST_CASE("cos_angle symmetry and range") {
    RandomStream rng(7);
    for (int t = 0; t < 100; ++t) {
        auto E = sample_uniform(5, 2, rng);
        auto F = sample_uniform(5, 2, rng);
        const double c1 = cos_angle(E, F);
        const double c2 = cos_angle(F, E);
        CHECK(c1 == doctest::Approx(c2).epsilon(1e-13));
        CHECK(c1 >= 0.0);
        CHECK(c1 <= 1.0);
    }
    // equality of spans iff cos == 1
    auto E = sample_uniform(4, 2, rng);
    CHECK(cos_angle(E, E) == doctest::Approx(1.0));
}

TEST_CASE("frame invariance under in-subspace rotation") {
    RandomStream rng(11);
    for (int t = 0; t < 20; ++t) {
        auto E = sample_uniform(4, 2, rng);
        auto F = sample_uniform(4, 2, rng);
        // random rotation of E's frame within E
        const double a = rng.uniform(0, 2 * M_PI);
        Eigen::MatrixXd rot(2, 2);
        rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        auto E2 = orthonormalize_columns((E.frame() * rot).eval());
        CHECK(std::abs(cos_angle(E, F) - cos_angle(E2, F)) < 1e-10);
    }
}

TEST_CASE("perp basics and involution") {
    auto L = coordinate_subspace(3, {0});
    auto Lp = perp(L);
    CHECK(Lp.dim() == 2);
    CHECK(Subspace::projector_distance(Lp, coordinate_subspace(3, {1, 2})) < 1e-12);

    RandomStream rng(5);
    for (int t = 0; t < 100; ++t) {
        auto E = sample_uniform(4, 2, rng);
        CHECK(Subspace::projector_distance(perp(perp(E)), E) < 1e-9);
    }
}

TEST_CASE("perp duality of cos_angle") {
    RandomStream rng(17);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        auto E = sample_uniform(4, 2, rng);
        auto F = sample_uniform(4, 2, rng);
        worst = std::max(worst, std::abs(cos_angle(perp(E), perp(F)) - cos_angle(E, F)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("sample_uniform moments and determinism") {
    auto F0 = line_span(vec3(0.3, -0.5, 0.81));
    RandomStream rng(123);
    double sum = 0.0;
    const int N = 100000;
    for (int t = 0; t < N; ++t) {
        auto E = sample_uniform(3, 1, rng);
        const double c = cos_angle(E, F0);
        sum += c * c;
    }
    // E[u1^2] = 1/n for a uniform unit vector
    CHECK(std::abs(sum / N - 1.0 / 3.0) < 0.01);

    RandomStream r1(99), r2(99);
    auto A = sample_uniform(4, 2, r1);
    auto B = sample_uniform(4, 2, r2);
    CHECK(Subspace::projector_distance(A, B) == 0.0);
}

TEST_CASE("sample_uniform rotation invariance (KS)") {
    auto F0 = line_span(vec3(0.2, 0.9, -0.1));
    const Eigen::MatrixXd rot = rotation3();
    RandomStream rng(31);
    const int N = 100000;
    std::vector<double> plain, rotated;
    plain.reserve(N);
    rotated.reserve(N);
    for (int t = 0; t < N; ++t) {
        auto E = sample_uniform(3, 1, rng);
        plain.push_back(cos_angle(E, F0));
        auto ER = orthonormalize_columns((rot * E.frame()).eval());
        rotated.push_back(cos_angle(ER, F0));
    }
    CHECK(ks_distance(plain, rotated) < 0.02);
}

TEST_CASE("sample_incident containment") {
    RandomStream rng(3);
    auto F = line_span(vec3(1, 0, 0));
    for (int t = 0; t < 20; ++t) {
        auto E = sample_incident(F, 2, rng);
        CHECK(E.dim() == 2);
        CHECK(E.contains_subspace(F, 1e-12));
    }
    auto plane = coordinate_subspace(3, {0, 1});
    for (int t = 0; t < 20; ++t) {
        auto L = sample_incident(plane, 1, rng);
        CHECK(L.dim() == 1);
        CHECK(plane.contains_subspace(L, 1e-12));
    }
    CHECK(Subspace::projector_distance(sample_incident(plane, 2, rng), plane) == 0.0);
}

TEST_CASE("double fibration identity (two-route sampling)") {
    // integral of f(E,F) over incident pairs: sample F in G_2 then E in F,
    // versus E in G_1 then F containing E
    auto L0 = line_span(vec3(0.6, -0.3, 0.74));
    auto P0 = orthonormalize({vec3(1, 1, 0), vec3(0, 1, 1)});
    auto f = [&](const Subspace& E, const Subspace& F) {
        const double a = cos_angle(E, L0);
        const double b = cos_angle(F, P0);
        return a * a * b * b;
    };
    const int N = 100000;
    RandomStream rng(77);
    double s1 = 0, s1sq = 0, s2 = 0, s2sq = 0;
    for (int t = 0; t < N; ++t) {
        auto F = sample_uniform(3, 2, rng);
        auto E = sample_incident(F, 1, rng);
        const double v = f(E, F);
        s1 += v;
        s1sq += v * v;
    }
    for (int t = 0; t < N; ++t) {
        auto E = sample_uniform(3, 1, rng);
        auto F = sample_incident(E, 2, rng);
        const double v = f(E, F);
        s2 += v;
        s2sq += v * v;
    }
    const double m1 = s1 / N, m2 = s2 / N;
    const double se1 = std::sqrt((s1sq / N - m1 * m1) / N);
    const double se2 = std::sqrt((s2sq / N - m2 * m2) / N);
    const double sigma = std::sqrt(se1 * se1 + se2 * se2);
    CHECK(std::abs(m1 - m2) < 3.0 * sigma + 1e-12);
}

TEST_CASE("sample dimension guards") {
    RandomStream rng(1);
    CHECK_THROWS_AS(sample_uniform(3, 0, rng), BadDimension);
    CHECK_THROWS_AS(sample_uniform(3, 3, rng), BadDimension);
}
