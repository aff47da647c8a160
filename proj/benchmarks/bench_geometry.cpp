#include <benchmark/benchmark.h>

#include "valgeo/bodies.hpp"
#include "valgeo/membership.hpp"
#include "valgeo/minball.hpp"
#include "valgeo/radii.hpp"
#include "valgeo/transforms.hpp"
#include "valgeo/valuation.hpp"

using namespace valgeo;

static void BM_ConvexHull3D(benchmark::State& state) {
    RandomStream rng(1);
    const int m = static_cast<int>(state.range(0));
    Eigen::MatrixXd pts(3, m);
    for (int j = 0; j < m; ++j) pts.col(j) = rng.unit_vector(3) * rng.uniform(0.2, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(Polytope::from_points(pts));
}
BENCHMARK(BM_ConvexHull3D)->Arg(64)->Arg(256)->Arg(1024);

static void BM_ConvexHull4D(benchmark::State& state) {
    RandomStream rng(2);
    const int m = static_cast<int>(state.range(0));
    Eigen::MatrixXd pts(4, m);
    for (int j = 0; j < m; ++j) pts.col(j) = rng.unit_vector(4) * rng.uniform(0.2, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(Polytope::from_points(pts));
}
BENCHMARK(BM_ConvexHull4D)->Arg(64)->Arg(256);

static void BM_FaceLattice_Zonotope4D(benchmark::State& state) {
    RandomStream rng(3);
    for (auto _ : state) {
        state.PauseTiming();
        auto Z = bodies::random_zonotope(4, static_cast<int>(state.range(0)), rng);
        state.ResumeTiming();
        benchmark::DoNotOptimize(Z.lattice().total_faces());
    }
}
BENCHMARK(BM_FaceLattice_Zonotope4D)->Arg(5)->Arg(7);

static void BM_MixedVolume_CCB(benchmark::State& state) {
    const auto C = bodies::cube(3);
    const auto B = bodies::ball_approx(3);
    for (auto _ : state) benchmark::DoNotOptimize(mixed_volume({C, C, B}));
}
BENCHMARK(BM_MixedVolume_CCB);

static void BM_MinEnclosingBall(benchmark::State& state) {
    RandomStream rng(4);
    const int m = static_cast<int>(state.range(0));
    Eigen::MatrixXd pts(3, m);
    for (int j = 0; j < m; ++j) pts.col(j) = rng.normal_vector(3);
    for (auto _ : state) benchmark::DoNotOptimize(min_enclosing_ball(pts));
}
BENCHMARK(BM_MinEnclosingBall)->Arg(100)->Arg(1000);

static void BM_ChebyshevInradius(benchmark::State& state) {
    RandomStream rng(5);
    const auto P = bodies::random_polytope(3, 30, rng);
    for (auto _ : state) benchmark::DoNotOptimize(inradius(P).radius);
}
BENCHMARK(BM_ChebyshevInradius);

static void BM_ZonoidWitnessLP(benchmark::State& state) {
    const auto oct = bodies::cross_polytope(3);
    RandomStream rng(6);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zonoid_witness(oct, grid, rng));
}
BENCHMARK(BM_ZonoidWitnessLP)->Arg(120)->Arg(240);

static void BM_RadonTransform(benchmark::State& state) {
    RandomStream rng(7);
    const auto L0 = line_span(Eigen::Vector3d(0.6, 0.64, 0.48));
    GrassFunction f{3, 1, [L0](const Subspace& E) {
                        const double c = cos_angle(E, L0);
                        return c * c;
                    }};
    const auto F = sample_uniform(3, 2, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(radon(f, F, static_cast<int>(state.range(0)), rng));
}
BENCHMARK(BM_RadonTransform)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
