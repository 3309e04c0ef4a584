#include <benchmark/benchmark.h>

#include <alemesh/alemesh.hpp>

using namespace alemesh;

namespace {

/// Icosphere at the given subdivision level, jittered so the clamp band is active.
TriMesh bench_mesh(int level) { return perturb(generate_icosphere(level), 0.02, 3); }

}  // namespace

static void BM_SpringForce(benchmark::State& state) {
    const auto mesh = bench_mesh(static_cast<int>(state.range(0)));
    const Positions x = mesh.positions();
    for (auto _ : state) benchmark::DoNotOptimize(spring_force(mesh, x, 0.4));
    state.counters["nodes"] = static_cast<double>(mesh.num_vertices());
}
BENCHMARK(BM_SpringForce)->DenseRange(2, 5);

static void BM_AngleForce(benchmark::State& state) {
    const auto mesh = bench_mesh(static_cast<int>(state.range(0)));
    const Positions x = mesh.positions();
    for (auto _ : state) benchmark::DoNotOptimize(angle_force(mesh, x, 70.0));
}
BENCHMARK(BM_AngleForce)->DenseRange(2, 5);

static void BM_StageJacobian(benchmark::State& state) {
    const auto mesh = bench_mesh(static_cast<int>(state.range(0)));
    const ForceModel forces{&mesh, ForceConfig{}};
    const auto sphere = make_sphere();
    const auto tab = radau_tableau(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_stage_jacobian(forces, mesh.positions(), sphere, 0.0, tab, 0.001));
    }
}
BENCHMARK(BM_StageJacobian)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_ProjectAll(benchmark::State& state) {
    const auto mesh = bench_mesh(static_cast<int>(state.range(0)));
    const auto surface = make_dumbbell();
    const Positions start = 0.3 * mesh.positions();
    for (auto _ : state) {
        Positions x = start;
        project_all(surface, x, 0.2);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_ProjectAll)->DenseRange(2, 5);

static void BM_SplittingStep(benchmark::State& state) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, static_cast<int>(state.range(0)));
    const ForceConfig forces{500.0, 0.4, 0.0, 85.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(splitting_step(mesh, mesh.positions(), 0.0, 0.01, surface, forces, 25));
    }
}
BENCHMARK(BM_SplittingStep)->Arg(642)->Arg(2562)->Unit(benchmark::kMillisecond);

static void BM_RadauStep(benchmark::State& state) {
    const auto surface = make_dumbbell();
    const auto mesh = generate_revolution_mesh(surface, 0.0, 642);
    const ForceModel forces{&mesh, ForceConfig{500.0, 0.4, 0.0, 85.0}};
    const auto tab = radau_tableau(3);
    const auto start = DAEState::initial(mesh.positions(), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(radau_step(start, forces, surface, tab, 0.001));
}
BENCHMARK(BM_RadauStep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
