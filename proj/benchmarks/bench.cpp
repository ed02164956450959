#include <benchmark/benchmark.h>

#include <cmath>

#include "javelin/cylinder.hpp"
#include "javelin/dynamics.hpp"
#include "javelin/linearization.hpp"
#include "javelin/oracle.hpp"
#include "javelin/shooting.hpp"

namespace {

// Right-hand side of the autonomous tip system at a generic state; this is
// the innermost kernel of every shot.
void BM_DynamicsRhs(benchmark::State& state) {
    const javelin::ASState x = {1.1, 0.9, 1.2, -0.3, 0.8, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::rhs(x));
    }
}
BENCHMARK(BM_DynamicsRhs);

void BM_LinearizationEigenvalues(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::eigenvalues());
    }
}
BENCHMARK(BM_LinearizationEigenvalues);

// One backward integration from the seed to the matching events, the unit of
// work inside the angle search.
void BM_SingleShot(benchmark::State& state) {
    javelin::ShootingConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::shoot(1.4, config));
    }
}
BENCHMARK(BM_SingleShot)->Unit(benchmark::kMillisecond);

// Full pipeline: angle search plus the seed-refinement cascade plus profile
// reconstruction.
void BM_FullSolve(benchmark::State& state) {
    javelin::ShootingConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::solve(config));
    }
}
BENCHMARK(BM_FullSolve)->Unit(benchmark::kMillisecond);

void BM_CylinderMode(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::cylinder_mode(2001));
    }
}
BENCHMARK(BM_CylinderMode)->Unit(benchmark::kMicrosecond);

void BM_OracleAssemble(benchmark::State& state) {
    const javelin::DiscreteBeam beam = javelin::uniform_beam(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::assemble(beam));
    }
}
BENCHMARK(BM_OracleAssemble)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

// The banded eigensolve dominates verification time and grows roughly
// cubically with the grid, so the sizes here stay modest.
void BM_OracleLowestFrequency(benchmark::State& state) {
    const javelin::DiscreteBeam beam = javelin::uniform_beam(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(javelin::lowest_frequency(beam));
    }
}
BENCHMARK(BM_OracleLowestFrequency)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
