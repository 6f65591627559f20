#include <benchmark/benchmark.h>

#include "persist/asymptotics.hpp"
#include "persist/fredholm.hpp"
#include "persist/glauber_mc.hpp"
#include "persist/persistence.hpp"
#include "persist/resolvent_ode.hpp"

namespace {

persist::KernelSpec sech_spec(double xi)
{
    persist::KernelSpec spec;
    spec.xi = xi;
    return spec;
}

void bm_fredholm_det(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto spec = sech_spec(0.75);
    for (auto _ : state)
        benchmark::DoNotOptimize(persist::fredholm_det(spec, 0.0, 5.0, n));
}
BENCHMARK(bm_fredholm_det)->Arg(100)->Arg(200)->Arg(400);

void bm_eigenvalues(benchmark::State& state)
{
    const auto spec = sech_spec(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(persist::eigenvalues(spec, 0.0, 5.0, 200, 8));
}
BENCHMARK(bm_eigenvalues);

void bm_integrate_H(benchmark::State& state)
{
    persist::OdeConfig cfg;
    cfg.xi = 0.75;
    cfg.x_max = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const auto traj = persist::integrate_H(cfg);
        benchmark::DoNotOptimize(traj.H.back());
    }
}
BENCHMARK(bm_integrate_H)->Arg(10)->Arg(30);

void bm_distribution(benchmark::State& state)
{
    persist::PersistenceQuery q;
    q.ell = 6.0;
    q.m = 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(persist::distribution(q).p_total);
}
BENCHMARK(bm_distribution);

void bm_logdet_model(benchmark::State& state)
{
    const double phi = persist::phi_of_xi(0.75, 0.5);
    double ell = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            persist::logdet_expansion_resummed(ell, 0.5, phi));
        ell = ell < 20.0 ? ell + 0.125 : 2.0;
    }
}
BENCHMARK(bm_logdet_model);

void bm_glauber_sweep(benchmark::State& state)
{
    persist::SimConfig cfg;
    cfg.chain_length = 20000;
    cfg.t1 = 50.0;
    cfg.replicas = 4;
    cfg.threads = 1;
    for (auto _ : state) {
        const auto res = persist::simulate_checkpoints(cfg, {2.0, 4.0});
        benchmark::DoNotOptimize(res.checkpoints.back().p_total);
    }
}
BENCHMARK(bm_glauber_sweep);

} // namespace

BENCHMARK_MAIN();
