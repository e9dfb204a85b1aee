#include <benchmark/benchmark.h>

#include "sieveconst/chenweights.hpp"
#include "sieveconst/empirical.hpp"
#include "sieveconst/funineq.hpp"

using namespace sieveconst;

static void sieve_table_build(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(SieveFnTable::build(default_sieve_u_max, default_sieve_tol));
}
BENCHMARK(sieve_table_build)->Unit(benchmark::kMillisecond);

static void buchstab_table_build(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(BuchstabTable::build(default_buchstab_u_max, default_buchstab_step));
}
BENCHMARK(buchstab_table_build)->Unit(benchmark::kMillisecond);

static void psi1_row(benchmark::State& state)
{
    const auto& omega = default_buchstab_table();
    const BuchstabSettings settings;
    for (auto _ : state)
        benchmark::DoNotOptimize(psi1(2.6, 3.58, Level::Half, omega, settings).value);
}
BENCHMARK(psi1_row)->Unit(benchmark::kMillisecond);

static void psi2_row(benchmark::State& state)
{
    const auto& omega = default_buchstab_table();
    const BuchstabSettings settings;
    const auto row = RowParams::psi2(2.2, 4.54, 3.53, 2.90, 2.44);
    for (auto _ : state)
        benchmark::DoNotOptimize(psi2(row, omega, settings).value);
}
BENCHMARK(psi2_row)->Unit(benchmark::kMillisecond)->Iterations(1);

static void goldbach_weight_terms(benchmark::State& state)
{
    const auto& sieve = default_sieve_table();
    const auto& omega = default_buchstab_table();
    const auto params = WeightParams::goldbach_default();
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_F_terms(params, sieve, omega).combined);
}
BENCHMARK(goldbach_weight_terms)->Unit(benchmark::kMillisecond);

static void omega_table_1e7(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(OmegaTable::build(10'000'000).omega(9'999'991));
}
BENCHMARK(omega_table_1e7)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
