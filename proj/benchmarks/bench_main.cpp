#include <random>

#include <benchmark/benchmark.h>

#include "seqrec/corpus.hpp"
#include "seqrec/recsolve.hpp"
#include "seqrec/strongderive.hpp"
#include "seqrec/syncverify.hpp"

using namespace seqrec;

static void BM_SolveExact(benchmark::State& state) {
	const auto n = static_cast<std::size_t>(state.range(0));
	std::mt19937_64 rng(1);
	LinearSystem sys(n);
	for (std::size_t i = 0; i < 2 * n; ++i) {
		std::vector<Rational> row;
		for (std::size_t j = 0; j < n; ++j) {
			row.emplace_back(static_cast<long>(rng() % 19) - 9);
		}
		sys.add_row(row, Rational(static_cast<long>(rng() % 19) - 9));
	}
	for (auto _ : state) {
		benchmark::DoNotOptimize(solve_exact(sys));
	}
}
BENCHMARK(BM_SolveExact)->Arg(4)->Arg(8)->Arg(16);

static void BM_FactorComplexityTable(benchmark::State& state) {
	for (auto _ : state) {
		benchmark::DoNotOptimize(tm_factor_complexity_table(static_cast<std::uint64_t>(state.range(0))));
	}
}
BENCHMARK(BM_FactorComplexityTable)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_FitFactorComplexity(benchmark::State& state) {
	const TmFactorComplexityOracle f;
	for (auto _ : state) {
		benchmark::DoNotOptimize(fit(f, 2, 3, 4, 0, 8, 0, {0, 40}));
	}
}
BENCHMARK(BM_FitFactorComplexity)->Unit(benchmark::kMillisecond);

static void BM_VerifyScheme(benchmark::State& state) {
	const TmFactorComplexityOracle f;
	const auto scheme = *fit(f, 2, 3, 4, 0, 8, 0, {0, 40}).scheme;
	const auto jobs = static_cast<unsigned>(state.range(0));
	for (auto _ : state) {
		benchmark::DoNotOptimize(verify(f, scheme, {0, 5000}, jobs));
	}
}
BENCHMARK(BM_VerifyScheme)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SearchG(benchmark::State& state) {
	const GOracle g(2, 3);
	for (auto _ : state) {
		benchmark::DoNotOptimize(search(g, 2, 3, 8));
	}
}
BENCHMARK(BM_SearchG)->Unit(benchmark::kMillisecond);

static void BM_VerifySync(benchmark::State& state) {
	const auto machine = build_figk(3);
	const GOracle g(3, 3);
	for (auto _ : state) {
		benchmark::DoNotOptimize(verify_sync(machine, g, 10000, 4));
	}
}
BENCHMARK(BM_VerifySync)->Unit(benchmark::kMillisecond);

static void BM_VerifyMapping(benchmark::State& state) {
	const auto m = derive_mapping(thue_morse_dfao(), 1, 2);
	const ThueMorseOracle tmo;
	for (auto _ : state) {
		benchmark::DoNotOptimize(verify_mapping(tmo, m, 100000));
	}
}
BENCHMARK(BM_VerifyMapping)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
