#include <benchmark/benchmark.h>
static void BM_noop(benchmark::State& s){for(auto _ : s);}
BENCHMARK(BM_noop);
BENCHMARK_MAIN();
