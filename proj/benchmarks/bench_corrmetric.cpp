#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "corrmetric/distance.hpp"
#include "corrmetric/rng.hpp"
#include "corrmetric/types.hpp"
#include "corrmetric/verify.hpp"
#include "corrmetric/vp_tree.hpp"

using namespace corrmetric;

namespace {

Sample normal_sample(SplitMix64& rng, std::size_t dim, std::string id) {
    Sample s;
    s.id = std::move(id);
    s.values.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) s.values.push_back(rng.next_normal());
    return s;
}

// Tight clusters around a handful of random directions: the regime where
// metric pruning actually pays, as opposed to isotropic data where every
// strategy degrades to a linear scan.
std::vector<Sample> clustered_corpus(std::size_t n, std::size_t dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    constexpr std::size_t kClusters = 16;
    std::vector<std::vector<double>> bases(kClusters, std::vector<double>(dim));
    for (auto& base : bases) {
        for (double& v : base) v = rng.next_normal();
    }
    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& base = bases[i % kClusters];
        std::vector<double> point(dim);
        for (std::size_t j = 0; j < dim; ++j) point[j] = base[j] + 0.02 * rng.next_normal();
        out.push_back(Sample{std::move(point), std::to_string(i)});
    }
    return out;
}

void BM_distance(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(1);
    const Sample x = normal_sample(rng, dim, "x");
    const Sample y = normal_sample(rng, dim, "y");
    for (auto _ : state) {
        benchmark::DoNotOptimize(abs_corr_distance(x, y));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_distance)->Arg(64)->Arg(1024);

void BM_distance_unit(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(2);
    const CenteredUnit x = center_and_normalize(normal_sample(rng, dim, "x"));
    const CenteredUnit y = center_and_normalize(normal_sample(rng, dim, "y"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(abs_corr_distance_unit(x, y));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_distance_unit)->Arg(64)->Arg(1024);

void BM_index_build(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto corpus = clustered_corpus(n, 16, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(QmIndex::build(corpus));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_index_build)->Arg(1000)->Arg(4000);

void BM_knn(benchmark::State& state) {
    const Strategy strategy = static_cast<Strategy>(state.range(0));
    const auto corpus = clustered_corpus(4000, 16, 4);
    IndexConfig cfg;
    cfg.strategy = strategy;
    const QmIndex index = QmIndex::build(corpus, cfg);
    SplitMix64 rng(5);
    std::vector<CenteredUnit> queries;
    for (int i = 0; i < 64; ++i) {
        queries.push_back(center_and_normalize(normal_sample(rng, 16, "q")));
    }
    std::size_t at = 0;
    std::size_t evaluations = 0;
    std::size_t answered = 0;
    for (auto _ : state) {
        const QueryResult r = index.knn(queries[at], 10);
        benchmark::DoNotOptimize(r.neighbors.data());
        evaluations += r.stats.distance_evaluations;
        ++answered;
        at = (at + 1) % queries.size();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
    if (answered > 0) {
        state.counters["evals_per_query"] =
            static_cast<double>(evaluations) / static_cast<double>(answered);
    }
}
BENCHMARK(BM_knn)
    ->Arg(static_cast<int>(Strategy::RelaxedK))
    ->Arg(static_cast<int>(Strategy::ProjectiveAngle))
    ->Arg(static_cast<int>(Strategy::Brute));

void BM_sweep_grid(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_grid(0.05));
    }
}
BENCHMARK(BM_sweep_grid);

void BM_sweep_random(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_random(100000, 5, 0));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 100000);
}
BENCHMARK(BM_sweep_random);

}  // namespace

BENCHMARK_MAIN();
