#include <benchmark/benchmark.h>

#include <vector>

#include <sra/sra.hpp>

using namespace sra;

namespace {

ListSet random_lists(ItemId universe, int list_count, std::uint64_t key) {
    rng::Stream stream(key);
    std::vector<ListEntry> entries;
    entries.reserve(static_cast<std::size_t>(list_count));
    for (int l = 0; l < list_count; ++l)
        entries.emplace_back(RankedList::from_order(rng::random_permutation(universe, stream)));
    return ListSet::create(ItemUniverse(universe), std::move(entries));
}

ListSet censored_lists(ItemId universe, int list_count, int depth, std::uint64_t key) {
    rng::Stream stream(key);
    std::vector<ListEntry> entries;
    entries.reserve(static_cast<std::size_t>(list_count));
    for (int l = 0; l < list_count; ++l) {
        auto order = rng::random_permutation(universe, stream);
        order.resize(static_cast<std::size_t>(depth));
        entries.emplace_back(CensoredRankedList::from_prefix(std::move(order), universe));
    }
    return ListSet::create(ItemUniverse(universe), std::move(entries));
}

void BM_sra_complete(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    const int L = static_cast<int>(state.range(1));
    const auto lists = random_lists(P, L, 1);
    for (auto _ : state) {
        auto curve = sra_complete(lists);
        benchmark::DoNotOptimize(curve.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(P) * L);
}

void BM_sra_complete_mad(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    const int L = static_cast<int>(state.range(1));
    const auto lists = random_lists(P, L, 2);
    for (auto _ : state) {
        auto curve = sra_complete(lists, AgreementMetric::MedianAbsoluteDeviation);
        benchmark::DoNotOptimize(curve.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(P) * L);
}

void BM_sra_censored(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    const int depth = static_cast<int>(state.range(1));
    const int B = static_cast<int>(state.range(2));
    const auto lists = censored_lists(P, 5, depth, 3);
    MonteCarloConfig config;
    config.permutations = B;
    config.seed = RandomSeed{7};
    config.threads = 1;
    for (auto _ : state) {
        auto curve = sra_censored(lists, AgreementMetric::StandardDeviation, config);
        benchmark::DoNotOptimize(curve.values.data());
    }
    state.SetItemsProcessed(state.iterations() * B);
}

void BM_fill_out(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    rng::Stream setup(11);
    auto order = rng::random_permutation(P, setup);
    order.resize(static_cast<std::size_t>(P) / 10);
    const auto censored = CensoredRankedList::from_prefix(std::move(order), P);
    rng::Stream stream(12);
    for (auto _ : state) {
        auto filled = fill_out(censored, stream);
        benchmark::DoNotOptimize(filled.order().data());
    }
}

void BM_h0_band(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    const int B = static_cast<int>(state.range(1));
    const auto shape = random_lists(P, 4, 5);
    H0Config config;
    config.band_permutations = B;
    config.seed = RandomSeed{9};
    config.threads = 1;
    for (auto _ : state) {
        auto band = h0_band(shape, config);
        benchmark::DoNotOptimize(band.quantile_curves.data());
    }
}

void BM_average_overlap(benchmark::State& state) {
    const auto P = static_cast<ItemId>(state.range(0));
    const auto lists = random_lists(P, static_cast<int>(state.range(1)), 13);
    for (auto _ : state) {
        auto curve = average_overlap(lists);
        benchmark::DoNotOptimize(curve.values.data());
    }
}

}  // namespace

BENCHMARK(BM_sra_complete)->Args({100, 5})->Args({1000, 10})->Args({5000, 1000});
BENCHMARK(BM_sra_complete_mad)->Args({100, 5})->Args({1000, 10});
BENCHMARK(BM_sra_censored)->Args({200, 50, 100})->Args({1000, 100, 100});
BENCHMARK(BM_fill_out)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_h0_band)->Args({100, 100})->Args({1000, 400});
BENCHMARK(BM_average_overlap)->Args({100, 5})->Args({1000, 10});

BENCHMARK_MAIN();
