#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <sra/sra.hpp>

#include "naive.hpp"

using namespace sra;

namespace {

ListSet censored_pair(std::vector<ItemId> a, std::vector<ItemId> b, ItemId universe) {
    std::vector<ListEntry> entries;
    entries.emplace_back(CensoredRankedList::from_prefix(std::move(a), universe));
    entries.emplace_back(CensoredRankedList::from_prefix(std::move(b), universe));
    return ListSet::create(ItemUniverse(universe), std::move(entries));
}

}  // namespace

TEST_CASE("fill-out keeps the prefix and completes the universe") {
    const auto censored = CensoredRankedList::from_prefix({4, 1, 6}, 9);
    rng::Stream stream(21);
    for (int i = 0; i < 50; ++i) {
        const auto filled = fill_out(censored, stream);
        REQUIRE(filled.size() == 9);
        const auto order = filled.order();
        CHECK(order[0] == 4);
        CHECK(order[1] == 1);
        CHECK(order[2] == 6);
        std::set<ItemId> rest(order.begin() + 3, order.end());
        CHECK(rest == std::set<ItemId>{0, 2, 3, 5, 7, 8});
    }
}

TEST_CASE("fill-out tail orderings are uniform") {
    // 3 unobserved items -> 6 tail orders; chi-square on 6000 draws.
    const auto censored = CensoredRankedList::from_prefix({0}, 4);
    rng::Stream stream(22);
    std::map<std::vector<ItemId>, int> counts;
    constexpr int draws = 6000;
    for (int i = 0; i < draws; ++i) {
        const auto filled = fill_out(censored, stream);
        const auto order = filled.order();
        counts[std::vector<ItemId>(order.begin() + 1, order.end())]++;
    }
    REQUIRE(counts.size() == 6);
    const double expected = draws / 6.0;
    double chi2 = 0.0;
    for (const auto& [order, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
    CHECK(chi2 < 20.515);  // chi-square 0.999 quantile, 5 df
}

TEST_CASE("a fully observed set short-circuits to the exact curve") {
    rng::Stream stream(23);
    const auto lists = testref::random_complete(12, 3, stream);
    MonteCarloConfig config;
    config.permutations = 5;
    config.seed = RandomSeed{99};
    const auto mc = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    const auto exact = sra_complete(lists);
    CHECK(mc.values == exact.values);
}

TEST_CASE("one realization equals the manually filled curve") {
    auto lists = censored_pair({4, 1, 6}, {0, 2}, 9);
    MonteCarloConfig config;
    config.permutations = 1;
    config.seed = RandomSeed{31};
    const auto mc = sra_censored(lists, AgreementMetric::StandardDeviation, config);

    std::vector<ListEntry> filled;
    for (std::size_t l = 0; l < lists.list_count(); ++l) {
        rng::Stream stream(rng::substream(config.seed.value, rng::kFillOut,
                                          static_cast<std::uint64_t>(l), 0));
        filled.emplace_back(
            fill_out(CensoredRankedList::from_prefix(
                         {lists.list(l).observed().begin(), lists.list(l).observed().end()}, 9),
                     stream));
    }
    const auto exact = sra_complete(ListSet::create(lists.universe(), std::move(filled)));
    CHECK(mc.values == exact.values);
}

TEST_CASE("two realizations average exactly") {
    auto lists = censored_pair({4, 1, 6}, {0, 2}, 9);
    MonteCarloConfig config;
    config.seed = RandomSeed{32};

    std::vector<DepthCurve> singles;
    for (int b = 0; b < 2; ++b) {
        std::vector<ListEntry> filled;
        for (std::size_t l = 0; l < lists.list_count(); ++l) {
            rng::Stream stream(rng::substream(config.seed.value, rng::kFillOut,
                                              static_cast<std::uint64_t>(l),
                                              static_cast<std::uint64_t>(b)));
            filled.emplace_back(fill_out(
                CensoredRankedList::from_prefix(
                    {lists.list(l).observed().begin(), lists.list(l).observed().end()}, 9),
                stream));
        }
        singles.push_back(sra_complete(ListSet::create(lists.universe(), std::move(filled))));
    }

    config.permutations = 2;
    const auto mc = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    REQUIRE(mc.depth_count() == 9);
    for (std::size_t d = 0; d < 9; ++d)
        CHECK(mc.values[d] == (singles[0].values[d] + singles[1].values[d]) * 0.5);
}

TEST_CASE("seeded runs are reproducible and thread-count independent") {
    auto lists = censored_pair({4, 1, 6, 8}, {0, 2, 5}, 20);
    MonteCarloConfig config;
    config.permutations = 130;  // spans three reduction chunks
    config.seed = RandomSeed{33};

    config.threads = 1;
    const auto one = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    const auto again = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    CHECK(one.values == again.values);

    config.threads = 3;
    const auto three = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    CHECK(one.values == three.values);

    config.seed = RandomSeed{34};
    const auto other = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    CHECK(one.values != other.values);
}

TEST_CASE("agreement at observed depths reflects only random tail variation") {
    // Identical prefixes: observed ranks agree perfectly, so early depths are
    // near zero while depths past the censoring point pick up fill noise.
    auto lists = censored_pair({0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
                               {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 30);
    MonteCarloConfig config;
    config.permutations = 400;
    config.seed = RandomSeed{35};
    const auto curve = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    REQUIRE(curve.depth_count() == 30);
    for (int d = 1; d <= 10; ++d) CHECK(curve.at_depth(d) == 0.0);
    CHECK(curve.at_depth(30) > 3.0);
}

TEST_CASE("unobserved items draw uniform ranks over the censored range") {
    // Item 20 unobserved in a list censored at depth 10 of 30: its filled rank
    // is uniform on 11..30, so the variance should approach (20^2 - 1) / 12.
    const auto censored = CensoredRankedList::from_prefix(
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 30);
    rng::Stream stream(36);
    constexpr int draws = 4000;
    std::vector<double> ranks;
    ranks.reserve(draws);
    for (int i = 0; i < draws; ++i) {
        const auto filled = fill_out(censored, stream);
        const auto order = filled.order();
        const auto at = std::find(order.begin(), order.end(), ItemId{20});
        REQUIRE(at != order.end());
        ranks.push_back(static_cast<double>(at - order.begin()) + 1.0);
    }
    const double mean = std::accumulate(ranks.begin(), ranks.end(), 0.0) / draws;
    double var = 0.0;
    for (const double r : ranks) var += (r - mean) * (r - mean);
    var /= draws - 1;
    const double expected = (20.0 * 20.0 - 1.0) / 12.0;
    CHECK(std::abs(var - expected) / expected < 0.10);
    CHECK(std::abs(mean - 20.5) < 0.5);
}

TEST_CASE("monte carlo converges to the enumerated mean") {
    auto lists = censored_pair({0, 1}, {3, 0}, 5);
    const auto enumerated =
        testref::enumerate_censored(lists, AgreementMetric::StandardDeviation);
    MonteCarloConfig config;
    config.permutations = 20000;
    config.seed = RandomSeed{37};
    const auto mc = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    REQUIRE(mc.depth_count() == enumerated.mean.size());
    for (std::size_t d = 0; d < enumerated.mean.size(); ++d) {
        const double se = enumerated.sd[d] / std::sqrt(20000.0);
        CHECK(std::abs(mc.values[d] - enumerated.mean[d]) <= std::max(3.0 * se, 1e-9));
    }
}

TEST_CASE("mixed complete and censored lists are supported") {
    std::vector<ListEntry> entries;
    entries.emplace_back(RankedList::from_order({0, 1, 2, 3, 4}));
    entries.emplace_back(CensoredRankedList::from_prefix({4, 3}, 5));
    const auto lists = ListSet::create(ItemUniverse(5), std::move(entries));
    MonteCarloConfig config;
    config.permutations = 50;
    config.seed = RandomSeed{38};
    const auto curve = sra_censored(lists, AgreementMetric::StandardDeviation, config);
    CHECK(curve.depth_count() == 5);
    CHECK(curve.values.front() > 0.0);
}

TEST_CASE("deepest observed depth is the recommended cut") {
    auto lists = censored_pair({0, 1, 2}, {3, 0}, 9);
    CHECK(recommended_max_depth(lists) == 3);
    rng::Stream stream(39);
    CHECK(recommended_max_depth(testref::random_complete(6, 2, stream)) == 6);
}

TEST_CASE("monte carlo configuration is validated") {
    auto lists = censored_pair({0, 1}, {3, 0}, 5);
    MonteCarloConfig config;
    config.permutations = 0;
    CHECK_THROWS_AS(sra_censored(lists, AgreementMetric::StandardDeviation, config),
                    InvalidInputError);
    config.permutations = 10;
    CHECK_THROWS_AS(sra_censored(lists, AgreementMetric::StandardDeviation, config, 6),
                    InvalidInputError);
    CHECK_THROWS_AS(sra_censored(lists, AgreementMetric::StandardDeviation, config, 0),
                    InvalidInputError);
    CHECK(sra_censored(lists, AgreementMetric::StandardDeviation, config, 2).depth_count() == 2);
}

TEST_CASE("the MAD metric runs through the censored path") {
    auto lists = censored_pair({0, 1, 2}, {2, 1, 0}, 6);
    MonteCarloConfig config;
    config.permutations = 64;
    config.seed = RandomSeed{40};
    const auto curve =
        sra_censored(lists, AgreementMetric::MedianAbsoluteDeviation, config);
    CHECK(curve.depth_count() == 6);
    CHECK_NOTHROW(curve.validate());
}
