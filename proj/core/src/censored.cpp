#include "sra/censored.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sra/parallel.hpp"

namespace sra {

namespace {

// Observed prefix followed by the unobserved items in increasing id order;
// shuffling the tail yields one uniform completion.
std::vector<ItemId> completion_template(std::span<const ItemId> prefix, ItemId universe_size) {
    std::vector<std::uint8_t> observed(static_cast<std::size_t>(universe_size), 0);
    for (ItemId id : prefix) observed[static_cast<std::size_t>(id)] = 1;

    std::vector<ItemId> order(static_cast<std::size_t>(universe_size));
    std::copy(prefix.begin(), prefix.end(), order.begin());
    std::size_t k = prefix.size();
    for (ItemId id = 0; id < universe_size; ++id)
        if (!observed[static_cast<std::size_t>(id)]) order[k++] = id;
    return order;
}

}  // namespace

RankedList fill_out(const CensoredRankedList& list, rng::Stream& stream) {
    std::vector<ItemId> order = completion_template(list.prefix(), list.universe_size());
    const auto d = static_cast<std::size_t>(list.depth());
    stream.shuffle(std::span<ItemId>(order.data() + d, order.size() - d));
    return RankedList::from_order(std::move(order));
}

int recommended_max_depth(const ListSet& lists) {
    int deepest = 1;
    for (const auto& entry : lists.lists())
        deepest = std::max(deepest, static_cast<int>(entry.observed_depth()));
    return deepest;
}

DepthCurve sra_censored(const ListSet& lists, AgreementMetric metric,
                        const MonteCarloConfig& config, std::optional<int> max_depth) {
    if (!lists.any_censored()) return sra_complete(lists, metric, max_depth);

    if (config.permutations < 1)
        throw InvalidInputError("number of fill-out permutations must be at least 1");

    const ItemId P = lists.universe_size();
    const int depth = max_depth.value_or(P);
    if (depth < 1 || depth > P)
        throw InvalidInputError("max depth " + std::to_string(depth) + " outside 1.." +
                                std::to_string(P));

    const std::size_t L = lists.list_count();
    std::vector<std::vector<ItemId>> templates(L);
    std::vector<std::size_t> tail_start(L, 0);
    for (std::size_t l = 0; l < L; ++l) {
        const auto& entry = lists.lists()[l];
        if (!entry.censored()) continue;
        templates[l] = completion_template(entry.observed(), P);
        tail_start[l] = static_cast<std::size_t>(entry.observed_depth());
    }

    const auto B = static_cast<std::int64_t>(config.permutations);
    const auto D = static_cast<std::size_t>(depth);

    // Replicate b of list l always draws from the substream keyed by
    // (seed, l, b), and replicates are summed in fixed chunks, so the curve
    // is the same bytes no matter how the work is scheduled across threads.
    const std::int64_t chunk_count = (B + kReductionChunk - 1) / kReductionChunk;
    std::vector<std::vector<double>> chunk_sums(static_cast<std::size_t>(chunk_count));

    parallel_for(chunk_count, config.threads, [&](std::int64_t chunk) {
        std::vector<double> sum(D, 0.0);
        std::vector<double> curve(D);
        std::vector<std::vector<ItemId>> filled(templates);
        std::vector<std::span<const ItemId>> orders(L);
        for (std::size_t l = 0; l < L; ++l)
            orders[l] = templates[l].empty() ? lists.lists()[l].observed()
                                             : std::span<const ItemId>(filled[l]);
        detail::SraWorkspace ws;

        const std::int64_t lo = chunk * kReductionChunk;
        const std::int64_t hi = std::min(B, lo + kReductionChunk);
        for (std::int64_t b = lo; b < hi; ++b) {
            for (std::size_t l = 0; l < L; ++l) {
                if (templates[l].empty()) continue;
                std::copy(templates[l].begin() + static_cast<std::ptrdiff_t>(tail_start[l]),
                          templates[l].end(),
                          filled[l].begin() + static_cast<std::ptrdiff_t>(tail_start[l]));
                rng::Stream stream(rng::substream(config.seed.value, rng::kFillOut,
                                                  static_cast<std::uint64_t>(l),
                                                  static_cast<std::uint64_t>(b)));
                stream.shuffle(std::span<ItemId>(filled[l].data() + tail_start[l],
                                                 filled[l].size() - tail_start[l]));
            }
            detail::sra_curve_from_orders(orders, P, metric, depth, ws, curve);
            for (std::size_t i = 0; i < D; ++i) sum[i] += curve[i];
        }
        chunk_sums[static_cast<std::size_t>(chunk)] = std::move(sum);
    });

    DepthCurve curve;
    curve.values.assign(D, 0.0);
    for (const auto& sum : chunk_sums)
        for (std::size_t i = 0; i < D; ++i) curve.values[i] += sum[i];
    const double scale = 1.0 / static_cast<double>(B);
    for (double& v : curve.values) v *= scale;
    curve.validate();
    return curve;
}

}  // namespace sra
