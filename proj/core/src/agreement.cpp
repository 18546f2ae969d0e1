#include "sra/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace sra {

namespace {

double median_inplace(std::span<double> values) {
    const std::size_t n = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    const double upper = *mid;
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

void require_all_complete(const ListSet& lists, const char* op) {
    for (const auto& entry : lists.lists())
        if (entry.censored())
            throw InvalidInputError(std::string(op) +
                                    " requires fully observed lists; censored input must go "
                                    "through the censored-list estimator");
}

int resolve_max_depth(const ListSet& lists, std::optional<int> max_depth) {
    const int universe = lists.universe_size();
    const int depth = max_depth.value_or(universe);
    if (depth < 1 || depth > universe)
        throw InvalidInputError("max depth " + std::to_string(depth) + " outside 1.." +
                                std::to_string(universe));
    return depth;
}

}  // namespace

double item_agreement(std::span<const double> ranks, AgreementMetric metric) {
    const std::size_t n = ranks.size();
    if (n < 2) throw InvalidInputError("item agreement needs ranks from at least two lists");

    if (metric == AgreementMetric::StandardDeviation) {
        double mean = 0.0;
        for (double r : ranks) mean += r;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double r : ranks) {
            const double d = r - mean;
            ss += d * d;
        }
        return std::sqrt(ss / static_cast<double>(n - 1));
    }

    std::vector<double> buf(ranks.begin(), ranks.end());
    const double med = median_inplace(buf);
    for (double& v : buf) v = std::abs(v - med);
    return median_inplace(buf);
}

std::vector<ItemId> cumulative_item_set(const ListSet& lists, int depth) {
    require_all_complete(lists, "cumulative item set");
    const ItemId universe = lists.universe_size();
    if (depth < 1 || depth > universe)
        throw InvalidInputError("depth " + std::to_string(depth) + " outside 1.." +
                                std::to_string(universe));

    std::vector<std::uint8_t> seen(static_cast<std::size_t>(universe), 0);
    std::vector<ItemId> result;
    for (const auto& entry : lists.lists()) {
        const auto observed = entry.observed();
        for (int r = 0; r < depth; ++r) {
            const ItemId id = observed[static_cast<std::size_t>(r)];
            if (!seen[static_cast<std::size_t>(id)]) {
                seen[static_cast<std::size_t>(id)] = 1;
                result.push_back(id);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace detail {

namespace {

// Integer numerators keep every per-item agreement an exact rational, so the
// running sum over S_d is independent of the order items are discovered in.
// SD variant: N(p) = L*sum(r^2) - (sum r)^2, value = N(p) / (L*(L-1)).
// MAD variant: N(p) = (4*MAD)^2, value = N(p) / 16 (medians of integer ranks
// live on a 1/4 grid, so 4*MAD is integral).
void fill_sd_numerators(std::span<const std::span<const ItemId>> orders, ItemId universe_size,
                        SraWorkspace& ws) {
    const auto P = static_cast<std::size_t>(universe_size);
    const auto L = static_cast<std::int64_t>(orders.size());
    ws.rank_sum.assign(P, 0);
    ws.rank_sumsq.assign(P, 0);
    for (const auto& order : orders) {
        for (std::size_t r = 0; r < P; ++r) {
            const auto id = static_cast<std::size_t>(order[r]);
            const auto rank = static_cast<std::int64_t>(r) + 1;
            ws.rank_sum[id] += rank;
            ws.rank_sumsq[id] += rank * rank;
        }
    }
    ws.numer.resize(P);
    for (std::size_t p = 0; p < P; ++p)
        ws.numer[p] = L * ws.rank_sumsq[p] - ws.rank_sum[p] * ws.rank_sum[p];
}

void fill_mad_numerators(std::span<const std::span<const ItemId>> orders, ItemId universe_size,
                         SraWorkspace& ws) {
    const auto P = static_cast<std::size_t>(universe_size);
    const std::size_t L = orders.size();
    ws.rank_matrix.assign(P * L, 0);
    for (std::size_t l = 0; l < L; ++l) {
        const auto& order = orders[l];
        for (std::size_t r = 0; r < P; ++r)
            ws.rank_matrix[static_cast<std::size_t>(order[r]) * L + l] =
                static_cast<std::int32_t>(r) + 1;
    }
    ws.numer.resize(P);
    ws.scratch.resize(L);
    for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t l = 0; l < L; ++l)
            ws.scratch[l] = static_cast<double>(ws.rank_matrix[p * L + l]);
        std::span<double> buf(ws.scratch.data(), L);
        const double med = median_inplace(buf);
        for (double& v : buf) v = std::abs(v - med);
        const double mad = median_inplace(buf);
        ws.numer[p] = std::llround(4.0 * mad);
        ws.numer[p] *= ws.numer[p];
    }
}

}  // namespace

void sra_curve_from_orders(std::span<const std::span<const ItemId>> orders, ItemId universe_size,
                           AgreementMetric metric, int max_depth, SraWorkspace& ws,
                           std::span<double> out) {
    const std::size_t L = orders.size();
    double denom;
    if (metric == AgreementMetric::StandardDeviation) {
        fill_sd_numerators(orders, universe_size, ws);
        denom = static_cast<double>(L) * static_cast<double>(L - 1);
    } else {
        fill_mad_numerators(orders, universe_size, ws);
        denom = 16.0;
    }

    ws.seen.assign(static_cast<std::size_t>(universe_size), 0);
    unsigned __int128 running = 0;
    std::size_t in_set = 0;
    for (int d = 1; d <= max_depth; ++d) {
        for (const auto& order : orders) {
            const auto id = static_cast<std::size_t>(order[static_cast<std::size_t>(d - 1)]);
            if (!ws.seen[id]) {
                ws.seen[id] = 1;
                running += static_cast<unsigned __int128>(
                    static_cast<unsigned long long>(ws.numer[id]));
                ++in_set;
            }
        }
        out[static_cast<std::size_t>(d - 1)] =
            std::sqrt(static_cast<double>(running) / (denom * static_cast<double>(in_set)));
    }
}

}  // namespace detail

DepthCurve sra_complete(const ListSet& lists, AgreementMetric metric,
                        std::optional<int> max_depth) {
    require_all_complete(lists, "sequential rank agreement over complete lists");
    const int depth = resolve_max_depth(lists, max_depth);

    std::vector<std::span<const ItemId>> orders;
    orders.reserve(lists.list_count());
    for (const auto& entry : lists.lists()) orders.push_back(entry.observed());

    detail::SraWorkspace ws;
    DepthCurve curve;
    curve.values.resize(static_cast<std::size_t>(depth));
    detail::sra_curve_from_orders(orders, lists.universe_size(), metric, depth, ws,
                                  curve.values);
    return curve;
}

}  // namespace sra
