#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sra/types.hpp"

namespace sra {

/// Spread of the ranks one item received across the L lists: the sample
/// standard deviation sqrt(sum (r_i - mean)^2 / (L-1)), or the median
/// absolute deviation median(|r_i - median(r)|). Needs at least two ranks.
double item_agreement(std::span<const double> ranks,
                      AgreementMetric metric = AgreementMetric::StandardDeviation);

/// S_d: every item ranked <= d in at least one list, sorted by id.
/// Requires complete lists and 1 <= depth <= P.
std::vector<ItemId> cumulative_item_set(const ListSet& lists, int depth);

/// Sequential rank agreement for fully observed lists: at each depth d the
/// pooled per-item agreement over S_d. For the SD metric this is
/// sqrt(sum_{p in S_d} (L-1) A(p)^2 / ((L-1)|S_d|)); the MAD variant pools by
/// root-mean-square of the per-item MAD values. Depths run 1..max_depth
/// (default P). Identical lists give the all-zero curve.
DepthCurve sra_complete(const ListSet& lists,
                        AgreementMetric metric = AgreementMetric::StandardDeviation,
                        std::optional<int> max_depth = std::nullopt);

namespace detail {

/// Shared kernel: curve over complete orders (one span per list, each a full
/// permutation of 0..P-1). Buffers live in the workspace so Monte-Carlo
/// drivers can reuse allocations across realizations.
struct SraWorkspace {
    std::vector<std::int64_t> rank_sum;
    std::vector<std::int64_t> rank_sumsq;
    std::vector<std::int64_t> numer;      // per-item integer numerator
    std::vector<std::int32_t> rank_matrix; // MAD path: L ranks per item
    std::vector<double> scratch;
    std::vector<std::uint8_t> seen;
};

void sra_curve_from_orders(std::span<const std::span<const ItemId>> orders, ItemId universe_size,
                           AgreementMetric metric, int max_depth, SraWorkspace& ws,
                           std::span<double> out);

}  // namespace detail
}  // namespace sra
