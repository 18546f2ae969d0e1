#include "sra/nullref.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sra/parallel.hpp"

namespace sra {

std::string_view hypothesis_name(BandHypothesis hypothesis) noexcept {
    switch (hypothesis) {
        case BandHypothesis::H0Independent: return "independent";
        case BandHypothesis::ReplicateSupplied: return "replicates";
    }
    return "independent";
}

std::optional<BandHypothesis> hypothesis_from_name(std::string_view name) noexcept {
    if (name == "independent") return BandHypothesis::H0Independent;
    if (name == "replicates") return BandHypothesis::ReplicateSupplied;
    return std::nullopt;
}

void ReferenceBand::validate() const {
    if (quantile_levels.empty()) throw InvalidInputError("reference band has no quantile levels");
    if (quantile_levels.size() != quantile_curves.size())
        throw InvalidInputError("reference band level/curve count mismatch");
    for (std::size_t i = 0; i < quantile_levels.size(); ++i) {
        const double q = quantile_levels[i];
        if (!(q > 0.0 && q < 1.0))
            throw InvalidInputError("quantile level " + std::to_string(q) + " outside (0,1)");
        if (i > 0 && quantile_levels[i - 1] >= q)
            throw InvalidInputError("quantile levels must be strictly increasing");
        if (quantile_curves[i].size() != depth_count())
            throw InvalidInputError("reference band curves have differing lengths");
    }
    if (depth_count() == 0) throw InvalidInputError("reference band is empty");
    if (b_used < 1) throw InvalidInputError("reference band built from no curves");
    if (flagged_from &&
        (*flagged_from < 1 || *flagged_from > static_cast<int>(depth_count())))
        throw InvalidInputError("flagged depth outside the band's range");
    for (std::size_t d = 0; d < depth_count(); ++d)
        for (std::size_t i = 1; i < quantile_curves.size(); ++i)
            if (quantile_curves[i][d] < quantile_curves[i - 1][d])
                throw InvalidInputError("reference band quantile curves out of order");
}

namespace {

// Nearest-rank quantile: with the B values sorted ascending, level q picks the
// ceil(q*B)-th value (1-based), clamped to the ends.
double nearest_rank(std::span<const double> sorted, double q) {
    const auto B = static_cast<double>(sorted.size());
    auto k = static_cast<std::int64_t>(std::ceil(q * B));
    k = std::clamp<std::int64_t>(k, 1, sorted.size());
    return sorted[static_cast<std::size_t>(k - 1)];
}

ReferenceBand band_from_curves(const std::vector<DepthCurve>& curves,
                               std::vector<double> quantile_levels, BandHypothesis hypothesis) {
    if (curves.empty()) throw InvalidInputError("cannot build a band from zero curves");
    const std::size_t D = curves.front().depth_count();
    for (const auto& curve : curves)
        if (curve.depth_count() != D)
            throw InvalidInputError("band curves must all share one depth range");
    if (D == 0) throw InvalidInputError("band curves are empty");

    ReferenceBand band;
    band.quantile_levels = std::move(quantile_levels);
    band.b_used = static_cast<int>(curves.size());
    band.hypothesis = hypothesis;
    band.quantile_curves.assign(band.quantile_levels.size(), std::vector<double>(D));

    std::vector<double> column(curves.size());
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t b = 0; b < curves.size(); ++b) column[b] = curves[b].values[d];
        std::sort(column.begin(), column.end());
        for (std::size_t i = 0; i < band.quantile_levels.size(); ++i)
            band.quantile_curves[i][d] = nearest_rank(column, band.quantile_levels[i]);
    }
    band.validate();
    return band;
}

}  // namespace

std::vector<DepthCurve> h0_curves(const ListSet& shape, const H0Config& config) {
    if (config.band_permutations < 1)
        throw InvalidInputError("number of reference curves must be at least 1");
    if (config.fill_permutations < 1)
        throw InvalidInputError("number of fill-out permutations must be at least 1");

    const ItemId P = shape.universe_size();
    const std::size_t L = shape.list_count();
    const int depth = config.max_depth.value_or(P);
    if (depth < 1 || depth > P)
        throw InvalidInputError("max depth " + std::to_string(depth) + " outside 1.." +
                                std::to_string(P));

    std::vector<ItemId> censor_depths(L);
    bool any_censored = false;
    for (std::size_t l = 0; l < L; ++l) {
        censor_depths[l] = shape.lists()[l].observed_depth();
        if (shape.lists()[l].censored()) any_censored = true;
    }

    const auto B = static_cast<std::int64_t>(config.band_permutations);
    std::vector<DepthCurve> curves(static_cast<std::size_t>(B));

    parallel_for(B, config.threads, [&](std::int64_t b) {
        std::vector<std::vector<ItemId>> perms(L);
        std::vector<ListEntry> entries;
        entries.reserve(L);
        for (std::size_t l = 0; l < L; ++l) {
            rng::Stream stream(rng::substream(config.seed.value, rng::kNullPermutation,
                                              static_cast<std::uint64_t>(l),
                                              static_cast<std::uint64_t>(b)));
            perms[l] = rng::random_permutation(P, stream);
            if (shape.lists()[l].censored()) {
                perms[l].resize(static_cast<std::size_t>(censor_depths[l]));
                entries.emplace_back(CensoredRankedList::from_prefix(std::move(perms[l]), P));
            } else {
                entries.emplace_back(RankedList::from_order(std::move(perms[l])));
            }
        }
        ListSet null_set = ListSet::create(ItemUniverse(P), std::move(entries));
        if (any_censored) {
            MonteCarloConfig fill;
            fill.permutations = config.fill_permutations;
            fill.seed.value = rng::substream(config.seed.value, rng::kNullFill,
                                             static_cast<std::uint64_t>(b));
            fill.threads = 1;
            curves[static_cast<std::size_t>(b)] =
                sra_censored(null_set, config.metric, fill, depth);
        } else {
            curves[static_cast<std::size_t>(b)] = sra_complete(null_set, config.metric, depth);
        }
    });
    return curves;
}

ReferenceBand h0_band(const ListSet& shape, const H0Config& config,
                      std::vector<double> quantile_levels) {
    ReferenceBand band = band_from_curves(h0_curves(shape, config), std::move(quantile_levels),
                                          BandHypothesis::H0Independent);
    if (shape.any_censored()) {
        const int deepest = recommended_max_depth(shape);
        if (static_cast<int>(band.depth_count()) > deepest) band.flagged_from = deepest;
    }
    return band;
}

ReferenceBand band_from_replicates(const std::vector<DepthCurve>& replicates,
                                   std::vector<double> quantile_levels) {
    return band_from_curves(replicates, std::move(quantile_levels),
                            BandHypothesis::ReplicateSupplied);
}

DepthCurve pointwise_pvalues(const DepthCurve& observed,
                             const std::vector<DepthCurve>& null_curves) {
    if (null_curves.empty())
        throw InvalidInputError("p-values need at least one reference curve");
    const std::size_t D = observed.depth_count();
    if (D == 0) throw InvalidInputError("observed curve is empty");
    for (const auto& curve : null_curves)
        if (curve.depth_count() < D)
            throw InvalidInputError("reference curves are shorter than the observed curve");

    const auto B = static_cast<double>(null_curves.size());
    DepthCurve pvals;
    pvals.values.resize(D);
    for (std::size_t d = 0; d < D; ++d) {
        std::int64_t at_most = 0;
        for (const auto& curve : null_curves)
            if (curve.values[d] <= observed.values[d]) ++at_most;
        pvals.values[d] = (1.0 + static_cast<double>(at_most)) / (B + 1.0);
    }
    return pvals;
}

}  // namespace sra
