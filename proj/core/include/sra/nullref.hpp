#pragma once

#include <optional>
#include <vector>

#include "sra/censored.hpp"
#include "sra/rng.hpp"
#include "sra/types.hpp"

namespace sra {

/// Where a reference band's curves came from.
enum class BandHypothesis {
    H0Independent,      // independent uniformly permuted lists
    ReplicateSupplied,  // externally produced replicate curves
};

std::string_view hypothesis_name(BandHypothesis hypothesis) noexcept;
std::optional<BandHypothesis> hypothesis_from_name(std::string_view name) noexcept;

/// Pointwise quantile envelope of B agreement curves.
struct ReferenceBand {
    std::vector<double> quantile_levels;               // sorted, each in (0,1)
    std::vector<std::vector<double>> quantile_curves;  // one curve per level
    int b_used = 0;
    BandHypothesis hypothesis = BandHypothesis::H0Independent;
    std::optional<int> flagged_from;  // depths beyond this are extrapolated

    std::size_t depth_count() const noexcept {
        return quantile_curves.empty() ? 0 : quantile_curves.front().size();
    }
    void validate() const;

    friend bool operator==(const ReferenceBand&, const ReferenceBand&) = default;
};

/// Settings for the independent-permutations reference distribution.
struct H0Config {
    int band_permutations = 400;  // number of null curves (B)
    int fill_permutations = 50;   // fill-outs inside each censored null curve
    RandomSeed seed{};
    AgreementMetric metric = AgreementMetric::StandardDeviation;
    std::optional<int> max_depth;
    int threads = 0;
};

/// The B null curves themselves: for each b, L independent uniform
/// permutations of the universe, censored at the input's depths where the
/// input list is censored, then run through the matching agreement
/// estimator. Deterministic given the seed; curve b depends only on
/// (seed, b), so the schedule is reproducible piecewise.
std::vector<DepthCurve> h0_curves(const ListSet& shape, const H0Config& config);

/// Pointwise empirical quantiles (nearest-rank) of the B H0 curves.
ReferenceBand h0_band(const ListSet& shape, const H0Config& config,
                      std::vector<double> quantile_levels = {0.025, 0.5, 0.975});

/// Quantile envelope of externally supplied replicate curves (the
/// rankings-from-permuted-outcomes reference); curves must share one length.
ReferenceBand band_from_replicates(const std::vector<DepthCurve>& replicates,
                                   std::vector<double> quantile_levels = {0.025, 0.5, 0.975});

/// p(d) = (1 + #{b : null_b(d) <= observed(d)}) / (B + 1). Small values mean
/// the observed lists agree more strongly than the reference distribution.
DepthCurve pointwise_pvalues(const DepthCurve& observed,
                             const std::vector<DepthCurve>& null_curves);

}  // namespace sra
