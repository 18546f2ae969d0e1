#pragma once

#include <optional>

#include "sra/agreement.hpp"
#include "sra/rng.hpp"
#include "sra/types.hpp"

namespace sra {

/// Monte-Carlo settings for the censored-list estimator.
struct MonteCarloConfig {
    int permutations = 1000;  // B, the number of random completions
    RandomSeed seed{};
    int threads = 0;          // 0 = default_thread_count()
};

/// Completes a censored list: the observed prefix keeps ranks 1..d_l and the
/// unobserved items take ranks d_l+1..P in uniformly random order drawn from
/// `stream`.
RankedList fill_out(const CensoredRankedList& list, rng::Stream& stream);

/// Sequential rank agreement for list sets with censored entries: every
/// censored list is independently filled out B times, the complete-list curve
/// is computed for each realization, and the pointwise mean of the B curves
/// is returned. Deterministic given (lists, metric, B, seed), for any thread
/// count. With no genuinely censored entry this reduces exactly to
/// sra_complete.
DepthCurve sra_censored(const ListSet& lists, AgreementMetric metric,
                        const MonteCarloConfig& config,
                        std::optional<int> max_depth = std::nullopt);

/// Largest depth at which at least one list still provides an observed item:
/// max(d_1, ..., d_L), with complete lists contributing P. Curve values
/// beyond this depth are an artefact of the random completion and should be
/// flagged as extrapolated.
int recommended_max_depth(const ListSet& lists);

}  // namespace sra
