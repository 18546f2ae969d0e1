#pragma once

#include <optional>

#include "sra/types.hpp"

namespace sra {

/// O(d): the fraction of the top-d ranks filled by items present in the
/// top d of every list, |intersection of the L top-d sets| / d. Defined for
/// complete lists only.
double overlap_at(const ListSet& lists, int depth);

/// AO(d) = (1/d) * sum_{i=1..d} O(i), the running mean of the overlaps.
/// Values lie in [0,1]; identical lists give the constant-1 curve.
DepthCurve average_overlap(const ListSet& lists, std::optional<int> max_depth = std::nullopt);

}  // namespace sra
