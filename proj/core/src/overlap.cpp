#include "sra/overlap.hpp"

#include <cstdint>
#include <vector>

namespace sra {

namespace {

void require_complete(const ListSet& lists) {
    for (const auto& entry : lists.lists())
        if (entry.censored())
            throw UnsupportedInputError("overlap is defined for fully observed lists only");
}

int checked_depth(const ListSet& lists, int depth) {
    const ItemId universe = lists.universe_size();
    if (depth < 1 || depth > universe)
        throw InvalidInputError("depth " + std::to_string(depth) + " outside 1.." +
                                std::to_string(universe));
    return depth;
}

// Walks the lists depth by depth, counting how many items have been seen in
// all L of them so far; that count at depth d is |top-d intersection|.
class IntersectionCounter {
public:
    explicit IntersectionCounter(const ListSet& lists)
        : lists_(lists), seen_count_(static_cast<std::size_t>(lists.universe_size()), 0) {}

    // Advances from depth d-1 to d and returns O(d).
    double advance(int d) {
        const auto needed = static_cast<std::uint32_t>(lists_.list_count());
        for (const auto& entry : lists_.lists()) {
            const auto id = static_cast<std::size_t>(entry.observed()[static_cast<std::size_t>(d - 1)]);
            if (++seen_count_[id] == needed) ++in_all_;
        }
        return static_cast<double>(in_all_) / static_cast<double>(d);
    }

private:
    const ListSet& lists_;
    std::vector<std::uint32_t> seen_count_;
    std::int64_t in_all_ = 0;
};

}  // namespace

double overlap_at(const ListSet& lists, int depth) {
    require_complete(lists);
    checked_depth(lists, depth);
    IntersectionCounter counter(lists);
    double o = 0.0;
    for (int d = 1; d <= depth; ++d) o = counter.advance(d);
    return o;
}

DepthCurve average_overlap(const ListSet& lists, std::optional<int> max_depth) {
    require_complete(lists);
    const int depth = checked_depth(lists, max_depth.value_or(lists.universe_size()));

    IntersectionCounter counter(lists);
    DepthCurve curve;
    curve.values.resize(static_cast<std::size_t>(depth));
    double running = 0.0;
    for (int d = 1; d <= depth; ++d) {
        running += counter.advance(d);
        curve.values[static_cast<std::size_t>(d - 1)] = running / static_cast<double>(d);
    }
    return curve;
}

}  // namespace sra
