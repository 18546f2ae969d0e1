#include "sra/types.hpp"

#include <cmath>
#include <unordered_set>

namespace sra {

namespace {

std::string describe_id(ItemId id) { return "item id " + std::to_string(id); }

}  // namespace

std::string_view metric_name(AgreementMetric metric) noexcept {
    switch (metric) {
        case AgreementMetric::StandardDeviation: return "sd";
        case AgreementMetric::MedianAbsoluteDeviation: return "mad";
    }
    return "sd";
}

std::optional<AgreementMetric> metric_from_name(std::string_view name) noexcept {
    if (name == "sd") return AgreementMetric::StandardDeviation;
    if (name == "mad") return AgreementMetric::MedianAbsoluteDeviation;
    return std::nullopt;
}

ItemUniverse::ItemUniverse(ItemId size) : size_(size) {
    if (size < 1) throw InvalidInputError("item universe must contain at least one item");
}

ItemUniverse::ItemUniverse(ItemId size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
    if (size < 1) throw InvalidInputError("item universe must contain at least one item");
    if (labels_.size() != static_cast<std::size_t>(size))
        throw InvalidInputError("expected exactly " + std::to_string(size) +
                                " labels, got " + std::to_string(labels_.size()));
    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels_) {
        if (label.empty()) continue;  // unlabeled id
        if (!seen.insert(label).second)
            throw InvalidInputError("duplicate item label \"" + label + "\"");
    }
}

const std::string& ItemUniverse::label(ItemId id) const {
    static const std::string empty;
    if (id < 0 || id >= size_) throw InvalidInputError(describe_id(id) + " out of range");
    if (labels_.empty()) return empty;
    return labels_[static_cast<std::size_t>(id)];
}

std::optional<ItemId> ItemUniverse::find(std::string_view label) const {
    if (label.empty()) return std::nullopt;
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<ItemId>(i);
    return std::nullopt;
}

RankedList RankedList::from_order(std::vector<ItemId> order) {
    const auto size = static_cast<ItemId>(order.size());
    if (size < 1) throw InvalidInputError("ranked list must not be empty");
    std::vector<std::uint8_t> seen(order.size(), 0);
    for (ItemId id : order) {
        if (id < 0 || id >= size)
            throw InvalidInputError("ranked list is not a permutation: " + describe_id(id) +
                                    " out of range 0.." + std::to_string(size - 1));
        if (seen[static_cast<std::size_t>(id)]++)
            throw InvalidInputError("ranked list is not a permutation: " + describe_id(id) +
                                    " appears more than once");
    }
    return RankedList(std::move(order));
}

CensoredRankedList CensoredRankedList::from_prefix(std::vector<ItemId> prefix,
                                                   ItemId universe_size) {
    if (universe_size < 1) throw InvalidInputError("universe size must be positive");
    if (prefix.empty()) throw InvalidInputError("censored list must observe at least one rank");
    if (prefix.size() > static_cast<std::size_t>(universe_size))
        throw InvalidInputError("censored list observes more items than the universe holds");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(universe_size), 0);
    for (ItemId id : prefix) {
        if (id < 0 || id >= universe_size)
            throw InvalidInputError(describe_id(id) + " out of range 0.." +
                                    std::to_string(universe_size - 1));
        if (seen[static_cast<std::size_t>(id)]++)
            throw InvalidInputError(describe_id(id) + " appears more than once in a list");
    }
    return CensoredRankedList(std::move(prefix), universe_size);
}

ListEntry::ListEntry(RankedList list)
    : items_(list.order()), universe_size_(list.size()), declared_censored_(false) {}

ListEntry::ListEntry(CensoredRankedList list)
    : items_(list.prefix()),
      universe_size_(list.universe_size()),
      declared_censored_(true) {}

ListSet ListSet::create(ItemUniverse universe, std::vector<ListEntry> lists) {
    if (lists.size() < 2) throw InvalidInputError("a list set needs at least two lists");
    for (std::size_t l = 0; l < lists.size(); ++l) {
        if (lists[l].universe_size() != universe.size())
            throw InvalidInputError("list " + std::to_string(l + 1) + " ranks " +
                                    std::to_string(lists[l].universe_size()) +
                                    " items but the universe holds " +
                                    std::to_string(universe.size()));
    }
    return ListSet(std::move(universe), std::move(lists));
}

bool ListSet::all_complete() const noexcept {
    for (const auto& entry : lists_)
        if (entry.censored()) return false;
    return true;
}

double DepthCurve::at_depth(int d) const {
    if (d < 1 || static_cast<std::size_t>(d) > values.size())
        throw InvalidInputError("depth " + std::to_string(d) + " outside 1.." +
                                std::to_string(values.size()));
    return values[static_cast<std::size_t>(d) - 1];
}

void DepthCurve::validate() const {
    if (values.empty()) throw InvalidInputError("depth curve must cover at least one depth");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidInputError("depth curve value at depth " + std::to_string(i + 1) +
                                    " is not a finite non-negative number");
    }
}

}  // namespace sra
