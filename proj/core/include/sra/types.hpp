#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sra/errors.hpp"

namespace sra {

/// Items are identified by dense non-negative integers 0..P-1.
using ItemId = std::int32_t;

/// Per-item agreement statistic across the L lists.
enum class AgreementMetric {
    StandardDeviation,      // sample SD of the item's ranks (the default)
    MedianAbsoluteDeviation // median(|r_i - median(r)|)
};

std::string_view metric_name(AgreementMetric metric) noexcept;
std::optional<AgreementMetric> metric_from_name(std::string_view name) noexcept;

/// The set of P items the lists rank. Labels are optional; when present the
/// vector has exactly P entries and the empty string marks an id that has no
/// label (possible for never-observed items of a censored universe).
class ItemUniverse {
public:
    explicit ItemUniverse(ItemId size);
    ItemUniverse(ItemId size, std::vector<std::string> labels);

    ItemId size() const noexcept { return size_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

    /// Label of an id; empty when unlabeled. Throws on out-of-range ids.
    const std::string& label(ItemId id) const;

    /// Id carrying the given (non-empty) label, if any.
    std::optional<ItemId> find(std::string_view label) const;

    friend bool operator==(const ItemUniverse&, const ItemUniverse&) = default;

private:
    ItemId size_;
    std::vector<std::string> labels_;  // empty, or exactly size_ entries
};

/// A full ranking: order()[r-1] is the item holding rank r.
class RankedList {
public:
    /// Validates that `order` is a permutation of 0..order.size()-1.
    static RankedList from_order(std::vector<ItemId> order);

    const std::vector<ItemId>& order() const noexcept { return order_; }
    ItemId size() const noexcept { return static_cast<ItemId>(order_.size()); }

    friend bool operator==(const RankedList&, const RankedList&) = default;

private:
    explicit RankedList(std::vector<ItemId> order) : order_(std::move(order)) {}
    std::vector<ItemId> order_;
};

/// The observed top of a ranking: ranks 1..depth() are known, the remaining
/// items are known only to rank somewhere in depth()+1..universe_size().
class CensoredRankedList {
public:
    static CensoredRankedList from_prefix(std::vector<ItemId> prefix, ItemId universe_size);

    const std::vector<ItemId>& prefix() const noexcept { return prefix_; }
    ItemId depth() const noexcept { return static_cast<ItemId>(prefix_.size()); }
    ItemId universe_size() const noexcept { return universe_size_; }

    friend bool operator==(const CensoredRankedList&, const CensoredRankedList&) = default;

private:
    CensoredRankedList(std::vector<ItemId> prefix, ItemId universe_size)
        : prefix_(std::move(prefix)), universe_size_(universe_size) {}
    std::vector<ItemId> prefix_;
    ItemId universe_size_;
};

/// One list of a ListSet: either a complete ranking or a censored one.
/// A list declared censored at depth P is a full permutation and behaves as
/// complete everywhere.
class ListEntry {
public:
    ListEntry(RankedList list);            // NOLINT(google-explicit-constructor)
    ListEntry(CensoredRankedList list);    // NOLINT(google-explicit-constructor)

    ItemId universe_size() const noexcept { return universe_size_; }
    ItemId observed_depth() const noexcept { return static_cast<ItemId>(items_.size()); }

    /// True when the full permutation is known (complete, or censored at P).
    bool complete() const noexcept { return observed_depth() == universe_size_; }

    /// True when some ranks are genuinely unobserved.
    bool censored() const noexcept { return !complete(); }

    /// Was the list constructed through the censored type?
    bool declared_censored() const noexcept { return declared_censored_; }

    /// Observed items in rank order (the whole order when complete).
    std::span<const ItemId> observed() const noexcept { return items_; }

    friend bool operator==(const ListEntry&, const ListEntry&) = default;

private:
    std::vector<ItemId> items_;
    ItemId universe_size_;
    bool declared_censored_;
};

/// L >= 2 rankings of one shared universe.
class ListSet {
public:
    static ListSet create(ItemUniverse universe, std::vector<ListEntry> lists);

    const ItemUniverse& universe() const noexcept { return universe_; }
    ItemId universe_size() const noexcept { return universe_.size(); }
    std::size_t list_count() const noexcept { return lists_.size(); }
    const ListEntry& list(std::size_t l) const { return lists_.at(l); }
    const std::vector<ListEntry>& lists() const noexcept { return lists_; }

    bool all_complete() const noexcept;
    bool any_censored() const noexcept { return !all_complete(); }

    friend bool operator==(const ListSet&, const ListSet&) = default;

private:
    ListSet(ItemUniverse universe, std::vector<ListEntry> lists)
        : universe_(std::move(universe)), lists_(std::move(lists)) {}
    ItemUniverse universe_;
    std::vector<ListEntry> lists_;
};

/// A value per depth d = 1..D. values()[d-1] is the value at depth d.
struct DepthCurve {
    std::vector<double> values;

    std::size_t depth_count() const noexcept { return values.size(); }
    double at_depth(int d) const;  // 1-based, bounds-checked

    /// Throws unless every value is finite and non-negative and D >= 1.
    void validate() const;

    friend bool operator==(const DepthCurve&, const DepthCurve&) = default;
};

}  // namespace sra
