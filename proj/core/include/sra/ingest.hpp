#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sra/nullref.hpp"
#include "sra/types.hpp"

namespace sra {

/// How a list document is laid out.
enum class Orientation {
    RanksAsRows,  // one column per list, row r holds the rank-r item label
    ItemsAsRows,  // first column item labels, one rank (or score) column per list
};

struct ParseOptions {
    Orientation orientation = Orientation::RanksAsRows;
    /// Field separator; unset = sniff ',' vs '\t' from the header row.
    std::optional<char> delimiter;
    /// Items-as-rows cells are real-valued scores; lists are ranked by
    /// descending |score|.
    bool scores = false;
    /// Resolve tied scores / duplicated integer ranks by their mid-rank span
    /// in stable row order instead of rejecting the document.
    bool allow_midrank_ties = false;
    /// Required for censored ranks-as-rows input; items-as-rows defaults to
    /// the row count.
    std::optional<ItemId> universe_size;
    /// Cell contents (after trimming) that mark a censored entry.
    std::vector<std::string> na_tokens = {"", "NA"};
};

struct ParsedListSet {
    ListSet lists;
    std::vector<std::string> list_names;  // header row
    bool ties_broken = false;             // mid-rank resolution was applied
    int tie_groups = 0;                   // number of tied groups resolved
};

/// Parses a delimited list document. Every structural error (duplicate item
/// in a list, non-contiguous observed ranks, inconsistent universe, censored
/// ranks-as-rows without universe_size, ties without the mid-rank flag) is
/// detected here, before any computation runs.
ParsedListSet parse_listset(std::string_view text, const ParseOptions& options = {});

/// Writes a list set as a ranks-as-rows document (censored columns stop
/// early). Labels fall back to decimal ids for unlabeled universes;
/// list_names falls back to list1..listL.
std::string emit_listset(const ListSet& lists, std::vector<std::string> list_names = {});

enum class OutputFormat {
    DelimitedText,     // CSV with '#'-prefixed metadata header lines
    StructuredRecord,  // one self-describing JSON document
};

/// Run metadata carried in curve/band documents.
struct CurveMetadata {
    std::optional<AgreementMetric> metric;
    std::optional<std::uint64_t> seed;
    std::optional<int> permutations;       // fill-out B for censored lists
    std::optional<int> band_permutations;  // number of null curves
    std::optional<int> flagged_from;       // depths beyond this are extrapolated
    std::optional<ItemId> universe_size;
    std::optional<int> list_count;
    bool ties_broken = false;

    friend bool operator==(const CurveMetadata&, const CurveMetadata&) = default;
};

/// Serializes a curve; reals use shortest round-trip formatting, so
/// parse_curve(emit_curve(x)) == x exactly.
std::string emit_curve(const DepthCurve& curve, const CurveMetadata& metadata,
                       OutputFormat format = OutputFormat::DelimitedText);

/// Serializes a band (one column / array per quantile level).
std::string emit_band(const ReferenceBand& band, const CurveMetadata& metadata,
                      OutputFormat format = OutputFormat::DelimitedText);

struct ParsedCurve {
    DepthCurve curve;
    CurveMetadata metadata;
};

struct ParsedBand {
    ReferenceBand band;
    CurveMetadata metadata;
};

/// Reads back either emitted curve format (sniffed).
ParsedCurve parse_curve(std::string_view text);

/// Reads back either emitted band format (sniffed).
ParsedBand parse_band(std::string_view text);

}  // namespace sra
