#include "sra/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace sra {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Line {
    std::size_t number = 0;  // 1-based physical line
    std::string_view text;
};

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

bool ci_equal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::vector<Line> physical_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto end = (nl == std::string_view::npos) ? text.size() : nl;
        lines.push_back({number, text.substr(start, end - start)});
        if (nl == std::string_view::npos) break;
        start = nl + 1;
        ++number;
    }
    while (!lines.empty() && trim(lines.back().text).empty()) lines.pop_back();
    return lines;
}

bool is_comment(std::string_view line) { return !line.empty() && trim(line).front() == '#'; }

char sniff_delimiter(std::string_view header, std::optional<char> chosen) {
    if (chosen) return *chosen;
    return header.find('\t') != std::string_view::npos ? '\t' : ',';
}

std::vector<std::string_view> split_cells(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            return cells;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

bool is_na(std::string_view cell, const std::vector<std::string>& na_tokens) {
    for (const auto& token : na_tokens)
        if (cell == token) return true;
    return false;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw ParseError("line " + std::to_string(line) + ": " + message);
}

template <typename T>
T parse_integer(std::string_view cell, std::size_t line, const std::string& what) {
    T value{};
    const auto* first = cell.data();
    const auto* last = first + cell.size();
    const auto [p, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || p != last)
        fail(line, what + " is not an integer: '" + std::string(cell) + "'");
    return value;
}

double parse_real(std::string_view cell, std::size_t line, const std::string& what) {
    double value{};
    const auto* first = cell.data();
    const auto* last = first + cell.size();
    const auto [p, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || p != last)
        fail(line, what + " is not a number: '" + std::string(cell) + "'");
    if (!std::isfinite(value)) fail(line, what + " must be finite");
    return value;
}

std::string format_real(double value) {
    char buf[40];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, p);
}

struct Grid {
    std::vector<std::string> names;  // header cells
    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> row_lines;
    char delim = ',';
};

Grid read_grid(std::string_view text, const ParseOptions& options) {
    Grid grid;
    bool have_header = false;
    for (const Line& line : physical_lines(text)) {
        if (trim(line.text).empty() || is_comment(line.text)) continue;
        if (!have_header) {
            grid.delim = sniff_delimiter(line.text, options.delimiter);
            for (std::string_view cell : split_cells(line.text, grid.delim))
                grid.names.emplace_back(cell);
            have_header = true;
            continue;
        }
        auto cells = split_cells(line.text, grid.delim);
        if (cells.size() != grid.names.size())
            fail(line.number, "expected " + std::to_string(grid.names.size()) + " fields, found " +
                                  std::to_string(cells.size()));
        grid.rows.push_back(std::move(cells));
        grid.row_lines.push_back(line.number);
    }
    if (!have_header) throw ParseError("document is empty");
    if (grid.rows.empty()) throw ParseError("document has a header but no rows");
    return grid;
}

struct LabelPool {
    std::unordered_map<std::string, ItemId> ids;
    std::vector<std::string> labels;

    ItemId intern(std::string_view label) {
        auto [it, added] = ids.try_emplace(std::string(label), static_cast<ItemId>(labels.size()));
        if (added) labels.emplace_back(label);
        return it->second;
    }
};

ItemUniverse make_universe(ItemId size, std::vector<std::string> labels) {
    labels.resize(static_cast<std::size_t>(size));
    return {size, std::move(labels)};
}

ParsedListSet parse_ranks_as_rows(const Grid& grid, const ParseOptions& options) {
    std::size_t first_col = 0;
    if (ci_equal(grid.names.front(), "rank") || ci_equal(grid.names.front(), "depth")) {
        first_col = 1;
        for (std::size_t r = 0; r < grid.rows.size(); ++r) {
            const auto idx =
                parse_integer<long>(grid.rows[r][0], grid.row_lines[r], "rank index");
            if (idx != static_cast<long>(r) + 1)
                fail(grid.row_lines[r], "rank index " + std::to_string(idx) +
                                            " out of order; expected " + std::to_string(r + 1));
        }
    }

    const std::size_t L = grid.names.size() - first_col;
    if (L < 2) throw ParseError("need at least two list columns");
    for (std::size_t c = first_col; c < grid.names.size(); ++c)
        if (grid.names[c].empty()) throw ParseError("empty list name in header");

    const std::size_t R = grid.rows.size();

    // Per list, observed labels stop at the first missing cell.
    std::vector<std::vector<std::string_view>> observed(L);
    for (std::size_t c = 0; c < L; ++c) {
        auto& column = observed[c];
        bool stopped = false;
        for (std::size_t r = 0; r < R; ++r) {
            const auto cell = grid.rows[r][first_col + c];
            if (is_na(cell, options.na_tokens)) {
                stopped = true;
                continue;
            }
            if (stopped)
                fail(grid.row_lines[r], "list '" + grid.names[first_col + c] +
                                            "' resumes after a missing rank; observed ranks "
                                            "must be a contiguous top of the list");
            column.push_back(cell);
        }
        if (column.empty())
            throw ParseError("list '" + grid.names[first_col + c] + "' has no observed ranks");
    }

    LabelPool pool;
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < L; ++c) {
            const auto cell = grid.rows[r][first_col + c];
            if (r < observed[c].size()) pool.intern(cell);
        }
    const auto distinct = static_cast<ItemId>(pool.labels.size());

    ItemId P;
    if (options.universe_size) {
        P = *options.universe_size;
        if (P < 1) throw ParseError("universe size must be positive");
        if (distinct > P)
            throw ParseError("found " + std::to_string(distinct) +
                             " distinct items but the universe size is " + std::to_string(P));
        if (static_cast<ItemId>(R) > P)
            throw ParseError("more rank rows than the universe holds");
    } else {
        bool censored = false;
        for (const auto& column : observed) censored |= column.size() < R;
        if (censored || distinct != static_cast<ItemId>(R))
            throw ParseError(
                "lists do not rank one shared item set end to end; censored input needs an "
                "explicit universe size");
        P = distinct;
    }

    std::vector<ListEntry> entries;
    entries.reserve(L);
    for (std::size_t c = 0; c < L; ++c) {
        std::vector<ItemId> order;
        order.reserve(observed[c].size());
        std::vector<bool> seen(static_cast<std::size_t>(P), false);
        for (std::size_t r = 0; r < observed[c].size(); ++r) {
            const auto cell = observed[c][r];
            const ItemId id = pool.intern(cell);
            if (seen[static_cast<std::size_t>(id)])
                fail(grid.row_lines[r], "list '" + grid.names[first_col + c] + "' ranks item '" +
                                            std::string(cell) + "' more than once");
            seen[static_cast<std::size_t>(id)] = true;
            order.push_back(id);
        }
        if (static_cast<ItemId>(order.size()) == P)
            entries.emplace_back(RankedList::from_order(std::move(order)));
        else
            entries.emplace_back(CensoredRankedList::from_prefix(std::move(order), P));
    }

    ParsedListSet parsed{ListSet::create(make_universe(P, std::move(pool.labels)),
                                         std::move(entries)),
                         {}, false, 0};
    parsed.list_names.assign(grid.names.begin() + static_cast<std::ptrdiff_t>(first_col),
                             grid.names.end());
    return parsed;
}

ParsedListSet parse_items_as_rows(const Grid& grid, const ParseOptions& options) {
    if (grid.names.size() < 3)
        throw ParseError("items-as-rows input needs an item column plus at least two lists");
    const std::size_t L = grid.names.size() - 1;
    const std::size_t R = grid.rows.size();

    LabelPool pool;
    for (std::size_t r = 0; r < R; ++r) {
        const auto label = grid.rows[r][0];
        if (is_na(label, options.na_tokens)) fail(grid.row_lines[r], "item label is missing");
        if (pool.ids.contains(std::string(label)))
            fail(grid.row_lines[r], "item '" + std::string(label) + "' appears twice");
        pool.intern(label);
    }

    const ItemId P = options.universe_size.value_or(static_cast<ItemId>(R));
    if (P < static_cast<ItemId>(R))
        throw ParseError("universe size " + std::to_string(P) + " is smaller than the " +
                         std::to_string(R) + " item rows");

    std::vector<ListEntry> entries;
    entries.reserve(L);
    int tie_groups = 0;

    for (std::size_t c = 0; c < L; ++c) {
        const std::string& name = grid.names[c + 1];
        struct Cell {
            ItemId item;
            double value;
        };
        std::vector<Cell> cells;
        for (std::size_t r = 0; r < R; ++r) {
            const auto cell = grid.rows[r][1 + c];
            if (is_na(cell, options.na_tokens)) continue;
            const double value = parse_real(cell, grid.row_lines[r],
                                            "list '" + name + "' entry");
            cells.push_back({static_cast<ItemId>(r), value});
        }
        if (cells.empty()) throw ParseError("list '" + name + "' has no observed entries");

        // Sort keys: ranks ascend, scores descend by magnitude. Stable, so
        // tied entries keep their row order.
        const auto key = [&](const Cell& cell) {
            return options.scores ? -std::abs(cell.value) : cell.value;
        };
        std::stable_sort(cells.begin(), cells.end(),
                         [&](const Cell& a, const Cell& b) { return key(a) < key(b); });

        const std::size_t d = cells.size();
        for (std::size_t i = 0; i < d;) {
            std::size_t j = i + 1;
            while (j < d && key(cells[j]) == key(cells[i])) ++j;
            if (j - i > 1) {
                if (!options.allow_midrank_ties)
                    throw ParseError("list '" + name + "' has " + std::to_string(j - i) +
                                     " tied entries and tie resolution is not enabled");
                ++tie_groups;
            }
            if (!options.scores) {
                const double expected = 0.5 * static_cast<double>(i + 1 + j);
                if (cells[i].value != expected)
                    throw ParseError("list '" + name + "' ranks must occupy 1.." +
                                     std::to_string(d) + " (midranks when tied); found " +
                                     format_real(cells[i].value) + " where " +
                                     format_real(expected) + " was expected");
            }
            i = j;
        }

        std::vector<ItemId> prefix(d);
        for (std::size_t i = 0; i < d; ++i) prefix[i] = cells[i].item;
        if (static_cast<ItemId>(d) == P)
            entries.emplace_back(RankedList::from_order(std::move(prefix)));
        else
            entries.emplace_back(CensoredRankedList::from_prefix(std::move(prefix), P));
    }

    ParsedListSet parsed{ListSet::create(make_universe(P, std::move(pool.labels)),
                                         std::move(entries)),
                         {}, tie_groups > 0, tie_groups};
    parsed.list_names.assign(grid.names.begin() + 1, grid.names.end());
    return parsed;
}

}  // namespace

ParsedListSet parse_listset(std::string_view text, const ParseOptions& options) {
    const Grid grid = read_grid(text, options);
    if (options.orientation == Orientation::RanksAsRows) return parse_ranks_as_rows(grid, options);
    return parse_items_as_rows(grid, options);
}

namespace {

std::string writable_token(const std::string& token, const char* what) {
    if (token.find_first_of(",\t\n\r#") != std::string::npos || trim(token).size() != token.size())
        throw UnsupportedInputError(std::string(what) + " '" + token +
                                    "' cannot be written to a delimited document");
    return token;
}

}  // namespace

std::string emit_listset(const ListSet& lists, std::vector<std::string> list_names) {
    const std::size_t L = lists.list_count();
    if (list_names.empty()) {
        list_names.reserve(L);
        for (std::size_t l = 0; l < L; ++l) list_names.push_back("list" + std::to_string(l + 1));
    }
    if (list_names.size() != L)
        throw InvalidInputError("got " + std::to_string(list_names.size()) + " list names for " +
                                std::to_string(L) + " lists");

    const auto label_of = [&](ItemId id) {
        const std::string& label = lists.universe().label(id);
        return label.empty() ? std::to_string(id) : writable_token(label, "item label");
    };

    std::size_t depth = 0;
    for (const auto& entry : lists.lists())
        depth = std::max(depth, static_cast<std::size_t>(entry.observed_depth()));

    std::string out;
    for (std::size_t l = 0; l < L; ++l) {
        if (l) out += ',';
        out += writable_token(list_names[l], "list name");
    }
    out += '\n';
    for (std::size_t r = 0; r < depth; ++r) {
        for (std::size_t l = 0; l < L; ++l) {
            if (l) out += ',';
            const auto observed = lists.lists()[l].observed();
            if (r < observed.size()) out += label_of(observed[r]);
        }
        out += '\n';
    }
    return out;
}

namespace {

void append_metadata_csv(std::string& out, const CurveMetadata& m, bool include_flag) {
    if (m.metric) out += "# metric: " + std::string(metric_name(*m.metric)) + "\n";
    if (m.universe_size) out += "# universe-size: " + std::to_string(*m.universe_size) + "\n";
    if (m.list_count) out += "# lists: " + std::to_string(*m.list_count) + "\n";
    if (m.seed) out += "# seed: " + std::to_string(*m.seed) + "\n";
    if (m.permutations) out += "# permutations: " + std::to_string(*m.permutations) + "\n";
    if (m.band_permutations)
        out += "# band-permutations: " + std::to_string(*m.band_permutations) + "\n";
    if (include_flag && m.flagged_from)
        out += "# flagged-from: " + std::to_string(*m.flagged_from) + "\n";
    if (m.ties_broken) out += "# ties-broken: true\n";
}

void metadata_to_json(ordered_json& j, const CurveMetadata& m, bool include_flag) {
    ordered_json meta = ordered_json::object();
    if (m.metric) meta["metric"] = std::string(metric_name(*m.metric));
    if (m.universe_size) meta["universe_size"] = *m.universe_size;
    if (m.list_count) meta["lists"] = *m.list_count;
    if (m.seed) meta["seed"] = *m.seed;
    if (m.permutations) meta["permutations"] = *m.permutations;
    if (m.band_permutations) meta["band_permutations"] = *m.band_permutations;
    if (include_flag && m.flagged_from) meta["flagged_from"] = *m.flagged_from;
    if (m.ties_broken) meta["ties_broken"] = true;
    j["metadata"] = std::move(meta);
}

struct MetadataReader {
    std::unordered_map<std::string, std::pair<std::string, std::size_t>> entries;

    void take(std::string_view line, std::size_t number) {
        auto body = trim(line);
        body.remove_prefix(1);  // '#'
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) return;
        const auto k = trim(body.substr(0, colon));
        const auto v = trim(body.substr(colon + 1));
        if (!k.empty()) entries[std::string(k)] = {std::string(v), number};
    }

    std::optional<std::pair<std::string, std::size_t>> get(const std::string& key) {
        const auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

CurveMetadata metadata_from_reader(MetadataReader& reader, bool include_flag) {
    CurveMetadata m;
    if (auto e = reader.get("metric")) {
        const auto metric = metric_from_name(e->first);
        if (!metric) fail(e->second, "unknown metric '" + e->first + "'");
        m.metric = metric;
    }
    if (auto e = reader.get("universe-size"))
        m.universe_size = parse_integer<ItemId>(e->first, e->second, "universe size");
    if (auto e = reader.get("lists"))
        m.list_count = parse_integer<int>(e->first, e->second, "list count");
    if (auto e = reader.get("seed"))
        m.seed = parse_integer<std::uint64_t>(e->first, e->second, "seed");
    if (auto e = reader.get("permutations"))
        m.permutations = parse_integer<int>(e->first, e->second, "permutation count");
    if (auto e = reader.get("band-permutations"))
        m.band_permutations = parse_integer<int>(e->first, e->second, "band permutation count");
    if (include_flag)
        if (auto e = reader.get("flagged-from"))
            m.flagged_from = parse_integer<int>(e->first, e->second, "flagged-from depth");
    if (auto e = reader.get("ties-broken")) {
        if (e->first != "true" && e->first != "false")
            fail(e->second, "ties-broken must be true or false");
        m.ties_broken = e->first == "true";
    }
    return m;
}

CurveMetadata metadata_from_json(const ordered_json& record, bool include_flag) {
    CurveMetadata m;
    if (!record.contains("metadata")) return m;
    const ordered_json& j = record.at("metadata");
    if (j.contains("metric")) {
        const auto metric = metric_from_name(j.at("metric").get<std::string>());
        if (!metric)
            throw ParseError("unknown metric '" + j.at("metric").get<std::string>() + "'");
        m.metric = metric;
    }
    if (j.contains("universe_size")) m.universe_size = j.at("universe_size").get<ItemId>();
    if (j.contains("lists")) m.list_count = j.at("lists").get<int>();
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("permutations")) m.permutations = j.at("permutations").get<int>();
    if (j.contains("band_permutations"))
        m.band_permutations = j.at("band_permutations").get<int>();
    if (include_flag && j.contains("flagged_from"))
        m.flagged_from = j.at("flagged_from").get<int>();
    if (j.contains("ties_broken")) m.ties_broken = j.at("ties_broken").get<bool>();
    return m;
}

bool looks_like_json(std::string_view text) {
    const auto body = trim(text);
    return !body.empty() && body.front() == '{';
}

ordered_json parse_json_document(std::string_view text, const char* expected_kind) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad structured record: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || j.at("kind") != expected_kind)
        throw ParseError(std::string("expected a '") + expected_kind + "' record");
    return j;
}

// Structural problems in a parsed document are parse errors, whichever
// layer detects them.
template <class T>
void validate_parsed(const T& value) {
    try {
        value.validate();
    } catch (const InvalidInputError& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

std::string emit_curve(const DepthCurve& curve, const CurveMetadata& metadata,
                       OutputFormat format) {
    curve.validate();
    if (format == OutputFormat::StructuredRecord) {
        ordered_json j;
        j["kind"] = "curve";
        metadata_to_json(j, metadata, true);
        j["values"] = curve.values;
        return j.dump(2) + "\n";
    }
    std::string out;
    append_metadata_csv(out, metadata, true);
    out += "depth,value\n";
    for (std::size_t d = 0; d < curve.values.size(); ++d)
        out += std::to_string(d + 1) + "," + format_real(curve.values[d]) + "\n";
    return out;
}

std::string emit_band(const ReferenceBand& band, const CurveMetadata& metadata,
                      OutputFormat format) {
    band.validate();
    if (format == OutputFormat::StructuredRecord) {
        ordered_json j;
        j["kind"] = "band";
        j["hypothesis"] = std::string(hypothesis_name(band.hypothesis));
        j["curves"] = band.b_used;
        if (band.flagged_from) j["flagged_from"] = *band.flagged_from;
        metadata_to_json(j, metadata, false);
        j["quantile_levels"] = band.quantile_levels;
        j["quantile_curves"] = band.quantile_curves;
        return j.dump(2) + "\n";
    }
    std::string out;
    out += "# hypothesis: " + std::string(hypothesis_name(band.hypothesis)) + "\n";
    out += "# curves: " + std::to_string(band.b_used) + "\n";
    if (band.flagged_from) out += "# flagged-from: " + std::to_string(*band.flagged_from) + "\n";
    append_metadata_csv(out, metadata, false);
    out += "depth";
    for (const double q : band.quantile_levels) out += ",q" + format_real(q);
    out += '\n';
    for (std::size_t d = 0; d < band.depth_count(); ++d) {
        out += std::to_string(d + 1);
        for (const auto& quantile_curve : band.quantile_curves)
            out += "," + format_real(quantile_curve[d]);
        out += '\n';
    }
    return out;
}

ParsedCurve parse_curve(std::string_view text) {
    if (looks_like_json(text)) {
        const ordered_json j = parse_json_document(text, "curve");
        ParsedCurve parsed;
        parsed.metadata = metadata_from_json(j, true);
        if (!j.contains("values") || !j.at("values").is_array())
            throw ParseError("curve record has no values array");
        parsed.curve.values = j.at("values").get<std::vector<double>>();
        validate_parsed(parsed.curve);
        return parsed;
    }

    MetadataReader reader;
    bool have_header = false;
    char delim = ',';
    ParsedCurve parsed;
    for (const Line& line : physical_lines(text)) {
        if (trim(line.text).empty()) continue;
        if (is_comment(line.text)) {
            reader.take(line.text, line.number);
            continue;
        }
        if (!have_header) {
            delim = sniff_delimiter(line.text, std::nullopt);
            const auto cells = split_cells(line.text, delim);
            if (cells.size() != 2 || cells[0] != "depth" || cells[1] != "value")
                fail(line.number, "expected a 'depth,value' header");
            have_header = true;
            continue;
        }
        const auto cells = split_cells(line.text, delim);
        if (cells.size() != 2) fail(line.number, "expected two fields");
        const auto d = parse_integer<long>(cells[0], line.number, "depth");
        if (d != static_cast<long>(parsed.curve.values.size()) + 1)
            fail(line.number, "depths must run 1,2,... without gaps");
        parsed.curve.values.push_back(parse_real(cells[1], line.number, "curve value"));
    }
    if (!have_header) throw ParseError("not a curve document");
    validate_parsed(parsed.curve);
    parsed.metadata = metadata_from_reader(reader, true);
    return parsed;
}

ParsedBand parse_band(std::string_view text) {
    if (looks_like_json(text)) {
        const ordered_json j = parse_json_document(text, "band");
        ParsedBand parsed;
        parsed.metadata = metadata_from_json(j, false);
        if (j.contains("hypothesis")) {
            const auto h = hypothesis_from_name(j.at("hypothesis").get<std::string>());
            if (!h) throw ParseError("unknown hypothesis in band record");
            parsed.band.hypothesis = *h;
        }
        if (!j.contains("curves")) throw ParseError("band record lacks its curve count");
        parsed.band.b_used = j.at("curves").get<int>();
        if (j.contains("flagged_from")) parsed.band.flagged_from = j.at("flagged_from").get<int>();
        parsed.band.quantile_levels = j.at("quantile_levels").get<std::vector<double>>();
        parsed.band.quantile_curves =
            j.at("quantile_curves").get<std::vector<std::vector<double>>>();
        validate_parsed(parsed.band);
        return parsed;
    }

    MetadataReader reader;
    bool have_header = false;
    char delim = ',';
    ParsedBand parsed;
    std::size_t depths = 0;
    for (const Line& line : physical_lines(text)) {
        if (trim(line.text).empty()) continue;
        if (is_comment(line.text)) {
            reader.take(line.text, line.number);
            continue;
        }
        if (!have_header) {
            delim = sniff_delimiter(line.text, std::nullopt);
            const auto cells = split_cells(line.text, delim);
            if (cells.size() < 2 || cells[0] != "depth")
                fail(line.number, "expected a 'depth,q...' header");
            for (std::size_t i = 1; i < cells.size(); ++i) {
                auto cell = cells[i];
                if (cell.empty() || cell.front() != 'q')
                    fail(line.number, "band columns must be named q<level>");
                cell.remove_prefix(1);
                parsed.band.quantile_levels.push_back(
                    parse_real(cell, line.number, "quantile level"));
            }
            parsed.band.quantile_curves.assign(parsed.band.quantile_levels.size(), {});
            have_header = true;
            continue;
        }
        const auto cells = split_cells(line.text, delim);
        if (cells.size() != parsed.band.quantile_levels.size() + 1)
            fail(line.number, "expected " + std::to_string(parsed.band.quantile_levels.size() + 1) +
                                  " fields");
        const auto d = parse_integer<long>(cells[0], line.number, "depth");
        if (d != static_cast<long>(depths) + 1)
            fail(line.number, "depths must run 1,2,... without gaps");
        ++depths;
        for (std::size_t i = 0; i < parsed.band.quantile_levels.size(); ++i)
            parsed.band.quantile_curves[i].push_back(
                parse_real(cells[i + 1], line.number, "band value"));
    }
    if (!have_header) throw ParseError("not a band document");

    if (auto e = reader.get("hypothesis")) {
        const auto h = hypothesis_from_name(e->first);
        if (!h) fail(e->second, "unknown hypothesis '" + e->first + "'");
        parsed.band.hypothesis = *h;
    }
    const auto curves = reader.get("curves");
    if (!curves) throw ParseError("band document lacks its '# curves:' count");
    parsed.band.b_used = parse_integer<int>(curves->first, curves->second, "curve count");
    if (auto e = reader.get("flagged-from"))
        parsed.band.flagged_from = parse_integer<int>(e->first, e->second, "flagged-from depth");
    parsed.metadata = metadata_from_reader(reader, false);
    validate_parsed(parsed.band);
    return parsed;
}

}  // namespace sra
