#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <sra/sra.hpp>

using namespace sra;

namespace {

constexpr const char* kTable1 =
    "list1,list2,list3\n"
    "A,A,B\n"
    "B,C,A\n"
    "C,D,E\n"
    "D,B,C\n"
    "E,E,D\n";

template <class E, class F>
std::string message_of(F&& f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    FAIL("expected exception was not thrown");
    return {};
}

std::vector<ItemId> order_of(const ListSet& lists, std::size_t l) {
    const auto observed = lists.list(l).observed();
    return {observed.begin(), observed.end()};
}

}  // namespace

TEST_CASE("ranks-as-rows parsing of the worked example") {
    const auto parsed = parse_listset(kTable1);
    CHECK(parsed.list_names == std::vector<std::string>{"list1", "list2", "list3"});
    CHECK_FALSE(parsed.ties_broken);
    CHECK(parsed.lists.universe_size() == 5);
    CHECK(parsed.lists.all_complete());
    CHECK(parsed.lists.universe().label(0) == "A");
    CHECK(parsed.lists.universe().label(4) == "E");
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 1, 2, 3, 4});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{0, 2, 3, 1, 4});
    CHECK(order_of(parsed.lists, 2) == std::vector<ItemId>{1, 0, 4, 2, 3});

    const double expected = std::sqrt(11.0 / 9.0);
    CHECK(sra_complete(parsed.lists).at_depth(2) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("emitting and reparsing reproduces the document") {
    const auto parsed = parse_listset(kTable1);
    const auto emitted = emit_listset(parsed.lists, parsed.list_names);
    CHECK(emitted == kTable1);
    const auto reparsed = parse_listset(emitted);
    CHECK(emit_listset(reparsed.lists, reparsed.list_names) == emitted);
}

TEST_CASE("both orientations describe the same lists") {
    const char* items =
        "item,list1,list2,list3\n"
        "A,1,1,2\n"
        "B,2,4,1\n"
        "C,3,2,4\n"
        "D,4,3,5\n"
        "E,5,5,3\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    const auto by_item = parse_listset(items, options);
    const auto by_rank = parse_listset(kTable1);
    CHECK(emit_listset(by_item.lists, by_item.list_names) ==
          emit_listset(by_rank.lists, by_rank.list_names));
}

TEST_CASE("censored columns need an explicit universe size") {
    const char* doc =
        "l1,l2\n"
        "A,C\n"
        "B,\n";
    const auto message = message_of<ParseError>([&] { parse_listset(doc); });
    CHECK(message.find("universe") != std::string::npos);

    ParseOptions options;
    options.universe_size = 4;
    const auto parsed = parse_listset(doc, options);
    CHECK(parsed.lists.universe_size() == 4);
    CHECK(parsed.lists.any_censored());
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 2});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{1});
    CHECK(parsed.lists.list(0).complete() == false);

    const auto emitted = emit_listset(parsed.lists, parsed.list_names);
    CHECK(emitted == doc);
    const auto reparsed = parse_listset(emitted, options);
    CHECK(emit_listset(reparsed.lists, reparsed.list_names) == emitted);
}

TEST_CASE("a column cannot resume after a censoring marker") {
    const char* doc =
        "l1,l2\n"
        "A,C\n"
        ",B\n"
        "C,\n";
    ParseOptions options;
    options.universe_size = 3;
    const auto message =
        message_of<ParseError>([&] { parse_listset(doc, options); });
    CHECK(message.find("l1") != std::string::npos);
}

TEST_CASE("an optional index column is accepted when consistent") {
    const char* good =
        "rank,l1,l2\n"
        "1,A,B\n"
        "2,B,A\n";
    const auto parsed = parse_listset(good);
    CHECK(parsed.list_names == std::vector<std::string>{"l1", "l2"});
    CHECK(parsed.lists.universe_size() == 2);

    const char* depth_alias =
        "depth,l1,l2\n"
        "1,A,B\n"
        "2,B,A\n";
    CHECK(parse_listset(depth_alias).lists.list_count() == 2);

    const char* bad =
        "rank,l1,l2\n"
        "1,A,B\n"
        "3,B,A\n";
    const auto message = message_of<ParseError>([&] { parse_listset(bad); });
    CHECK(message.find("line 3") != std::string::npos);
}

TEST_CASE("duplicate items within a list are rejected") {
    const char* doc =
        "l1,l2\n"
        "A,B\n"
        "A,C\n";
    ParseOptions options;
    options.universe_size = 3;
    const auto message =
        message_of<ParseError>([&] { parse_listset(doc, options); });
    CHECK(message.find("l1") != std::string::npos);
    CHECK(message.find("line 3") != std::string::npos);
    CHECK_THROWS_AS(parse_listset(doc), ParseError);
}

TEST_CASE("complete documents must cover a consistent universe") {
    // Three distinct labels across two rows: without an explicit universe
    // size the document cannot be complete.
    const char* doc =
        "l1,l2\n"
        "A,B\n"
        "B,C\n";
    CHECK_THROWS_AS(parse_listset(doc), ParseError);

    ParseOptions options;
    options.universe_size = 2;  // too small for three labels
    CHECK_THROWS_AS(parse_listset(doc, options), ParseError);
    options.universe_size = 3;
    CHECK(parse_listset(doc, options).lists.any_censored());
}

TEST_CASE("items-as-rows rejects duplicate labels") {
    const char* doc =
        "item,l1,l2\n"
        "A,1,1\n"
        "A,2,2\n";
    const auto message = message_of<ParseError>([&] {
        ParseOptions options;
        options.orientation = Orientation::ItemsAsRows;
        parse_listset(doc, options);
    });
    CHECK(message.find("A") != std::string::npos);
}

TEST_CASE("integer ranks must form a contiguous block") {
    const char* doc =
        "item,l1,l2\n"
        "a,1,1\n"
        "b,3,2\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    CHECK_THROWS_AS(parse_listset(doc, options), ParseError);
}

TEST_CASE("tied ranks are resolved only at their exact mid-rank") {
    const char* good =
        "item,l1,l2\n"
        "a,1,1\n"
        "b,2.5,2\n"
        "c,2.5,3\n"
        "d,4,4\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    CHECK_THROWS_AS(parse_listset(good, options), ParseError);

    options.allow_midrank_ties = true;
    const auto parsed = parse_listset(good, options);
    CHECK(parsed.ties_broken);
    CHECK(parsed.tie_groups == 1);
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 1, 2, 3});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{0, 1, 2, 3});

    const char* bad =
        "item,l1,l2\n"
        "a,1,1\n"
        "b,2,2\n"
        "c,2,3\n"
        "d,3,4\n";
    CHECK_THROWS_AS(parse_listset(bad, options), ParseError);
}

TEST_CASE("every list needs at least one observed entry") {
    const char* doc =
        "item,l1,l2\n"
        "a,NA,1\n"
        "b,NA,2\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    CHECK_THROWS_AS(parse_listset(doc, options), ParseError);
}

TEST_CASE("censored items-as-rows lists keep their observed prefixes") {
    const char* doc =
        "item,l1,l2\n"
        "a,1,NA\n"
        "b,2,1\n"
        "c,NA,2\n"
        "d,NA,NA\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    const auto parsed = parse_listset(doc, options);
    CHECK(parsed.lists.universe_size() == 4);
    CHECK(parsed.lists.any_censored());
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 1});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{1, 2});

    ParseOptions wider = options;
    wider.universe_size = 9;
    CHECK(parse_listset(doc, wider).lists.universe_size() == 9);
    ParseOptions narrower = options;
    narrower.universe_size = 3;  // fewer than the four rows
    CHECK_THROWS_AS(parse_listset(doc, narrower), ParseError);
}

TEST_CASE("scores rank by descending magnitude") {
    const char* doc =
        "gene,s1,s2\n"
        "g1,0.5,-3\n"
        "g2,-2,1\n"
        "g3,1,0.25\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    options.scores = true;
    const auto parsed = parse_listset(doc, options);
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{1, 2, 0});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{0, 1, 2});
    CHECK_FALSE(parsed.ties_broken);
}

TEST_CASE("tied scores need the mid-rank flag and keep row order") {
    const char* doc =
        "gene,s1,s2\n"
        "g1,1,5\n"
        "g2,-1,4\n";
    ParseOptions options;
    options.orientation = Orientation::ItemsAsRows;
    options.scores = true;
    CHECK_THROWS_AS(parse_listset(doc, options), ParseError);

    options.allow_midrank_ties = true;
    const auto parsed = parse_listset(doc, options);
    CHECK(parsed.ties_broken);
    CHECK(parsed.tie_groups == 1);
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 1});
}

TEST_CASE("tab and custom delimiters") {
    const char* tsv =
        "l1\tl2\n"
        "A\tB\n"
        "B\tA\n";
    const auto sniffed = parse_listset(tsv);
    CHECK(sniffed.lists.list_count() == 2);
    CHECK(order_of(sniffed.lists, 1) == std::vector<ItemId>{1, 0});

    ParseOptions options;
    options.delimiter = ';';
    const auto parsed = parse_listset("l1;l2\nA;B\nB;A\n", options);
    CHECK(parsed.lists.list_count() == 2);
}

TEST_CASE("comment lines and blank lines are skipped") {
    const char* doc =
        "# produced by hand\n"
        "\n"
        "l1,l2\n"
        "A,B\n"
        "\n"
        "B,A\n";
    CHECK(parse_listset(doc).lists.universe_size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    const auto message =
        message_of<ParseError>([] { parse_listset("l1,l2\nA,B\nB\n"); });
    CHECK(message.find("line 3") != std::string::npos);
    CHECK_THROWS_AS(parse_listset(""), ParseError);
    CHECK_THROWS_AS(parse_listset("only-one-column\nA\n"), ParseError);
}

TEST_CASE("custom censoring tokens") {
    const char* doc =
        "l1,l2\n"
        "A,B\n"
        "B,.\n";
    ParseOptions options;
    options.universe_size = 2;
    options.na_tokens = {"", "NA", "."};
    const auto parsed = parse_listset(doc, options);
    CHECK(order_of(parsed.lists, 0) == std::vector<ItemId>{0, 1});
    CHECK(order_of(parsed.lists, 1) == std::vector<ItemId>{1});
}

TEST_CASE("list emission falls back to ids and checks its inputs") {
    std::vector<ListEntry> entries;
    entries.emplace_back(RankedList::from_order({1, 0}));
    entries.emplace_back(RankedList::from_order({0, 1}));
    const auto lists = ListSet::create(ItemUniverse(2), std::move(entries));
    CHECK(emit_listset(lists) == "list1,list2\n1,0\n0,1\n");
    CHECK_THROWS_AS(emit_listset(lists, {"only"}), InvalidInputError);
    CHECK_THROWS_AS(emit_listset(lists, {"a,b", "c"}), UnsupportedInputError);

    std::vector<ListEntry> labeled;
    labeled.emplace_back(RankedList::from_order({0, 1}));
    labeled.emplace_back(RankedList::from_order({1, 0}));
    const auto bad_label =
        ListSet::create(ItemUniverse(2, {"ok", "has,comma"}), std::move(labeled));
    CHECK_THROWS_AS(emit_listset(bad_label), UnsupportedInputError);
}

TEST_CASE("curve documents round-trip in both formats") {
    DepthCurve curve{{0.0, std::sqrt(2.0), 1e-17, 880.747791243267}};
    CurveMetadata md;
    md.metric = AgreementMetric::StandardDeviation;
    md.seed = std::numeric_limits<std::uint64_t>::max();
    md.permutations = 1000;
    md.universe_size = 50;
    md.list_count = 3;
    md.flagged_from = 2;
    md.ties_broken = true;

    for (const auto format : {OutputFormat::DelimitedText, OutputFormat::StructuredRecord}) {
        const auto text = emit_curve(curve, md, format);
        const auto parsed = parse_curve(text);
        CHECK(parsed.curve.values == curve.values);
        CHECK(parsed.metadata == md);
        CHECK(parse_curve(emit_curve(parsed.curve, parsed.metadata, format)).curve.values ==
              curve.values);
    }

    const auto bare = parse_curve("depth,value\n1,0.25\n2,0.5\n");
    CHECK(bare.curve.values == std::vector<double>{0.25, 0.5});
    CHECK(bare.metadata == CurveMetadata{});
}

TEST_CASE("structured curve records are self-describing") {
    const auto text = emit_curve(DepthCurve{{1.5}}, {}, OutputFormat::StructuredRecord);
    CHECK(text.find("\"kind\": \"curve\"") != std::string::npos);
    CHECK(text.find("\"metadata\"") != std::string::npos);
    CHECK(text.find("\"values\"") != std::string::npos);
}

TEST_CASE("band documents round-trip in both formats") {
    ReferenceBand band;
    band.quantile_levels = {0.025, 0.5, 0.975};
    band.quantile_curves = {{0.1, 0.2, std::sqrt(3.0)},
                            {0.5, 0.6, 2.0},
                            {0.9, 1.0 / 3.0 + 2.0, 880.747791243267}};
    band.b_used = 400;
    band.hypothesis = BandHypothesis::H0Independent;
    band.flagged_from = 2;

    CurveMetadata md;
    md.metric = AgreementMetric::MedianAbsoluteDeviation;
    md.seed = 17;
    md.permutations = 50;
    md.band_permutations = 400;
    md.universe_size = 3;
    md.list_count = 4;

    for (const auto format : {OutputFormat::DelimitedText, OutputFormat::StructuredRecord}) {
        const auto text = emit_band(band, md, format);
        const auto parsed = parse_band(text);
        CHECK(parsed.band == band);
        CHECK(parsed.metadata == md);
    }

    const auto csv = emit_band(band, md, OutputFormat::DelimitedText);
    CHECK(csv.find("# hypothesis: independent\n") != std::string::npos);
    CHECK(csv.find("# curves: 400\n") != std::string::npos);
    CHECK(csv.find("# flagged-from: 2\n") != std::string::npos);
    CHECK(csv.find("depth,q0.025,q0.5,q0.975\n") != std::string::npos);
}

TEST_CASE("band documents must state how many curves they summarize") {
    ReferenceBand band;
    band.quantile_levels = {0.5};
    band.quantile_curves = {{1.0, 2.0}};
    band.b_used = 7;
    const auto csv = emit_band(band, {}, OutputFormat::DelimitedText);

    std::string without;
    for (std::size_t start = 0; start < csv.size();) {
        const auto end = csv.find('\n', start);
        const auto line = csv.substr(start, end - start);
        if (line.rfind("# curves:", 0) != 0) without += line + "\n";
        start = end + 1;
    }
    CHECK_THROWS_AS(parse_band(without), ParseError);
    CHECK(parse_band(csv).band.b_used == 7);
    CHECK(parse_band(csv).band.hypothesis == BandHypothesis::H0Independent);
}

TEST_CASE("curve and band documents are not interchangeable") {
    const auto curve_csv = emit_curve(DepthCurve{{1.0}}, {}, OutputFormat::DelimitedText);
    const auto curve_json = emit_curve(DepthCurve{{1.0}}, {}, OutputFormat::StructuredRecord);
    ReferenceBand band;
    band.quantile_levels = {0.5};
    band.quantile_curves = {{1.0}};
    band.b_used = 1;
    const auto band_csv = emit_band(band, {}, OutputFormat::DelimitedText);
    const auto band_json = emit_band(band, {}, OutputFormat::StructuredRecord);

    CHECK_THROWS_AS(parse_curve(band_csv), ParseError);
    CHECK_THROWS_AS(parse_curve(band_json), ParseError);
    CHECK_THROWS_AS(parse_band(curve_csv), ParseError);
    CHECK_THROWS_AS(parse_band(curve_json), ParseError);
    CHECK_THROWS_AS(parse_curve("not a document"), ParseError);
    CHECK_THROWS_AS(parse_curve("{\"kind\": \"curve\""), ParseError);
}

TEST_CASE("curve depths must be contiguous from one") {
    CHECK_THROWS_AS(parse_curve("depth,value\n1,0.5\n3,0.7\n"), ParseError);
    CHECK_THROWS_AS(parse_curve("depth,value\n2,0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_curve("depth,value\n1,0.5\n1,0.7\n"), ParseError);
    CHECK_THROWS_AS(parse_curve("depth,value\n1,-0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_band("# curves: 3\ndepth,q0.5\n1,0.5\n4,0.7\n"), ParseError);
}
