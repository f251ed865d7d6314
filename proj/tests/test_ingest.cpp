#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "streamcomm/ingest.hpp"

using namespace streamcomm;

namespace {

const char* kFullRecord =
    R"({"id":"t1","user_id":"anna","timestamp":1000,"text":"hello world",)"
    R"("verified":false,"hashtags":["EU"],"mentions":["bob"],)"
    R"("followers":["u1"],"followees":["u2"],"extra":"ignored"})";

}  // namespace

TEST_CASE("parse_record maps all present fields") {
    RawRecord r = parse_record(kFullRecord, 1);
    CHECK(r.id == "t1");
    CHECK(r.user_id == "anna");
    CHECK(r.timestamp == 1000);
    CHECK(r.text == "hello world");
    CHECK_FALSE(r.verified);
    REQUIRE(r.hashtags.has_value());
    CHECK(*r.hashtags == std::vector<std::string>{"EU"});
    REQUIRE(r.followers.has_value());
    CHECK(r.followers->count("u1") == 1);
}

TEST_CASE("parse_record keeps absent optional fields distinguishable") {
    RawRecord r = parse_record(
        R"({"id":"t2","user_id":"u","timestamp":0,"text":"x","verified":true})", 1);
    CHECK_FALSE(r.hashtags.has_value());
    CHECK_FALSE(r.followers.has_value());

    RawRecord r2 = parse_record(
        R"({"id":"t3","user_id":"u","timestamp":0,"text":"x","verified":true,)"
        R"("followers":[]})",
        2);
    REQUIRE(r2.followers.has_value());
    CHECK(r2.followers->empty());
}

TEST_CASE("parse_record errors") {
    CHECK_THROWS_AS(parse_record(R"({"id":"t1","user_id":)", 7), ParseError);
    CHECK_THROWS_AS(parse_record(R"({"id":"t1","timestamp":0})", 3), SchemaError);
    CHECK_THROWS_AS(
        parse_record(
            R"({"id":"","user_id":"u","timestamp":0,"text":"x","verified":false})",
            4),
        SchemaError);
    try {
        parse_record("nonsense", 42);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_no == 42);
    }
}

TEST_CASE("preprocess strips urls, markers and stopwords") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";
    r.timestamp = 100;
    r.text = "RT @Anna Refugees WELCOME! #EU https://t.co/x";
    Document d = preprocess(r, PreprocessConfig{}, WindowSpec{});
    CHECK(d.tokens == std::set<std::string>{"rt", "refugees", "welcome"});
    CHECK(d.metadata.hashtags == std::set<std::string>{"eu"});
    CHECK(d.metadata.mentions == std::set<std::string>{"anna"});
}

TEST_CASE("preprocess drops a fully stopworded text") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";
    r.timestamp = 0;
    r.text = "the of a";
    // "of" is in the default list via "of"? ensure all three are stopwords
    PreprocessConfig cfg;
    cfg.stopwords.insert("of");
    Document d = preprocess(r, cfg, WindowSpec{});
    CHECK(d.tokens.empty());
}

TEST_CASE("preprocess computes the epoch by floor division") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";
    r.timestamp = 950;
    r.text = "x";
    Document d = preprocess(r, PreprocessConfig{}, WindowSpec{0, 900});
    CHECK(d.epoch == 1);
}

TEST_CASE("preprocess rejects timestamps before the window origin") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";
    r.timestamp = 10;
    r.text = "x";
    CHECK_THROWS_AS(preprocess(r, PreprocessConfig{}, WindowSpec{100, 900}),
                    WindowError);
}

TEST_CASE("preprocess merges record hashtags with text hashtags") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";
    r.timestamp = 0;
    r.text = "#brexit talks";
    r.hashtags = std::vector<std::string>{"EU"};
    Document d = preprocess(r, PreprocessConfig{}, WindowSpec{});
    CHECK(d.metadata.hashtags == std::set<std::string>{"brexit", "eu"});
}

TEST_CASE("passes_filters") {
    RawRecord r;
    r.id = "t1";
    r.user_id = "u";

    SUBCASE("verified accounts are excluded by default") {
        r.verified = true;
        CHECK_FALSE(passes_filters(r, FilterConfig{}));
        CHECK(passes_filters(r, FilterConfig{.exclude_verified = false}));
    }
    SUBCASE("hashtag threshold") {
        FilterConfig f;
        f.min_hashtags = 1;
        CHECK_FALSE(passes_filters(r, f));
        r.hashtags = std::vector<std::string>{"eu"};
        CHECK(passes_filters(r, f));
    }
    SUBCASE("all conditions met") {
        r.hashtags = std::vector<std::string>{"a", "b"};
        r.mentions = std::vector<std::string>{"c"};
        CHECK(passes_filters(r, FilterConfig{}));
    }
    SUBCASE("pure predicate") {
        FilterConfig f{.exclude_verified = true, .min_hashtags = 1, .min_mentions = 1};
        r.hashtags = std::vector<std::string>{"a"};
        r.mentions = std::vector<std::string>{"b"};
        bool first = passes_filters(r, f);
        for (int i = 0; i < 5; ++i) CHECK(passes_filters(r, f) == first);
    }
}

TEST_CASE("preprocess is idempotent on its own tokens") {
    std::mt19937_64 rng(11);
    const std::string pieces[] = {"Hello", "WORLD!", "#tag", "@who", "https://x.y/z",
                                  "the", "cats,", "dog's", "42", "a"};
    std::uniform_int_distribution<int> pick(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        for (int i = 0; i < 6; ++i) text += std::string(pieces[pick(rng)]) + " ";
        RawRecord r;
        r.id = "t";
        r.user_id = "u";
        r.text = text;
        Document d1 = preprocess(r, PreprocessConfig{}, WindowSpec{});

        std::string joined;
        for (const auto& tok : d1.tokens) joined += tok + " ";
        RawRecord r2 = r;
        r2.text = joined;
        Document d2 = preprocess(r2, PreprocessConfig{}, WindowSpec{});
        CHECK(d1.tokens == d2.tokens);

        for (const auto& tok : d1.tokens) {
            CHECK(tok.find("http") != 0);
            CHECK(tok[0] != '#');
            CHECK(tok[0] != '@');
            CHECK(std::none_of(tok.begin(), tok.end(),
                               [](unsigned char c) { return std::isupper(c); }));
        }
    }
}

TEST_CASE("epoch is monotone over a timestamp-ordered stream") {
    WindowSpec w{0, 900};
    std::int64_t prev_epoch = -1;
    for (std::int64_t ts : {0, 10, 899, 900, 1800, 5000, 5000, 9001}) {
        RawRecord r;
        r.id = "t";
        r.user_id = "u";
        r.timestamp = ts;
        r.text = "x";
        Document d = preprocess(r, PreprocessConfig{}, w);
        CHECK(d.epoch >= prev_epoch);
        prev_epoch = d.epoch;
    }
}

TEST_CASE("ingest_stream counts filtered records") {
    std::istringstream in(
        R"({"id":"1","user_id":"a","timestamp":0,"text":"hi","verified":true})"
        "\n"
        R"({"id":"2","user_id":"b","timestamp":5,"text":"hi there","verified":false})"
        "\n");
    std::vector<Document> docs;
    IngestStats stats =
        ingest_stream(in, PreprocessConfig{}, FilterConfig{}, WindowSpec{},
                      [&](Document d) { docs.push_back(std::move(d)); });
    CHECK(stats.read == 2);
    CHECK(stats.filtered_out == 1);
    CHECK(stats.emitted == 1);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].id == "2");
}

TEST_CASE("load_stopwords lowercases entries") {
    std::istringstream in("The AND\nor\n");
    auto words = load_stopwords(in);
    CHECK(words == std::set<std::string>{"the", "and", "or"});
}
