#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "wmkit/dataset.hpp"
#include "wmkit/metrics.hpp"
#include "wmkit/textwm.hpp"

using namespace wmkit;

namespace {

const text::TextWmParams kParams{};

TextDocument sample_doc(int sentences, std::uint64_t seed) {
    bench::DatasetSpec spec;
    spec.modality = Modality::Text;
    spec.count = 1;
    spec.seed = seed;
    spec.sentences = sentences;
    return bench::generate_item(spec, 0).text();
}

MessagePayload payload16(std::uint64_t seed) {
    KeyStream ps(SecretKey{seed}, "payload", 0);
    return MessagePayload::random(ps, 16);
}

}  // namespace

TEST_CASE("lexicon: >= 512 distinct lowercase words, stable order") {
    const auto& lex = text::marker_lexicon();
    CHECK(lex.size() >= 512);
    std::set<std::string> uniq(lex.begin(), lex.end());
    CHECK(uniq.size() == lex.size());
    for (const auto& w : lex) {
        CHECK(!w.empty());
        for (char c : w) CHECK((c >= 'a' && c <= 'z'));
    }
}

TEST_CASE("split_sentences reconstructs the input exactly") {
    auto check_roundtrip = [](const std::string& s) {
        auto spans = text::split_sentences(s);
        // spans are ordered, non-overlapping; text between spans is whitespace
        std::size_t pos = 0;
        for (const auto& [b, e] : spans) {
            CHECK(b >= pos);
            for (std::size_t i = pos; i < b; ++i)
                CHECK((s[i] == ' ' || s[i] == '\n' || s[i] == '\t' || s[i] == '\r'));
            CHECK(e > b);
            pos = e;
        }
        for (std::size_t i = pos; i < s.size(); ++i)
            CHECK((s[i] == ' ' || s[i] == '\n' || s[i] == '\t' || s[i] == '\r'));
    };
    check_roundtrip("A cat. A dog! Fish?");
    check_roundtrip("One sentence without terminator");
    check_roundtrip("  Leading space. Trailing.  ");
    check_roundtrip(sample_doc(24, 1).content);

    CHECK(text::split_sentences("A cat. A dog!").size() == 2);
    CHECK(text::split_sentences("no terminator at all").size() == 1);
    CHECK(text::split_sentences("").empty());
}

TEST_CASE("marker_table: deterministic, distinct, lexicon membership") {
    auto a = text::marker_table(SecretKey{42}, 16);
    auto b = text::marker_table(SecretKey{42}, 16);
    CHECK(a == b);
    CHECK(a.size() == 32);
    std::set<std::string> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());  // drawn without replacement
    const auto& lex = text::marker_lexicon();
    std::set<std::string> lexset(lex.begin(), lex.end());
    for (const auto& w : a) CHECK(lexset.count(w) == 1);

    auto c = text::marker_table(SecretKey{43}, 16);
    CHECK(a != c);
}

TEST_CASE("marker_table avoids words already present in the document") {
    auto base = text::marker_table(SecretKey{9}, 16);
    std::string doc = "The " + base[0] + " idea, " + base[1] + " in nature.";
    auto avoided = text::marker_table(SecretKey{9}, 16, &doc);
    for (const auto& w : avoided) CHECK(text::count_whole_word(doc, w) == 0);
}

TEST_CASE("embed inserts exactly one marker word per sentence") {
    TextDocument doc = sample_doc(8, 2);
    auto payload = payload16(2);
    TextDocument marked = text::embed_hidden(doc, payload, SecretKey{5}, kParams);

    auto before = text::split_sentences(doc.content);
    auto after = text::split_sentences(marked.content);
    REQUIRE(after.size() == before.size());

    auto table = text::marker_table(SecretKey{5}, 16, &doc.content);
    for (std::size_t i = 0; i < after.size(); ++i) {
        std::string sent = marked.content.substr(after[i].first,
                                                 after[i].second - after[i].first);
        int bit = payload[i % 16];
        const std::string& want = table[2 * (i % 16) + bit];
        CHECK(text::count_whole_word(sent, want) == 1);
        // terminal punctuation preserved
        CHECK(sent.back() == doc.content[before[i].second - 1]);
    }
}

TEST_CASE("round trip: exact bits, confidence 1.0") {
    TextDocument doc = sample_doc(24, 3);
    auto payload = payload16(3);
    TextDocument marked = text::embed_hidden(doc, payload, SecretKey{6}, kParams);
    ExtractionResult res = text::extract_hidden(marked, SecretKey{6}, kParams);
    CHECK(res.detected);
    CHECK(res.confidence == 1.0);
    CHECK(*res.bits == payload.bits());
}

TEST_CASE("removing the inserted words reproduces the original text") {
    TextDocument doc = sample_doc(8, 4);
    auto payload = payload16(4);
    TextDocument marked = text::embed_hidden(doc, payload, SecretKey{7}, kParams);
    CHECK(marked.content != doc.content);
    // strip every ", <word>" that embed could have added
    std::string stripped = marked.content;
    for (const auto& w : text::marker_table(SecretKey{7}, 16, &doc.content)) {
        std::string needle = ", " + w;
        for (std::size_t at; (at = stripped.find(needle)) != std::string::npos;)
            stripped.erase(at, needle.size());
    }
    CHECK(stripped == doc.content);
}

TEST_CASE("too few sentences is rejected") {
    TextDocument doc;
    doc.content = "One. Two. Three.";
    CHECK_THROWS_AS(text::embed_hidden(doc, payload16(5), SecretKey{8}, kParams),
                    TextTooShort);
}

TEST_CASE("wrong key: not detected") {
    TextDocument doc = sample_doc(24, 6);
    TextDocument marked = text::embed_hidden(doc, payload16(6), SecretKey{10}, kParams);
    int detected = 0;
    for (int t = 0; t < 20; ++t)
        detected += text::extract_hidden(marked, SecretKey{400 + static_cast<unsigned>(t)},
                                         kParams)
                            .detected
                        ? 1
                        : 0;
    CHECK(detected <= 1);
}

TEST_CASE("unmarked text is not detected") {
    int detected = 0;
    for (int t = 0; t < 20; ++t)
        detected +=
            text::extract_hidden(sample_doc(24, 100 + static_cast<unsigned>(t)),
                                 SecretKey{42}, kParams)
                    .detected
                ? 1
                : 0;
    CHECK(detected <= 1);
}

TEST_CASE("sentence deletion tolerance: n == 2L survives dropping any single sentence") {
    // 32 sentences, L = 16: every position has exactly two carriers.
    TextDocument doc = sample_doc(32, 7);
    auto payload = payload16(7);
    TextDocument marked = text::embed_hidden(doc, payload, SecretKey{11}, kParams);
    auto spans = text::split_sentences(marked.content);
    REQUIRE(spans.size() == 32);
    for (std::size_t drop = 0; drop < spans.size(); ++drop) {
        std::string damaged;
        for (std::size_t i = 0; i < spans.size(); ++i) {
            if (i == drop) continue;
            if (!damaged.empty()) damaged += ' ';
            damaged += marked.content.substr(spans[i].first,
                                             spans[i].second - spans[i].first);
        }
        TextDocument d{damaged};
        ExtractionResult res = text::extract_hidden(d, SecretKey{11}, kParams);
        CHECK(res.detected);
        CHECK(*res.bits == payload.bits());
    }
}

TEST_CASE("visible label: prefix, idempotent, detected") {
    TextDocument doc = sample_doc(6, 8);
    const std::string label = "[AI-GENERATED]";
    TextDocument marked = text::embed_visible(doc, label);
    CHECK(marked.content == label + "\n" + doc.content);
    CHECK(text::embed_visible(marked, label).content == marked.content);
    CHECK(text::detect_visible(marked, label).detected);
    CHECK(!text::detect_visible(doc, label).detected);
}

TEST_CASE("count_whole_word respects boundaries") {
    CHECK(text::count_whole_word("the cat, cats and cat.", "cat") == 2);
    CHECK(text::count_whole_word("concatenate", "cat") == 0);
    CHECK(text::count_whole_word("cat", "cat") == 1);
    CHECK(text::count_whole_word("", "cat") == 0);
}
