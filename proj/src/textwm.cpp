#include "wmkit/textwm.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace wmkit::text {

namespace {

constexpr std::uint64_t kLexiconHash = 0x1df26dc2e88f2a93ull;

bool is_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string lexicon_path() {
    if (const char* env = std::getenv("WMKIT_DATA_DIR"))
        return std::string(env) + "/marker_lexicon.txt";
    return std::string(WMKIT_SOURCE_DIR) + "/data/marker_lexicon.txt";
}

std::vector<std::string> load_lexicon() {
    std::string path = lexicon_path();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open marker lexicon at " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string raw = ss.str();
    if (fnv1a64(raw) != kLexiconHash)
        throw DecodeError("marker lexicon content hash mismatch at " + path);
    std::vector<std::string> words;
    std::istringstream lines(raw);
    std::string w;
    while (std::getline(lines, w))
        if (!w.empty()) words.push_back(w);
    if (words.size() < 512) throw DecodeError("marker lexicon too small");
    return words;
}

}  // namespace

const std::vector<std::string>& marker_lexicon() {
    static const std::vector<std::string> lex = load_lexicon();
    return lex;
}

std::size_t count_whole_word(const std::string& text, const std::string& word) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(word, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !is_letter(text[pos - 1]);
        std::size_t end = pos + word.size();
        bool right_ok = end >= text.size() || !is_letter(text[end]);
        if (left_ok && right_ok) ++count;
        pos += 1;
    }
    return count;
}

std::vector<std::string> marker_table(SecretKey key, int payload_bits,
                                      const std::string* avoid) {
    const auto& lex = marker_lexicon();
    std::vector<std::string> table;
    std::set<std::string> used;
    for (int row = 0; row < payload_bits; ++row) {
        KeyStream stream = derive_stream(key, "text-marker", static_cast<std::uint64_t>(row));
        int collision_redraws = 0;
        for (int slot = 0; slot < 2; ++slot) {
            for (;;) {
                const std::string& w = lex[stream.next_u64() % lex.size()];
                if (used.contains(w)) continue;  // without replacement
                if (avoid && count_whole_word(*avoid, w) > 0) {
                    if (++collision_redraws > 16)
                        throw CollisionError("marker words keep colliding with the document");
                    continue;
                }
                used.insert(w);
                table.push_back(w);
                break;
            }
        }
    }
    return table;
}

std::vector<std::pair<std::size_t, std::size_t>> split_sentences(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::size_t start = 0;
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if ((c == '.' || c == '!' || c == '?') &&
            (i + 1 == text.size() || is_space(text[i + 1]))) {
            spans.emplace_back(start, i + 1);
            start = i + 1;
            while (start < text.size() && is_space(text[start])) ++start;
            i = start == 0 ? i : start - 1;
        }
    }
    if (start < text.size()) {
        // whole-tail fallback, trimmed of pure whitespace
        std::size_t end = text.size();
        bool all_space = true;
        for (std::size_t i = start; i < end; ++i)
            if (!is_space(text[i])) all_space = false;
        if (!all_space) spans.emplace_back(start, end);
    }
    return spans;
}

TextDocument embed_hidden(const TextDocument& doc, const MessagePayload& payload,
                          SecretKey key, const TextWmParams& p) {
    if (static_cast<int>(payload.size()) != p.payload_bits)
        throw BadParams("payload length must equal configured payload_bits");
    auto spans = split_sentences(doc.content);
    if (static_cast<int>(spans.size()) < p.min_sentences)
        throw TextTooShort("document has fewer sentences than min_sentences");

    auto table = marker_table(key, p.payload_bits, &doc.content);
    const std::size_t L = payload.size();

    std::string out;
    out.reserve(doc.content.size() + spans.size() * 16);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        auto [begin, end] = spans[i];
        out.append(doc.content, cursor, begin - cursor);  // inter-span whitespace
        const std::string& word = table[2 * (i % L) + payload[i % L]];
        char last = doc.content[end - 1];
        if (last == '.' || last == '!' || last == '?') {
            out.append(doc.content, begin, end - 1 - begin);
            out += ", ";
            out += word;
            out += last;
        } else {
            out.append(doc.content, begin, end - begin);
            out += ' ';
            out += word;
        }
        cursor = end;
    }
    out.append(doc.content, cursor, doc.content.size() - cursor);
    return TextDocument{std::move(out)};
}

ExtractionResult extract_hidden(const TextDocument& doc, SecretKey key,
                                const TextWmParams& p) {
    auto table = marker_table(key, p.payload_bits);
    ExtractionResult res;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(p.payload_bits), 0);
    int resolved = 0;
    for (int b = 0; b < p.payload_bits; ++b) {
        std::size_t zero = count_whole_word(doc.content, table[2 * static_cast<std::size_t>(b)]);
        std::size_t one = count_whole_word(doc.content, table[2 * static_cast<std::size_t>(b) + 1]);
        if (one > zero) {
            bits[static_cast<std::size_t>(b)] = 1;
            ++resolved;
        } else if (zero > one) {
            ++resolved;
        }
        // tie or none: bit stays 0, position unresolved
    }
    res.bits = std::move(bits);
    res.confidence = static_cast<double>(resolved) / p.payload_bits;
    res.detected = res.confidence >= p.detect_threshold;
    return res;
}

TextDocument embed_visible(const TextDocument& doc, const std::string& label) {
    std::string line = label + "\n";
    if (doc.content.rfind(line, 0) == 0 || doc.content == label) return doc;
    return TextDocument{line + doc.content};
}

ExtractionResult detect_visible(const TextDocument& doc, const std::string& label) {
    ExtractionResult res;
    bool present = doc.content.rfind(label + "\n", 0) == 0 || doc.content == label;
    res.confidence = present ? 1.0 : 0.0;
    res.detected = res.confidence >= 1.0;
    return res;
}

}  // namespace wmkit::text
