#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wmkit/config.hpp"
#include "wmkit/keystream.hpp"
#include "wmkit/media.hpp"
#include "wmkit/payload.hpp"

namespace wmkit::text {

struct TextWmParams {
    int payload_bits = 16;
    int min_sentences = 4;
    double detect_threshold = 0.7;  // fraction of resolved positions

    static TextWmParams from_config(const EngineConfig& cfg) {
        const auto& t = cfg.text.watermark;
        return {t.payload_bits, t.min_sentences, t.detect_threshold};
    }
};

// Bundled marker lexicon (data/marker_lexicon.txt), content-hash checked
// at load. Ordering is stable; the keyed marker table indexes into it.
const std::vector<std::string>& marker_lexicon();

// L rows x 2 candidate words, drawn without replacement via
// derive_stream(key, "text-marker", row). Row r, bit b -> [2*r + b].
// When `avoid` is given (the document being embedded), candidates that
// already occur in it are redrawn up to 16 times per row.
std::vector<std::string> marker_table(SecretKey key, int payload_bits,
                                      const std::string* avoid = nullptr);

// Byte spans [begin, end) of sentences; splits after '.', '!' or '?'
// followed by whitespace or end-of-text. Concatenating spans plus the
// inter-span whitespace reconstructs the input exactly.
std::vector<std::pair<std::size_t, std::size_t>> split_sentences(const std::string& text);

TextDocument embed_hidden(const TextDocument& doc, const MessagePayload& payload,
                          SecretKey key, const TextWmParams& p);
ExtractionResult extract_hidden(const TextDocument& doc, SecretKey key,
                                const TextWmParams& p);

TextDocument embed_visible(const TextDocument& doc, const std::string& label);
ExtractionResult detect_visible(const TextDocument& doc, const std::string& label);

// Case-sensitive whole-word occurrence count (boundaries: non-letters).
std::size_t count_whole_word(const std::string& text, const std::string& word);

}  // namespace wmkit::text
