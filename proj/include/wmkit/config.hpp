#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace wmkit {

// Typed mirror of the YAML configuration schema. Unknown keys and
// out-of-range values are rejected at load time so a typo can never
// silently skew a benchmark comparison.
struct EngineConfig {
    struct EngineSection {
        int default_message_bits = 64;
    } engine;

    struct ImageWatermark {
        std::string algorithm = "dct_ss";
        double strength = 2.0;
        int block = 8;
        double detect_threshold = 3.0;
    };
    struct ImageVisibleMark {
        std::string corner = "bottom_right";
        double scale = 0.08;
    };
    struct ImageSection {
        ImageWatermark watermark;
        ImageVisibleMark visible_mark;
    } image;

    struct VideoSection {
        std::string aggregate = "mean";  // inherits image.watermark params
    } video;

    struct AudioWatermark {
        std::string algorithm = "window_ss";
        int window = 4096;
        double gain = 0.05;
        int sync_bits = 16;
        int payload_bits = 32;
        double window_threshold = 0.5;
        double detect_threshold = 3.0;
    };
    struct AudioVisibleMark {
        double tone_ms = 125.0;
    };
    struct AudioSection {
        AudioWatermark watermark;
        AudioVisibleMark visible_mark;
    } audio;

    struct TextWatermark {
        std::string algorithm = "lexical";
        int payload_bits = 16;
        int min_sentences = 4;
        double detect_threshold = 0.7;
    };
    struct TextVisibleMark {
        std::string label = "[AI-GENERATED]";
    };
    struct TextSection {
        TextWatermark watermark;
        TextVisibleMark visible_mark;
    } text;

    struct BenchSection {
        std::uint64_t seed = 42;
        int trials = 20;
        std::string output_dir = "bench_out";
    } bench;

    // FNV-1a over the canonical key=value dump; stable across runs.
    std::uint64_t digest() const;
    std::string canonical_dump() const;
};

// Absent path -> built-in defaults. Present path -> defaults overlaid by
// the file's values, with strict schema validation.
EngineConfig load_config(const std::optional<std::string>& path);

}  // namespace wmkit
