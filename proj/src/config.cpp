#include "wmkit/config.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <sstream>

#include "wmkit/errors.hpp"
#include "wmkit/keystream.hpp"

namespace wmkit {

namespace {

[[noreturn]] void unknown_key(const std::string& path) {
    throw UnknownConfigKey("unknown configuration key: " + path);
}

template <typename T>
T get_scalar(const YAML::Node& node, const std::string& path) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigParseError("cannot parse value at " + path);
    }
}

void require_range(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw OutOfRangeValue("configuration value out of range at " + path + ": " + what);
}

void require_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) throw ConfigParseError("expected a mapping at " + path);
}

void parse_image_watermark(const YAML::Node& n, EngineConfig::ImageWatermark& c) {
    require_map(n, "image.watermark");
    for (const auto& kv : n) {
        auto key = kv.first.as<std::string>();
        if (key == "algorithm") c.algorithm = get_scalar<std::string>(kv.second, "image.watermark.algorithm");
        else if (key == "strength") c.strength = get_scalar<double>(kv.second, "image.watermark.strength");
        else if (key == "block") c.block = get_scalar<int>(kv.second, "image.watermark.block");
        else if (key == "detect_threshold") c.detect_threshold = get_scalar<double>(kv.second, "image.watermark.detect_threshold");
        else unknown_key("image.watermark." + key);
    }
}

void parse_audio_watermark(const YAML::Node& n, EngineConfig::AudioWatermark& c) {
    require_map(n, "audio.watermark");
    for (const auto& kv : n) {
        auto key = kv.first.as<std::string>();
        if (key == "algorithm") c.algorithm = get_scalar<std::string>(kv.second, "audio.watermark.algorithm");
        else if (key == "window") c.window = get_scalar<int>(kv.second, "audio.watermark.window");
        else if (key == "gain") c.gain = get_scalar<double>(kv.second, "audio.watermark.gain");
        else if (key == "sync_bits") c.sync_bits = get_scalar<int>(kv.second, "audio.watermark.sync_bits");
        else if (key == "payload_bits") c.payload_bits = get_scalar<int>(kv.second, "audio.watermark.payload_bits");
        else if (key == "window_threshold") c.window_threshold = get_scalar<double>(kv.second, "audio.watermark.window_threshold");
        else if (key == "detect_threshold") c.detect_threshold = get_scalar<double>(kv.second, "audio.watermark.detect_threshold");
        else unknown_key("audio.watermark." + key);
    }
}

void parse_text_watermark(const YAML::Node& n, EngineConfig::TextWatermark& c) {
    require_map(n, "text.watermark");
    for (const auto& kv : n) {
        auto key = kv.first.as<std::string>();
        if (key == "algorithm") c.algorithm = get_scalar<std::string>(kv.second, "text.watermark.algorithm");
        else if (key == "payload_bits") c.payload_bits = get_scalar<int>(kv.second, "text.watermark.payload_bits");
        else if (key == "min_sentences") c.min_sentences = get_scalar<int>(kv.second, "text.watermark.min_sentences");
        else if (key == "detect_threshold") c.detect_threshold = get_scalar<double>(kv.second, "text.watermark.detect_threshold");
        else unknown_key("text.watermark." + key);
    }
}

void overlay(const YAML::Node& root, EngineConfig& cfg) {
    require_map(root, "<root>");
    for (const auto& section : root) {
        auto name = section.first.as<std::string>();
        const YAML::Node& body = section.second;
        if (name == "engine") {
            require_map(body, "engine");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "default_message_bits")
                    cfg.engine.default_message_bits = get_scalar<int>(kv.second, "engine.default_message_bits");
                else unknown_key("engine." + key);
            }
        } else if (name == "image") {
            require_map(body, "image");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "watermark") parse_image_watermark(kv.second, cfg.image.watermark);
                else if (key == "visible_mark") {
                    require_map(kv.second, "image.visible_mark");
                    for (const auto& vk : kv.second) {
                        auto vkey = vk.first.as<std::string>();
                        if (vkey == "corner") cfg.image.visible_mark.corner = get_scalar<std::string>(vk.second, "image.visible_mark.corner");
                        else if (vkey == "scale") cfg.image.visible_mark.scale = get_scalar<double>(vk.second, "image.visible_mark.scale");
                        else unknown_key("image.visible_mark." + vkey);
                    }
                } else unknown_key("image." + key);
            }
        } else if (name == "video") {
            require_map(body, "video");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "aggregate") cfg.video.aggregate = get_scalar<std::string>(kv.second, "video.aggregate");
                else unknown_key("video." + key);
            }
        } else if (name == "audio") {
            require_map(body, "audio");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "watermark") parse_audio_watermark(kv.second, cfg.audio.watermark);
                else if (key == "visible_mark") {
                    require_map(kv.second, "audio.visible_mark");
                    for (const auto& vk : kv.second) {
                        auto vkey = vk.first.as<std::string>();
                        if (vkey == "tone_ms") cfg.audio.visible_mark.tone_ms = get_scalar<double>(vk.second, "audio.visible_mark.tone_ms");
                        else unknown_key("audio.visible_mark." + vkey);
                    }
                } else unknown_key("audio." + key);
            }
        } else if (name == "text") {
            require_map(body, "text");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "watermark") parse_text_watermark(kv.second, cfg.text.watermark);
                else if (key == "visible_mark") {
                    require_map(kv.second, "text.visible_mark");
                    for (const auto& vk : kv.second) {
                        auto vkey = vk.first.as<std::string>();
                        if (vkey == "label") cfg.text.visible_mark.label = get_scalar<std::string>(vk.second, "text.visible_mark.label");
                        else unknown_key("text.visible_mark." + vkey);
                    }
                } else unknown_key("text." + key);
            }
        } else if (name == "bench") {
            require_map(body, "bench");
            for (const auto& kv : body) {
                auto key = kv.first.as<std::string>();
                if (key == "seed") cfg.bench.seed = get_scalar<std::uint64_t>(kv.second, "bench.seed");
                else if (key == "trials") cfg.bench.trials = get_scalar<int>(kv.second, "bench.trials");
                else if (key == "output_dir") cfg.bench.output_dir = get_scalar<std::string>(kv.second, "bench.output_dir");
                else unknown_key("bench." + key);
            }
        } else {
            unknown_key(name);
        }
    }
}

void validate(const EngineConfig& c) {
    require_range(c.engine.default_message_bits >= 1 && c.engine.default_message_bits <= 256,
                  "engine.default_message_bits", "must be in 1..256");
    require_range(c.image.watermark.algorithm == "dct_ss", "image.watermark.algorithm",
                  "the only supported algorithm is 'dct_ss'");
    require_range(c.image.watermark.strength > 0, "image.watermark.strength", "must be > 0");
    require_range(c.image.watermark.block == 8, "image.watermark.block", "must be 8");
    require_range(c.image.watermark.detect_threshold > 0, "image.watermark.detect_threshold", "must be > 0");
    require_range(c.image.visible_mark.corner == "bottom_right" || c.image.visible_mark.corner == "bottom_left" ||
                      c.image.visible_mark.corner == "top_right" || c.image.visible_mark.corner == "top_left",
                  "image.visible_mark.corner", "must be one of the four corners");
    require_range(c.image.visible_mark.scale > 0 && c.image.visible_mark.scale <= 0.5,
                  "image.visible_mark.scale", "must be in (0, 0.5]");
    require_range(c.video.aggregate == "mean", "video.aggregate", "the only supported aggregate is 'mean'");
    require_range(c.audio.watermark.algorithm == "window_ss", "audio.watermark.algorithm",
                  "the only supported algorithm is 'window_ss'");
    require_range(c.audio.watermark.window >= 256, "audio.watermark.window", "must be >= 256");
    require_range(c.audio.watermark.gain > 0 && c.audio.watermark.gain < 0.5,
                  "audio.watermark.gain", "must be in (0, 0.5)");
    require_range(c.audio.watermark.sync_bits >= 1 && c.audio.watermark.sync_bits <= 16,
                  "audio.watermark.sync_bits", "must be in 1..16");
    require_range(c.audio.watermark.payload_bits >= 1 && c.audio.watermark.payload_bits <= 256,
                  "audio.watermark.payload_bits", "must be in 1..256");
    require_range(c.audio.watermark.sync_bits + c.audio.watermark.payload_bits >= 2,
                  "audio.watermark", "pattern period must be >= 2 windows");
    require_range(c.audio.watermark.window_threshold > 0 && c.audio.watermark.window_threshold <= 1,
                  "audio.watermark.window_threshold", "must be in (0, 1]");
    require_range(c.audio.watermark.detect_threshold > 0, "audio.watermark.detect_threshold", "must be > 0");
    require_range(c.audio.visible_mark.tone_ms >= 1 && c.audio.visible_mark.tone_ms <= 1000,
                  "audio.visible_mark.tone_ms", "must be in [1, 1000]");
    require_range(c.text.watermark.algorithm == "lexical", "text.watermark.algorithm",
                  "the only supported algorithm is 'lexical'");
    require_range(c.text.watermark.payload_bits >= 1 && c.text.watermark.payload_bits <= 256,
                  "text.watermark.payload_bits", "must be in 1..256");
    require_range(c.text.watermark.min_sentences >= 1, "text.watermark.min_sentences", "must be >= 1");
    require_range(c.text.watermark.detect_threshold > 0 && c.text.watermark.detect_threshold <= 1,
                  "text.watermark.detect_threshold", "must be in (0, 1]");
    require_range(!c.text.visible_mark.label.empty(), "text.visible_mark.label", "must be non-empty");
    require_range(c.bench.trials >= 1, "bench.trials", "must be >= 1");
    require_range(!c.bench.output_dir.empty(), "bench.output_dir", "must be non-empty");
}

}  // namespace

EngineConfig load_config(const std::optional<std::string>& path) {
    EngineConfig cfg;
    if (path) {
        if (!std::filesystem::exists(*path))
            throw IoError("config file not found: " + *path);
        YAML::Node root;
        try {
            root = YAML::LoadFile(*path);
        } catch (const YAML::Exception& e) {
            throw ConfigParseError(std::string("YAML parse error: ") + e.what());
        }
        if (root.IsDefined() && !root.IsNull()) overlay(root, cfg);
    }
    validate(cfg);
    return cfg;
}

std::string EngineConfig::canonical_dump() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << "engine.default_message_bits=" << engine.default_message_bits << '\n'
       << "image.watermark.algorithm=" << image.watermark.algorithm << '\n'
       << "image.watermark.strength=" << image.watermark.strength << '\n'
       << "image.watermark.block=" << image.watermark.block << '\n'
       << "image.watermark.detect_threshold=" << image.watermark.detect_threshold << '\n'
       << "image.visible_mark.corner=" << image.visible_mark.corner << '\n'
       << "image.visible_mark.scale=" << image.visible_mark.scale << '\n'
       << "video.aggregate=" << video.aggregate << '\n'
       << "audio.watermark.algorithm=" << audio.watermark.algorithm << '\n'
       << "audio.watermark.window=" << audio.watermark.window << '\n'
       << "audio.watermark.gain=" << audio.watermark.gain << '\n'
       << "audio.watermark.sync_bits=" << audio.watermark.sync_bits << '\n'
       << "audio.watermark.payload_bits=" << audio.watermark.payload_bits << '\n'
       << "audio.watermark.window_threshold=" << audio.watermark.window_threshold << '\n'
       << "audio.watermark.detect_threshold=" << audio.watermark.detect_threshold << '\n'
       << "audio.visible_mark.tone_ms=" << audio.visible_mark.tone_ms << '\n'
       << "text.watermark.algorithm=" << text.watermark.algorithm << '\n'
       << "text.watermark.payload_bits=" << text.watermark.payload_bits << '\n'
       << "text.watermark.min_sentences=" << text.watermark.min_sentences << '\n'
       << "text.watermark.detect_threshold=" << text.watermark.detect_threshold << '\n'
       << "text.visible_mark.label=" << text.visible_mark.label << '\n'
       << "bench.seed=" << bench.seed << '\n'
       << "bench.trials=" << bench.trials << '\n'
       << "bench.output_dir=" << bench.output_dir << '\n';
    return ss.str();
}

std::uint64_t EngineConfig::digest() const { return fnv1a64(canonical_dump()); }

}  // namespace wmkit
