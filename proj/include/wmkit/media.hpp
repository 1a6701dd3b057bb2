#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wmkit/errors.hpp"

namespace wmkit {

// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3 (RGB).
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> samples;

    std::uint8_t at(int x, int y, int c) const {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool valid() const {
        return width >= 1 && height >= 1 && (channels == 1 || channels == 3) &&
               samples.size() == static_cast<std::size_t>(width) * height * channels;
    }

    bool operator==(const ImageBuffer&) const = default;
};

// Ordered frames, all with identical dimensions and channel count.
struct VideoClip {
    std::vector<ImageBuffer> frames;
    double fps = 1.0;

    bool valid() const {
        if (frames.empty() || !(fps > 0.0)) return false;
        for (const auto& f : frames) {
            if (!f.valid()) return false;
            if (f.width != frames[0].width || f.height != frames[0].height ||
                f.channels != frames[0].channels)
                return false;
        }
        return true;
    }

    bool operator==(const VideoClip&) const = default;
};

// Planar floating-point audio in [-1, 1], one Eigen array per channel.
struct AudioClip {
    int sample_rate = 0;
    std::vector<Eigen::ArrayXd> channels;

    Eigen::Index length() const { return channels.empty() ? 0 : channels[0].size(); }

    bool valid() const {
        if (sample_rate < 8000) return false;
        if (channels.empty() || channels.size() > 2) return false;
        for (const auto& ch : channels) {
            if (ch.size() != channels[0].size()) return false;
            if ((ch.abs() > 1.0 + 1e-12).any()) return false;
        }
        return true;
    }
};

struct TextDocument {
    std::string content;
    bool operator==(const TextDocument&) const = default;
};

enum class Modality { Image, Video, Audio, Text };

enum class OperationMode { Watermark, VisibleMark };

// Tagged union over the four carrier types; the variant index is the tag.
struct MediaObject {
    std::variant<ImageBuffer, VideoClip, AudioClip, TextDocument> value;

    Modality modality() const { return static_cast<Modality>(value.index()); }

    const ImageBuffer& image() const { return std::get<ImageBuffer>(value); }
    const VideoClip& video() const { return std::get<VideoClip>(value); }
    const AudioClip& audio() const { return std::get<AudioClip>(value); }
    const TextDocument& text() const { return std::get<TextDocument>(value); }
};

inline const char* modality_name(Modality m) {
    switch (m) {
        case Modality::Image: return "image";
        case Modality::Video: return "video";
        case Modality::Audio: return "audio";
        case Modality::Text: return "text";
    }
    return "?";
}

// Half-open [start, end) ranges in samples (audio) or frames (video).
using Segment = std::pair<std::int64_t, std::int64_t>;

struct ExtractionResult {
    bool detected = false;
    double confidence = 0.0;
    std::optional<std::vector<std::uint8_t>> bits;
    std::optional<std::vector<Segment>> segments;

    std::size_t bit_count() const { return bits ? bits->size() : 0; }
};

}  // namespace wmkit
