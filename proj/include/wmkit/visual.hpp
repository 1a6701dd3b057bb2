#pragma once

#include <array>
#include <utility>

#include "wmkit/config.hpp"
#include "wmkit/keystream.hpp"
#include "wmkit/media.hpp"
#include "wmkit/payload.hpp"

namespace wmkit::visual {

// Additive spread spectrum in 8x8 block-DCT mid-frequencies. The same
// pattern is written on every frame, which makes frame averaging and
// frame dropping watermark-preserving on static clips.
struct VisualWmParams {
    double strength = 2.0;        // DCT-domain amplitude per chip
    double detect_threshold = 3.0;  // z-score units

    static constexpr int kBlock = 8;
    // Zig-zag mid-frequency (row, col) positions carrying the chips.
    static constexpr std::array<std::pair<int, int>, 8> kCoeffs{
        {{1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3}, {3, 2}, {3, 3}}};

    static VisualWmParams from_config(const EngineConfig& cfg) {
        return {cfg.image.watermark.strength, cfg.image.watermark.detect_threshold};
    }
};

struct BadgeParams {
    std::string corner = "bottom_right";
    double scale = 0.08;

    static BadgeParams from_config(const EngineConfig& cfg) {
        return {cfg.image.visible_mark.corner, cfg.image.visible_mark.scale};
    }
};

// 4x4 interior pattern of the fiducial badge, row-major MSB-first.
constexpr unsigned kBadgePattern = 0xA15C;

std::size_t block_capacity(int width, int height);

VideoClip embed_hidden(const VideoClip& clip, const MessagePayload& payload,
                       SecretKey key, const VisualWmParams& p);
ExtractionResult extract_hidden(const VideoClip& clip, SecretKey key,
                                std::size_t payload_bits, const VisualWmParams& p);

VideoClip embed_visible(const VideoClip& clip, const BadgeParams& p);
ExtractionResult detect_visible(const VideoClip& clip, const BadgeParams& p);

}  // namespace wmkit::visual
