#pragma once

#include <array>

#include "wmkit/config.hpp"
#include "wmkit/keystream.hpp"
#include "wmkit/media.hpp"
#include "wmkit/payload.hpp"

namespace wmkit::audio {

// Windowed time-domain spread spectrum. Each window carries one symbol of
// a repeating period: sync_bits windows of the public sync pattern
// followed by payload_bits payload windows. The sync pattern lets the
// detector align to the period after excision; chips stay keyed.
struct AudioWmParams {
    int window = 4096;
    double gain = 0.05;  // fraction of window RMS
    int sync_bits = 16;
    int payload_bits = 32;
    double window_threshold = 0.5;
    double detect_threshold = 3.0;  // z-score units
    double rms_floor = 0.01;

    int period() const { return sync_bits + payload_bits; }

    static AudioWmParams from_config(const EngineConfig& cfg) {
        const auto& a = cfg.audio.watermark;
        return {a.window, a.gain, a.sync_bits, a.payload_bits,
                a.window_threshold, a.detect_threshold, 0.01};
    }
};

// Public, unkeyed sync pattern, MSB-first.
constexpr unsigned kSyncPattern = 0xB7C3;

inline int sync_bit(int q) { return (kSyncPattern >> (15 - q)) & 1; }

struct ToneParams {
    double tone_ms = 125.0;

    static ToneParams from_config(const EngineConfig& cfg) {
        return {cfg.audio.visible_mark.tone_ms};
    }
};

// 8-tone audible signature prepended as the visible compliance mark.
constexpr std::array<double, 8> kToneFrequencies{600, 900, 1200, 1500,
                                                 1800, 2100, 2400, 2700};
constexpr double kToneAmplitude = 0.3;

AudioClip embed_hidden(const AudioClip& clip, const MessagePayload& payload,
                       SecretKey key, const AudioWmParams& p);
ExtractionResult extract_hidden(const AudioClip& clip, SecretKey key,
                                const AudioWmParams& p);

AudioClip embed_visible(const AudioClip& clip, const ToneParams& p);
ExtractionResult detect_visible(const AudioClip& clip, const ToneParams& p);

}  // namespace wmkit::audio
