#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>

#include "wmkit/audio.hpp"
#include "wmkit/config.hpp"
#include "wmkit/media.hpp"
#include "wmkit/payload.hpp"
#include "wmkit/textwm.hpp"
#include "wmkit/visual.hpp"

namespace wmkit {

// One backend per carrier family. Image and video watermarking share the
// single visual backend.
enum class BackendKind { Visual, Audio, Text };

struct VisualBackend {
    visual::VisualWmParams watermark;
    visual::BadgeParams badge;
};

struct AudioBackend {
    audio::AudioWmParams watermark;
    audio::ToneParams tone;
};

struct TextBackend {
    text::TextWmParams watermark;
    std::string label;
};

// Unified facade: config-driven, with backends constructed lazily,
// exactly once, on first use. Safe to share across threads.
class Engine {
public:
    explicit Engine(EngineConfig cfg) : cfg_(std::move(cfg)) {}

    const EngineConfig& config() const { return cfg_; }

    MediaObject embed(const MediaObject& media, OperationMode mode,
                      const std::optional<MessagePayload>& payload, SecretKey key) const;
    ExtractionResult extract(const MediaObject& media, OperationMode mode,
                             SecretKey key) const;

    // Resolves a (modality, mode) pair to its backend, initializing it on
    // first use. Every pair is supported in v1.
    BackendKind get_or_init_adapter(Modality modality, OperationMode mode) const;

    int init_count(BackendKind kind) const {
        return counters_[static_cast<std::size_t>(kind)].load();
    }

private:
    const VisualBackend& visual_backend() const;
    const AudioBackend& audio_backend() const;
    const TextBackend& text_backend() const;

    EngineConfig cfg_;
    mutable std::once_flag visual_once_, audio_once_, text_once_;
    mutable std::unique_ptr<VisualBackend> visual_;
    mutable std::unique_ptr<AudioBackend> audio_;
    mutable std::unique_ptr<TextBackend> text_;
    mutable std::array<std::atomic<int>, 3> counters_{};
};

}  // namespace wmkit
