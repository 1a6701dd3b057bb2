#include "wmkit/engine.hpp"

#include "wmkit/media_io.hpp"

namespace wmkit {

const VisualBackend& Engine::visual_backend() const {
    std::call_once(visual_once_, [this] {
        visual_ = std::make_unique<VisualBackend>(VisualBackend{
            visual::VisualWmParams::from_config(cfg_), visual::BadgeParams::from_config(cfg_)});
        counters_[static_cast<std::size_t>(BackendKind::Visual)].fetch_add(1);
    });
    return *visual_;
}

const AudioBackend& Engine::audio_backend() const {
    std::call_once(audio_once_, [this] {
        audio_ = std::make_unique<AudioBackend>(AudioBackend{
            audio::AudioWmParams::from_config(cfg_), audio::ToneParams::from_config(cfg_)});
        counters_[static_cast<std::size_t>(BackendKind::Audio)].fetch_add(1);
    });
    return *audio_;
}

const TextBackend& Engine::text_backend() const {
    std::call_once(text_once_, [this] {
        text::marker_lexicon();  // loads and hash-checks the bundled lexicon
        text_ = std::make_unique<TextBackend>(TextBackend{
            text::TextWmParams::from_config(cfg_), cfg_.text.visible_mark.label});
        counters_[static_cast<std::size_t>(BackendKind::Text)].fetch_add(1);
    });
    return *text_;
}

BackendKind Engine::get_or_init_adapter(Modality modality, OperationMode) const {
    switch (modality) {
        case Modality::Image:
        case Modality::Video:
            visual_backend();
            return BackendKind::Visual;
        case Modality::Audio:
            audio_backend();
            return BackendKind::Audio;
        case Modality::Text:
            text_backend();
            return BackendKind::Text;
    }
    throw BadParams("invalid modality");
}

MediaObject Engine::embed(const MediaObject& media, OperationMode mode,
                          const std::optional<MessagePayload>& payload,
                          SecretKey key) const {
    if (mode == OperationMode::Watermark && !payload)
        throw PayloadRequired("Watermark mode requires a message payload");
    get_or_init_adapter(media.modality(), mode);

    switch (media.modality()) {
        case Modality::Image: {
            // the image pathway IS the 1-frame video pathway
            VideoClip clip = io::image_as_clip(media.image());
            const auto& b = visual_backend();
            VideoClip out = mode == OperationMode::Watermark
                                ? visual::embed_hidden(clip, *payload, key, b.watermark)
                                : visual::embed_visible(clip, b.badge);
            return MediaObject{io::clip_as_image(out)};
        }
        case Modality::Video: {
            const auto& b = visual_backend();
            return MediaObject{mode == OperationMode::Watermark
                                   ? visual::embed_hidden(media.video(), *payload, key, b.watermark)
                                   : visual::embed_visible(media.video(), b.badge)};
        }
        case Modality::Audio: {
            const auto& b = audio_backend();
            return MediaObject{mode == OperationMode::Watermark
                                   ? audio::embed_hidden(media.audio(), *payload, key, b.watermark)
                                   : audio::embed_visible(media.audio(), b.tone)};
        }
        case Modality::Text: {
            const auto& b = text_backend();
            return MediaObject{mode == OperationMode::Watermark
                                   ? text::embed_hidden(media.text(), *payload, key, b.watermark)
                                   : text::embed_visible(media.text(), b.label)};
        }
    }
    throw BadParams("invalid media object");
}

ExtractionResult Engine::extract(const MediaObject& media, OperationMode mode,
                                 SecretKey key) const {
    get_or_init_adapter(media.modality(), mode);

    switch (media.modality()) {
        case Modality::Image: {
            VideoClip clip = io::image_as_clip(media.image());
            const auto& b = visual_backend();
            return mode == OperationMode::Watermark
                       ? visual::extract_hidden(
                             clip, key,
                             static_cast<std::size_t>(cfg_.engine.default_message_bits),
                             b.watermark)
                       : visual::detect_visible(clip, b.badge);
        }
        case Modality::Video: {
            const auto& b = visual_backend();
            return mode == OperationMode::Watermark
                       ? visual::extract_hidden(
                             media.video(), key,
                             static_cast<std::size_t>(cfg_.engine.default_message_bits),
                             b.watermark)
                       : visual::detect_visible(media.video(), b.badge);
        }
        case Modality::Audio: {
            const auto& b = audio_backend();
            return mode == OperationMode::Watermark
                       ? audio::extract_hidden(media.audio(), key, b.watermark)
                       : audio::detect_visible(media.audio(), b.tone);
        }
        case Modality::Text: {
            const auto& b = text_backend();
            return mode == OperationMode::Watermark
                       ? text::extract_hidden(media.text(), key, b.watermark)
                       : text::detect_visible(media.text(), b.label);
        }
    }
    throw BadParams("invalid media object");
}

}  // namespace wmkit
