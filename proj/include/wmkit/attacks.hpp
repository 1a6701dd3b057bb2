#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wmkit/media.hpp"

namespace wmkit::attacks {

// Named distortion with typed scalar parameters. Stochastic attacks use
// their own seed, independent of any watermark key, so benchmark runs
// stay reproducible.
struct AttackSpec {
    std::string name;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
};

// The identity attack every suite implicitly includes.
inline AttackSpec identity_attack() { return {"none", {}, 0}; }

ImageBuffer apply_image_attack(const ImageBuffer& img, const AttackSpec& spec);
VideoClip apply_video_attack(const VideoClip& clip, const AttackSpec& spec);
AudioClip apply_audio_attack(const AudioClip& clip, const AttackSpec& spec);
TextDocument apply_text_attack(const TextDocument& doc, const AttackSpec& spec);

MediaObject apply_attack(const MediaObject& media, const AttackSpec& spec);

}  // namespace wmkit::attacks
