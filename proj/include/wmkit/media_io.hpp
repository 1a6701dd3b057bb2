#pragma once

#include <string>

#include "wmkit/media.hpp"

namespace wmkit::io {

enum class ImageFormat { Png, Ppm };

// PNG (8-bit gray/RGB, non-interlaced) or binary PPM (P6) / PGM (P5),
// selected by file content. 16-bit PNGs are rejected, not downconverted.
ImageBuffer load_image(const std::string& path);
void save_image(const ImageBuffer& img, const std::string& path, ImageFormat format);

// Decode from an in-memory byte string (used by fuzz-style tests).
ImageBuffer decode_image(const std::string& bytes);

// Codec-free video carrier: a directory of PNG frames plus manifest.json
// with {"fps": number, "frames": [relative paths]}.
VideoClip load_video(const std::string& manifest_path);
void save_video(const VideoClip& clip, const std::string& dir_path);

// RIFF/WAVE, PCM 16-bit little-endian, 1-2 channels. Load maps sample s
// to s/32768.0; save rounds x*32767 and clamps to [-32768, 32767].
AudioClip load_wav(const std::string& path);
void save_wav(const AudioClip& clip, const std::string& path);

std::string load_text(const std::string& path);
void save_text(const std::string& content, const std::string& path);

VideoClip image_as_clip(const ImageBuffer& img);
ImageBuffer clip_as_image(const VideoClip& clip);

}  // namespace wmkit::io
