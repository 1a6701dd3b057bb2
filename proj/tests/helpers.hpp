#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "wmkit/dataset.hpp"
#include "wmkit/keystream.hpp"
#include "wmkit/media.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        static std::atomic<int> counter{0};
        path = base / ("wmkit_test_" + std::to_string(::getpid()) + "_" +
                       std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string str(const std::string& rel = "") const {
        return rel.empty() ? path.string() : (path / rel).string();
    }
};

// Textured random RGB image, deterministic from seed. Mirrors the
// statistical profile of the synthetic corpus (smooth base + fine grain)
// without going through the dataset module.
inline wmkit::ImageBuffer test_image(int w, int h, std::uint64_t seed, int channels = 3) {
    wmkit::ImageBuffer img;
    img.width = w;
    img.height = h;
    img.channels = channels;
    img.samples.resize(static_cast<std::size_t>(w) * h * channels);
    wmkit::KeyStream ks(wmkit::SecretKey{seed}, "test-image", 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double base = 40.0 + 170.0 * (x + y) / static_cast<double>(w + h);
            double grain = std::floor(ks.next_unit() * 19.0) - 9.0;
            for (int c = 0; c < channels; ++c) {
                double v = base + grain + 10.0 * c;
                img.at(x, y, c) = static_cast<std::uint8_t>(
                    std::clamp(static_cast<int>(std::lround(v)), 0, 255));
            }
        }
    return img;
}

inline wmkit::AudioClip test_audio(double seconds, std::uint64_t seed, int rate = 16000,
                                   int channels = 1) {
    wmkit::bench::DatasetSpec spec;
    spec.modality = wmkit::Modality::Audio;
    spec.count = 1;
    spec.seed = seed;
    spec.duration_s = seconds;
    spec.rate = rate;
    wmkit::AudioClip clip = wmkit::bench::generate_item(spec, 0).audio();
    if (channels == 2) clip.channels.push_back(clip.channels[0]);
    return clip;
}

inline wmkit::VideoClip static_clip(const wmkit::ImageBuffer& frame, int n, double fps = 8.0) {
    wmkit::VideoClip clip;
    clip.fps = fps;
    clip.frames.assign(static_cast<std::size_t>(n), frame);
    return clip;
}

}  // namespace testutil
