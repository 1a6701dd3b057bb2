#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmkit/media.hpp"

namespace wmkit::bench {

// Deterministic synthetic corpora. Item i is fully determined by
// (spec, seed, i); every item satisfies the capacity preconditions of its
// modality's default watermark parameters.
struct DatasetSpec {
    Modality modality = Modality::Image;
    int count = 20;
    std::uint64_t seed = 0;

    // image
    std::string kind = "mixed";  // gradient | checker | value_noise | mixed
    int size = 256;

    // video
    int frames = 16;
    double fps = 8.0;
    int frame_size = 128;

    // audio
    double duration_s = 15.0;
    int rate = 16000;

    // text
    int sentences = 24;
};

std::vector<MediaObject> generate_dataset(const DatasetSpec& spec);

MediaObject generate_item(const DatasetSpec& spec, int index);

}  // namespace wmkit::bench
