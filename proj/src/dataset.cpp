#include "wmkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmkit/keystream.hpp"

namespace wmkit::bench {

namespace {

std::uint8_t clamp8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

// Fine deterministic per-pixel texture, +/-9 levels, same offset on every
// channel. Gives the block-DCT mid-band enough natural variance that
// quantizing attacks dither instead of flooring the embedded chips.
void add_texture(ImageBuffer& img, KeyStream& ks) {
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double t = std::floor(ks.next_unit() * 19.0) - 9.0;
            for (int c = 0; c < img.channels; ++c)
                img.at(x, y, c) = clamp8(img.at(x, y, c) + t);
        }
}

struct Rgb {
    double r, g, b;
};

Rgb random_color(KeyStream& ks) {
    return {20.0 + ks.next_unit() * 215.0, 20.0 + ks.next_unit() * 215.0,
            20.0 + ks.next_unit() * 215.0};
}

void put(ImageBuffer& img, int x, int y, const Rgb& c) {
    if (img.channels == 1) {
        img.at(x, y, 0) = clamp8(0.299 * c.r + 0.587 * c.g + 0.114 * c.b);
        return;
    }
    img.at(x, y, 0) = clamp8(c.r);
    img.at(x, y, 1) = clamp8(c.g);
    img.at(x, y, 2) = clamp8(c.b);
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

ImageBuffer blank(int w, int h) {
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.channels = 3;
    img.samples.assign(static_cast<std::size_t>(w) * h * 3, 0);
    return img;
}

// Linear two-color ramp along a random direction; `phase` shifts it
// (used by the translating-gradient video generator).
ImageBuffer gradient_image(int w, int h, KeyStream& ks, double phase = 0.0) {
    ImageBuffer img = blank(w, h);
    Rgb c0 = random_color(ks), c1 = random_color(ks);
    double angle = ks.next_unit() * 2.0 * std::numbers::pi;
    double dx = std::cos(angle), dy = std::sin(angle);
    double span = std::abs(dx) * (w - 1) + std::abs(dy) * (h - 1) + 1.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double proj = dx * x + dy * y + phase;
            double t = proj / span - std::floor(proj / span);  // wrap
            put(img, x, y, lerp(c0, c1, t < 0.5 ? 2.0 * t : 2.0 - 2.0 * t));
        }
    return img;
}

// Cells are multiples of the 8-px DCT grid so cell edges never cut blocks.
ImageBuffer checker_image(int w, int h, KeyStream& ks) {
    ImageBuffer img = blank(w, h);
    static constexpr int kCells[] = {8, 16, 32};
    int cell = kCells[static_cast<int>(ks.next_unit() * 3.0)];
    Rgb c0 = random_color(ks), c1 = random_color(ks);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            put(img, x, y, ((x / cell + y / cell) % 2 == 0) ? c0 : c1);
    return img;
}

ImageBuffer value_noise_image(int w, int h, KeyStream& ks) {
    ImageBuffer img = blank(w, h);
    constexpr int kLattice = 32;
    int gw = w / kLattice + 2, gh = h / kLattice + 2;
    std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
    for (auto& g : grid) g = ks.next_unit();
    Rgb c0 = random_color(ks), c1 = random_color(ks);
    auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int gx = x / kLattice, gy = y / kLattice;
            double fx = smooth(static_cast<double>(x % kLattice) / kLattice);
            double fy = smooth(static_cast<double>(y % kLattice) / kLattice);
            double v00 = grid[gy * gw + gx], v10 = grid[gy * gw + gx + 1];
            double v01 = grid[(gy + 1) * gw + gx], v11 = grid[(gy + 1) * gw + gx + 1];
            double v = (v00 * (1 - fx) + v10 * fx) * (1 - fy) +
                       (v01 * (1 - fx) + v11 * fx) * fy;
            put(img, x, y, lerp(c0, c1, v));
        }
    return img;
}

ImageBuffer make_image(const DatasetSpec& spec, KeyStream& ks, KeyStream& tex) {
    std::string kind = spec.kind;
    if (kind == "mixed") {
        static constexpr const char* kKinds[] = {"gradient", "checker", "value_noise"};
        kind = kKinds[static_cast<int>(ks.next_unit() * 3.0)];
    }
    ImageBuffer img;
    if (kind == "gradient")
        img = gradient_image(spec.size, spec.size, ks);
    else if (kind == "checker")
        img = checker_image(spec.size, spec.size, ks);
    else if (kind == "value_noise")
        img = value_noise_image(spec.size, spec.size, ks);
    else
        throw BadSpec("unknown image kind: " + kind);
    add_texture(img, tex);
    return img;
}

VideoClip make_video(const DatasetSpec& spec, SecretKey item_key, KeyStream& ks) {
    VideoClip clip;
    clip.fps = spec.fps;
    // One gradient, translated across frames; texture is redrawn per frame.
    Rgb c0 = random_color(ks), c1 = random_color(ks);
    double angle = ks.next_unit() * 2.0 * std::numbers::pi;
    double speed = 2.0 + ks.next_unit() * 4.0;  // px/frame along the ramp
    for (int t = 0; t < spec.frames; ++t) {
        ImageBuffer frame = blank(spec.frame_size, spec.frame_size);
        double dx = std::cos(angle), dy = std::sin(angle);
        double span = std::abs(dx) * (spec.frame_size - 1) +
                      std::abs(dy) * (spec.frame_size - 1) + 1.0;
        for (int y = 0; y < spec.frame_size; ++y)
            for (int x = 0; x < spec.frame_size; ++x) {
                double proj = dx * x + dy * y + speed * t;
                double u = proj / span - std::floor(proj / span);
                put(frame, x, y, lerp(c0, c1, u < 0.5 ? 2.0 * u : 2.0 - 2.0 * u));
            }
        KeyStream tex(item_key, "dataset-texture", static_cast<std::uint64_t>(t));
        add_texture(frame, tex);
        clip.frames.push_back(std::move(frame));
    }
    return clip;
}

AudioClip make_audio(const DatasetSpec& spec, KeyStream& ks) {
    const Eigen::Index n =
        static_cast<Eigen::Index>(std::llround(spec.duration_s * spec.rate));
    constexpr int kTones = 4;
    double freq[kTones], amp[kTones], phase[kTones];
    for (int k = 0; k < kTones; ++k) {
        freq[k] = 100.0 + ks.next_unit() * 2900.0;
        amp[k] = 0.1 + ks.next_unit() * 0.15;
        phase[k] = ks.next_unit() * 2.0 * std::numbers::pi;
    }
    Eigen::ArrayXd x = Eigen::ArrayXd::Zero(n);
    for (int k = 0; k < kTones; ++k) {
        double w = 2.0 * std::numbers::pi * freq[k] / spec.rate;
        for (Eigen::Index i = 0; i < n; ++i) x[i] += amp[k] * std::sin(w * i + phase[k]);
    }
    for (Eigen::Index i = 0; i < n; ++i) x[i] += 0.02 * ks.next_gaussian();
    double rms = std::sqrt(x.square().mean());
    x *= 0.2 / rms;
    x = x.cwiseMax(-0.999).cwiseMin(0.999);

    AudioClip clip;
    clip.sample_rate = spec.rate;
    clip.channels.push_back(std::move(x));
    return clip;
}

// Template-grammar prose. The vocabulary is deliberately disjoint from
// the marker lexicon (checked by a unit test) so unmarked documents never
// trip the lexical detector.
TextDocument make_text(const DatasetSpec& spec, KeyStream& ks) {
    static constexpr const char* kAdj[] = {"old",  "red",  "big",  "new", "tall",
                                           "cold", "warm", "gray", "blue", "wide"};
    static constexpr const char* kNoun[] = {"river",  "harbor", "engine", "garden",
                                            "signal", "window", "ladder", "market",
                                            "bridge", "canyon"};
    static constexpr const char* kVerb[] = {"crossed",  "watched", "measured",
                                            "carried",  "followed", "painted",
                                            "opened",   "counted",  "repaired",
                                            "sketched"};
    static constexpr const char* kPlace[] = {"valley",  "station", "orchard",
                                             "village", "coast",   "plaza"};
    auto pick = [&](auto& arr) {
        return arr[static_cast<int>(ks.next_unit() * std::size(arr))];
    };
    std::string out;
    for (int s = 0; s < spec.sentences; ++s) {
        std::string sentence = std::string("The ") + pick(kAdj) + " " + pick(kNoun) +
                               " " + pick(kVerb) + " the " + pick(kAdj) + " " +
                               pick(kNoun) + " near the " + pick(kPlace);
        double u = ks.next_unit();
        sentence += u < 0.85 ? "." : (u < 0.95 ? "!" : "?");
        if (!out.empty()) out += (s % 6 == 0) ? "\n" : " ";
        out += sentence;
    }
    out += "\n";
    return TextDocument{std::move(out)};
}

}  // namespace

MediaObject generate_item(const DatasetSpec& spec, int index) {
    if (spec.count < 1 || index < 0) throw BadSpec("invalid dataset spec");
    SecretKey item_key{spec.seed};
    KeyStream ks = derive_stream(item_key, "dataset", static_cast<std::uint64_t>(index));
    switch (spec.modality) {
        case Modality::Image: {
            if (spec.size < 16) throw BadSpec("image size too small");
            KeyStream tex = derive_stream(item_key, "dataset-texture",
                                          static_cast<std::uint64_t>(index));
            return MediaObject{make_image(spec, ks, tex)};
        }
        case Modality::Video: {
            if (spec.frames < 1 || spec.frame_size < 16 || !(spec.fps > 0.0))
                throw BadSpec("invalid video spec");
            SecretKey frame_key{spec.seed ^ (0x9e3779b9ull * (index + 1))};
            return MediaObject{make_video(spec, frame_key, ks)};
        }
        case Modality::Audio: {
            if (!(spec.duration_s > 0.0) || spec.rate < 8000)
                throw BadSpec("invalid audio spec");
            return MediaObject{make_audio(spec, ks)};
        }
        case Modality::Text: {
            if (spec.sentences < 1) throw BadSpec("invalid text spec");
            return MediaObject{make_text(spec, ks)};
        }
    }
    throw BadSpec("invalid modality");
}

std::vector<MediaObject> generate_dataset(const DatasetSpec& spec) {
    if (spec.count < 1) throw BadSpec("dataset count must be >= 1");
    std::vector<MediaObject> items;
    items.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) items.push_back(generate_item(spec, i));
    return items;
}

}  // namespace wmkit::bench
