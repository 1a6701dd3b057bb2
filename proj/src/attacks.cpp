#include "wmkit/attacks.hpp"

#include <cmath>
#include <numbers>

#include "wmkit/color.hpp"
#include "wmkit/dct.hpp"
#include "wmkit/keystream.hpp"
#include "wmkit/textwm.hpp"

namespace wmkit::attacks {

namespace {

// JPEG Annex-K luminance quantization table.
constexpr int kJpegLumaQ[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

double require_param(const AttackSpec& spec, const std::string& key, double lo, double hi) {
    auto it = spec.params.find(key);
    if (it == spec.params.end())
        throw BadParams("attack '" + spec.name + "' missing parameter '" + key + "'");
    if (!(it->second >= lo && it->second <= hi))
        throw BadParams("attack '" + spec.name + "' parameter '" + key + "' out of range");
    return it->second;
}

void check_params(const AttackSpec& spec, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : spec.params) {
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) ok = true;
        if (!ok) throw BadParams("attack '" + spec.name + "' has unknown parameter '" + k + "'");
    }
}

std::uint8_t clamp8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

ImageBuffer jpeg_sim(const ImageBuffer& img, int quality) {
    int s = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    int table[64];
    for (int i = 0; i < 64; ++i)
        table[i] = std::clamp((kJpegLumaQ[i] * s + 50) / 100, 1, 255);

    LumaPlanes planes = to_luma(img);
    int nbx = img.width / 8, nby = img.height / 8;
    for (int by = 0; by < nby; ++by) {
        for (int bx = 0; bx < nbx; ++bx) {
            Block8 coeffs = dct8_forward(planes.y.block<8, 8>(by * 8, bx * 8).matrix());
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) {
                    double q = table[r * 8 + c];
                    coeffs(r, c) = std::round(coeffs(r, c) / q) * q;
                }
            planes.y.block<8, 8>(by * 8, bx * 8) = dct8_inverse(coeffs).array();
        }
    }
    return from_luma(planes);
}

ImageBuffer gauss_blur(const ImageBuffer& img, double sigma) {
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    Eigen::ArrayXd kernel(2 * radius + 1);
    for (int i = -radius; i <= radius; ++i)
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    kernel /= kernel.sum();

    ImageBuffer out = img;
    std::vector<double> tmp(img.samples.size());
    // horizontal pass, edge-clamp padding
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    int xi = std::clamp(x + i, 0, img.width - 1);
                    acc += kernel[i + radius] * img.at(xi, y, c);
                }
                tmp[(static_cast<std::size_t>(y) * img.width + x) * img.channels + c] = acc;
            }
    // vertical pass
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    int yi = std::clamp(y + i, 0, img.height - 1);
                    acc += kernel[i + radius] *
                           tmp[(static_cast<std::size_t>(yi) * img.width + x) * img.channels + c];
                }
                out.at(x, y, c) = clamp8(acc);
            }
    return out;
}

ImageBuffer bilinear_resize(const ImageBuffer& img, int new_w, int new_h) {
    ImageBuffer out{new_w, new_h, img.channels, {}};
    out.samples.resize(static_cast<std::size_t>(new_w) * new_h * img.channels);
    double sx = static_cast<double>(img.width) / new_w;
    double sy = static_cast<double>(img.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
        int y0 = static_cast<int>(fy);
        int y1 = std::min(y0 + 1, img.height - 1);
        double wy = fy - y0;
        for (int x = 0; x < new_w; ++x) {
            double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
            int x0 = static_cast<int>(fx);
            int x1 = std::min(x0 + 1, img.width - 1);
            double wx = fx - x0;
            for (int c = 0; c < img.channels; ++c) {
                double v = (1 - wy) * ((1 - wx) * img.at(x0, y0, c) + wx * img.at(x1, y0, c)) +
                           wy * ((1 - wx) * img.at(x0, y1, c) + wx * img.at(x1, y1, c));
                out.at(x, y, c) = clamp8(v);
            }
        }
    }
    return out;
}

AttackSpec frame_spec(const AttackSpec& spec, std::size_t frame_index) {
    AttackSpec per_frame = spec;
    per_frame.seed =
        derive_stream(SecretKey{spec.seed}, "frame-seed", frame_index).next_u64();
    return per_frame;
}

}  // namespace

ImageBuffer apply_image_attack(const ImageBuffer& img, const AttackSpec& spec) {
    if (!img.valid()) throw BadParams("invalid image buffer");
    if (spec.name == "jpeg_sim") {
        check_params(spec, {"quality"});
        int q = static_cast<int>(require_param(spec, "quality", 1, 100));
        return jpeg_sim(img, q);
    }
    if (spec.name == "gauss_blur") {
        check_params(spec, {"sigma"});
        double sigma = require_param(spec, "sigma", 1e-9, 64);
        return gauss_blur(img, sigma);
    }
    if (spec.name == "gauss_noise") {
        check_params(spec, {"sigma"});
        double sigma = require_param(spec, "sigma", 0, 128);
        if (sigma == 0.0) return img;
        KeyStream stream(SecretKey{spec.seed}, "gauss_noise", 0);
        ImageBuffer out = img;
        for (auto& s : out.samples) s = clamp8(s + sigma * stream.next_gaussian());
        return out;
    }
    if (spec.name == "center_crop") {
        check_params(spec, {"ratio"});
        double r = require_param(spec, "ratio", 1e-9, 1.0);
        int cw = std::max(1, static_cast<int>(r * img.width));
        int ch = std::max(1, static_cast<int>(r * img.height));
        int x0 = (img.width - cw) / 2, y0 = (img.height - ch) / 2;
        ImageBuffer out{cw, ch, img.channels, {}};
        out.samples.resize(static_cast<std::size_t>(cw) * ch * img.channels);
        for (int y = 0; y < ch; ++y)
            for (int x = 0; x < cw; ++x)
                for (int c = 0; c < img.channels; ++c)
                    out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
        return out;
    }
    if (spec.name == "resize_cycle") {
        check_params(spec, {"scale"});
        double s = require_param(spec, "scale", 1e-9, 1.0);
        if (s >= 1.0) return img;
        int dw = std::max(1, static_cast<int>(s * img.width));
        int dh = std::max(1, static_cast<int>(s * img.height));
        return bilinear_resize(bilinear_resize(img, dw, dh), img.width, img.height);
    }
    if (spec.name == "brightness") {
        check_params(spec, {"delta"});
        double d = require_param(spec, "delta", -64, 64);
        ImageBuffer out = img;
        for (auto& s : out.samples) s = clamp8(s + d);
        return out;
    }
    if (spec.name == "contrast") {
        check_params(spec, {"factor"});
        double f = require_param(spec, "factor", 0.5, 2.0);
        ImageBuffer out = img;
        for (auto& s : out.samples) s = clamp8((s - 128.0) * f + 128.0);
        return out;
    }
    if (spec.name == "none") {
        check_params(spec, {});
        return img;
    }
    throw UnknownAttack("unknown image attack '" + spec.name + "'");
}

VideoClip apply_video_attack(const VideoClip& clip, const AttackSpec& spec) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    if (spec.name == "frame_drop") {
        check_params(spec, {"p"});
        double p = require_param(spec, "p", 0.0, 0.9);
        KeyStream stream(SecretKey{spec.seed}, "frame_drop", 0);
        VideoClip out;
        out.fps = clip.fps;
        for (const auto& frame : clip.frames) {
            double u = stream.next_unit();
            if (u >= p) out.frames.push_back(frame);
        }
        if (out.frames.empty()) out.frames.push_back(clip.frames[0]);
        return out;
    }
    if (spec.name == "frame_average") {
        check_params(spec, {"k"});
        int k = static_cast<int>(require_param(spec, "k", 3, 31));
        if (k % 2 == 0) throw BadParams("frame_average window k must be odd");
        int half = k / 2;
        int n = static_cast<int>(clip.frames.size());
        VideoClip out;
        out.fps = clip.fps;
        for (int t = 0; t < n; ++t) {
            int lo = std::max(0, t - half), hi = std::min(n - 1, t + half);
            ImageBuffer frame = clip.frames[static_cast<std::size_t>(t)];
            std::vector<double> acc(frame.samples.size(), 0.0);
            for (int u = lo; u <= hi; ++u)
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] += clip.frames[static_cast<std::size_t>(u)].samples[i];
            double inv = 1.0 / (hi - lo + 1);
            for (std::size_t i = 0; i < acc.size(); ++i)
                frame.samples[i] = clamp8(acc[i] * inv);
            out.frames.push_back(std::move(frame));
        }
        return out;
    }
    // image attacks apply frame-wise with per-frame derived seeds
    VideoClip out;
    out.fps = clip.fps;
    for (std::size_t t = 0; t < clip.frames.size(); ++t)
        out.frames.push_back(apply_image_attack(clip.frames[t], frame_spec(spec, t)));
    return out;
}

AudioClip apply_audio_attack(const AudioClip& clip, const AttackSpec& spec) {
    if (!clip.valid()) throw BadParams("invalid audio clip");
    if (spec.name == "noise_snr") {
        check_params(spec, {"snr_db"});
        double snr_db = require_param(spec, "snr_db", -20, 120);
        double power = 0.0;
        for (const auto& ch : clip.channels) power += ch.square().mean();
        power /= static_cast<double>(clip.channels.size());
        if (power <= 0.0) return clip;  // silent input: no-op
        double noise_rms = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
        AudioClip out = clip;
        for (std::size_t c = 0; c < out.channels.size(); ++c) {
            KeyStream stream(SecretKey{spec.seed}, "noise_snr", c);
            for (Eigen::Index i = 0; i < out.channels[c].size(); ++i)
                out.channels[c][i] = std::clamp(
                    out.channels[c][i] + noise_rms * stream.next_gaussian(), -1.0, 1.0);
        }
        return out;
    }
    if (spec.name == "time_stretch") {
        check_params(spec, {"rate"});
        double rate = require_param(spec, "rate", 0.8, 1.25);
        if (rate == 1.0) return clip;
        Eigen::Index n = clip.length();
        Eigen::Index m = static_cast<Eigen::Index>(n / rate);
        AudioClip out;
        out.sample_rate = clip.sample_rate;
        for (const auto& ch : clip.channels) {
            Eigen::ArrayXd y(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                double pos = i * rate;
                Eigen::Index i0 = static_cast<Eigen::Index>(pos);
                Eigen::Index i1 = std::min(i0 + 1, n - 1);
                double f = pos - static_cast<double>(i0);
                y[i] = (1.0 - f) * ch[i0] + f * ch[i1];
            }
            out.channels.push_back(std::move(y));
        }
        return out;
    }
    if (spec.name == "lowpass") {
        check_params(spec, {"cutoff_hz"});
        double cutoff = require_param(spec, "cutoff_hz", 100, clip.sample_rate / 2.0);
        constexpr int kTaps = 127;
        constexpr int kHalf = kTaps / 2;
        Eigen::ArrayXd h(kTaps);
        double fc = cutoff / clip.sample_rate;
        for (int i = 0; i < kTaps; ++i) {
            int m = i - kHalf;
            double sinc = m == 0 ? 2.0 * fc
                                 : std::sin(2.0 * std::numbers::pi * fc * m) /
                                       (std::numbers::pi * m);
            double hamming =
                0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (kTaps - 1));
            h[i] = sinc * hamming;
        }
        h /= h.sum();
        AudioClip out = clip;
        for (std::size_t c = 0; c < clip.channels.size(); ++c) {
            const auto& x = clip.channels[c];
            Eigen::Index n = x.size();
            // centered convolution: the group delay of the linear-phase
            // FIR is trimmed so output stays aligned with input
            for (Eigen::Index i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int k = 0; k < kTaps; ++k) {
                    Eigen::Index j = i + kHalf - k;
                    if (j >= 0 && j < n) acc += h[k] * x[j];
                }
                out.channels[c][i] = std::clamp(acc, -1.0, 1.0);
            }
        }
        return out;
    }
    if (spec.name == "requantize") {
        check_params(spec, {"bits"});
        int bits = static_cast<int>(require_param(spec, "bits", 4, 12));
        double levels = std::pow(2.0, bits) - 1.0;
        double step = 2.0 / levels;
        AudioClip out = clip;
        for (auto& ch : out.channels)
            for (Eigen::Index i = 0; i < ch.size(); ++i)
                ch[i] = std::clamp(-1.0 + step * std::round((ch[i] + 1.0) / step), -1.0, 1.0);
        return out;
    }
    if (spec.name == "gain") {
        check_params(spec, {"a"});
        double a = require_param(spec, "a", 0.1, 1.0);
        AudioClip out = clip;
        for (auto& ch : out.channels) ch = (ch * a).cwiseMin(1.0).cwiseMax(-1.0);
        return out;
    }
    if (spec.name == "none") {
        check_params(spec, {});
        return clip;
    }
    throw UnknownAttack("unknown audio attack '" + spec.name + "'");
}

TextDocument apply_text_attack(const TextDocument& doc, const AttackSpec& spec) {
    if (spec.name == "sentence_drop") {
        check_params(spec, {"p"});
        double p = require_param(spec, "p", 0.0, 1.0);
        auto spans = text::split_sentences(doc.content);
        if (spans.empty()) return doc;
        KeyStream stream(SecretKey{spec.seed}, "sentence_drop", 0);
        std::vector<bool> keep(spans.size());
        bool any = false;
        for (std::size_t i = 0; i < spans.size(); ++i) {
            keep[i] = stream.next_unit() >= p;
            any = any || keep[i];
        }
        if (!any) keep[0] = true;
        std::string out;
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < spans.size(); ++i) {
            auto [begin, end] = spans[i];
            if (keep[i]) {
                out.append(doc.content, cursor, begin - cursor);
                out.append(doc.content, begin, end - begin);
            }
            cursor = end;
        }
        out.append(doc.content, cursor, doc.content.size() - cursor);
        return TextDocument{std::move(out)};
    }
    if (spec.name == "case_fold") {
        check_params(spec, {});
        TextDocument out = doc;
        for (char& c : out.content)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        return out;
    }
    if (spec.name == "whitespace_norm") {
        check_params(spec, {});
        std::string out;
        bool in_run = false;
        for (char c : doc.content) {
            bool ws = c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
            if (ws) {
                if (!in_run) out.push_back(' ');
                in_run = true;
            } else {
                out.push_back(c);
                in_run = false;
            }
        }
        return TextDocument{std::move(out)};
    }
    if (spec.name == "none") {
        check_params(spec, {});
        return doc;
    }
    throw UnknownAttack("unknown text attack '" + spec.name + "'");
}

MediaObject apply_attack(const MediaObject& media, const AttackSpec& spec) {
    switch (media.modality()) {
        case Modality::Image:
            return MediaObject{apply_image_attack(media.image(), spec)};
        case Modality::Video:
            return MediaObject{apply_video_attack(media.video(), spec)};
        case Modality::Audio:
            return MediaObject{apply_audio_attack(media.audio(), spec)};
        case Modality::Text:
            return MediaObject{apply_text_attack(media.text(), spec)};
    }
    throw BadParams("invalid media object");
}

}  // namespace wmkit::attacks
