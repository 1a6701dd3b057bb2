#include "wmkit/visual.hpp"

#include <cmath>

#include "wmkit/color.hpp"
#include "wmkit/dct.hpp"

namespace wmkit::visual {

namespace {

constexpr int kB = VisualWmParams::kBlock;

std::array<double, 8> chips_for_block(SecretKey key, std::uint64_t block_index) {
    KeyStream s = derive_stream(key, "chip", block_index);
    std::array<double, 8> chips;
    for (auto& c : chips) c = s.next_chip();
    return chips;
}

struct Badge {
    int side = 0;
    int x0 = 0, y0 = 0;
    Eigen::ArrayXXd luma;  // (side, side), values 16/235
};

Badge make_badge(int width, int height, const BadgeParams& p) {
    int min_dim = std::min(width, height);
    if (min_dim < 24) throw MediaTooSmall("visible mark needs min(w,h) >= 24");
    Badge b;
    b.side = std::max(24l, std::lround(p.scale * min_dim));
    b.side = std::min(b.side, min_dim);
    int inset = 2;
    int max_x0 = width - b.side, max_y0 = height - b.side;
    if (p.corner == "bottom_right") {
        b.x0 = std::min(max_x0, std::max(0, width - b.side - inset));
        b.y0 = std::min(max_y0, std::max(0, height - b.side - inset));
    } else if (p.corner == "bottom_left") {
        b.x0 = std::min(max_x0, inset);
        b.y0 = std::min(max_y0, std::max(0, height - b.side - inset));
    } else if (p.corner == "top_right") {
        b.x0 = std::min(max_x0, std::max(0, width - b.side - inset));
        b.y0 = std::min(max_y0, inset);
    } else {  // top_left
        b.x0 = std::min(max_x0, inset);
        b.y0 = std::min(max_y0, inset);
    }
    b.x0 = std::max(0, b.x0);
    b.y0 = std::max(0, b.y0);
    b.luma.resize(b.side, b.side);
    for (int py = 0; py < b.side; ++py) {
        int cy = py * 6 / b.side;
        for (int px = 0; px < b.side; ++px) {
            int cx = px * 6 / b.side;
            bool set;
            if (cy == 0 || cy == 5 || cx == 0 || cx == 5) {
                set = true;  // solid border
            } else {
                int k = (cy - 1) * 4 + (cx - 1);
                set = (kBadgePattern >> (15 - k)) & 1;
            }
            b.luma(py, px) = set ? 16.0 : 235.0;
        }
    }
    return b;
}

double ncc(const Eigen::ArrayXXd& a, const Eigen::ArrayXXd& b) {
    double ma = a.mean(), mb = b.mean();
    Eigen::ArrayXXd da = a - ma, db = b - mb;
    double denom = std::sqrt((da * da).sum() * (db * db).sum());
    if (denom < 1e-12) return 0.0;
    return (da * db).sum() / denom;
}

}  // namespace

std::size_t block_capacity(int width, int height) {
    return static_cast<std::size_t>(width / kB) * static_cast<std::size_t>(height / kB);
}

VideoClip embed_hidden(const VideoClip& clip, const MessagePayload& payload,
                       SecretKey key, const VisualWmParams& p) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    const std::size_t L = payload.size();
    const int nbx = clip.frames[0].width / kB;
    const int nby = clip.frames[0].height / kB;
    if (block_capacity(clip.frames[0].width, clip.frames[0].height) < L)
        throw CapacityExceeded("payload needs more 8x8 blocks than the frame provides");

    VideoClip out;
    out.fps = clip.fps;
    out.frames.reserve(clip.frames.size());
    for (const auto& frame : clip.frames) {
        LumaPlanes planes = to_luma(frame);
        for (int by = 0; by < nby; ++by) {
            for (int bx = 0; bx < nbx; ++bx) {
                std::uint64_t i = static_cast<std::uint64_t>(by) * nbx + bx;
                double sign = payload[i % L] ? 1.0 : -1.0;
                auto chips = chips_for_block(key, i);
                Block8 block = planes.y.block<kB, kB>(by * kB, bx * kB).matrix();
                Block8 coeffs = dct8_forward(block);
                for (int j = 0; j < 8; ++j) {
                    auto [r, c] = VisualWmParams::kCoeffs[j];
                    coeffs(r, c) += p.strength * sign * chips[j];
                }
                planes.y.block<kB, kB>(by * kB, bx * kB) = dct8_inverse(coeffs).array();
            }
        }
        out.frames.push_back(from_luma(planes));
    }
    return out;
}

ExtractionResult extract_hidden(const VideoClip& clip, SecretKey key,
                                std::size_t payload_bits, const VisualWmParams& p) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    const std::size_t L = payload_bits;
    const int nbx = clip.frames[0].width / kB;
    const int nby = clip.frames[0].height / kB;
    if (block_capacity(clip.frames[0].width, clip.frames[0].height) < L)
        throw CapacityExceeded("too few 8x8 blocks to attempt extraction");

    std::vector<double> sum(L, 0.0), sumsq(L, 0.0);
    std::vector<std::int64_t> count(L, 0);
    double all_sum = 0.0, all_sumsq = 0.0;
    std::int64_t all_count = 0;

    for (const auto& frame : clip.frames) {
        LumaPlanes planes = to_luma(frame);
        for (int by = 0; by < nby; ++by) {
            for (int bx = 0; bx < nbx; ++bx) {
                std::uint64_t i = static_cast<std::uint64_t>(by) * nbx + bx;
                auto chips = chips_for_block(key, i);
                Block8 coeffs =
                    dct8_forward(planes.y.block<kB, kB>(by * kB, bx * kB).matrix());
                double corr = 0.0;
                for (int j = 0; j < 8; ++j) {
                    auto [r, c] = VisualWmParams::kCoeffs[j];
                    corr += coeffs(r, c) * chips[j];
                }
                std::size_t b = i % L;
                sum[b] += corr;
                sumsq[b] += corr * corr;
                ++count[b];
                all_sum += corr;
                all_sumsq += corr * corr;
                ++all_count;
            }
        }
    }

    // Noise scale: residual std around the per-bit means. Falls back to
    // the population std when there is no redundancy to estimate from.
    double resid_ss = 0.0;
    std::int64_t dof = 0;
    for (std::size_t b = 0; b < L; ++b) {
        if (count[b] > 0) {
            resid_ss += sumsq[b] - sum[b] * sum[b] / count[b];
            dof += count[b] - 1;
        }
    }
    double sigma;
    if (dof >= 8) {
        sigma = std::sqrt(std::max(0.0, resid_ss) / dof);
    } else {
        double var = all_sumsq / all_count - (all_sum / all_count) * (all_sum / all_count);
        sigma = std::sqrt(std::max(0.0, var));
    }

    ExtractionResult res;
    std::vector<std::uint8_t> bits(L, 0);
    double conf_sum = 0.0;
    std::size_t groups = 0;
    bool any_signal = false;
    for (std::size_t b = 0; b < L; ++b) {
        bits[b] = sum[b] > 0.0 ? 1 : 0;  // ties resolve to 0
        if (count[b] == 0) continue;
        ++groups;
        if (std::abs(sum[b]) > 1e-9) any_signal = true;
        if (sigma > 1e-12)
            conf_sum += std::abs(sum[b]) / (sigma * std::sqrt(static_cast<double>(count[b])));
    }
    if (sigma > 1e-12) {
        res.confidence = groups > 0 ? conf_sum / groups : 0.0;
    } else {
        res.confidence = any_signal ? 1e9 : 0.0;
    }
    res.bits = std::move(bits);
    res.detected = res.confidence >= p.detect_threshold;
    return res;
}

VideoClip embed_visible(const VideoClip& clip, const BadgeParams& p) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    Badge badge = make_badge(clip.frames[0].width, clip.frames[0].height, p);
    VideoClip out = clip;
    for (auto& frame : out.frames) {
        for (int py = 0; py < badge.side; ++py) {
            for (int px = 0; px < badge.side; ++px) {
                auto v = static_cast<std::uint8_t>(badge.luma(py, px));
                for (int c = 0; c < frame.channels; ++c)
                    frame.at(badge.x0 + px, badge.y0 + py, c) = v;
            }
        }
    }
    return out;
}

ExtractionResult detect_visible(const VideoClip& clip, const BadgeParams& p) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    Badge badge = make_badge(clip.frames[0].width, clip.frames[0].height, p);
    double total = 0.0;
    for (const auto& frame : clip.frames) {
        LumaPlanes planes = to_luma(frame);
        Eigen::ArrayXXd region = planes.y.block(badge.y0, badge.x0, badge.side, badge.side);
        total += ncc(region, badge.luma);
    }
    ExtractionResult res;
    res.confidence = std::max(0.0, total / static_cast<double>(clip.frames.size()));
    res.detected = res.confidence >= 0.8;
    return res;
}

}  // namespace wmkit::visual
