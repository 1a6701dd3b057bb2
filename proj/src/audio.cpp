#include "wmkit/audio.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wmkit::audio {

namespace {

Eigen::ArrayXd chips_for_symbol(SecretKey key, int symbol, int window) {
    KeyStream s = derive_stream(key, "audio-chip", static_cast<std::uint64_t>(symbol));
    Eigen::ArrayXd chips(window);
    for (int i = 0; i < window; ++i) chips[i] = s.next_chip();
    return chips;
}

double window_rms(const Eigen::ArrayXd& ch, Eigen::Index start, int window) {
    return std::sqrt(ch.segment(start, window).square().mean());
}

// Goertzel power of one probe frequency over [start, start+len).
double goertzel_power(const Eigen::ArrayXd& x, Eigen::Index start, Eigen::Index len,
                      double freq_hz, int sample_rate) {
    double w = 2.0 * std::numbers::pi * freq_hz / sample_rate;
    double coeff = 2.0 * std::cos(w);
    double s0 = 0, s1 = 0, s2 = 0;
    for (Eigen::Index n = 0; n < len; ++n) {
        s0 = x[start + n] + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

}  // namespace

AudioClip embed_hidden(const AudioClip& clip, const MessagePayload& payload,
                       SecretKey key, const AudioWmParams& p) {
    if (!clip.valid()) throw BadParams("invalid audio clip");
    if (static_cast<int>(payload.size()) != p.payload_bits)
        throw BadParams("payload length must equal configured payload_bits");
    const int W = p.window;
    const int P = p.period();
    const Eigen::Index n = clip.length();
    if (n < static_cast<Eigen::Index>(P) * W)
        throw CapacityExceeded("clip shorter than one full pattern period");

    std::vector<Eigen::ArrayXd> chips(P);
    for (int q = 0; q < P; ++q) chips[q] = chips_for_symbol(key, q, W);

    AudioClip out = clip;
    const Eigen::Index windows = n / W;  // trailing partial window untouched
    for (Eigen::Index w = 0; w < windows; ++w) {
        int q = static_cast<int>(w % P);
        int bit = q < p.sync_bits ? sync_bit(q) : payload[static_cast<std::size_t>(q - p.sync_bits)];
        double sign = bit ? 1.0 : -1.0;
        for (auto& ch : out.channels) {
            double amp = p.gain * std::max(window_rms(ch, w * W, W), p.rms_floor);
            ch.segment(w * W, W) =
                (ch.segment(w * W, W) + amp * sign * chips[q]).cwiseMin(1.0).cwiseMax(-1.0);
        }
    }
    return out;
}

ExtractionResult extract_hidden(const AudioClip& clip, SecretKey key,
                                const AudioWmParams& p) {
    ExtractionResult res;
    res.bits = std::vector<std::uint8_t>(static_cast<std::size_t>(p.payload_bits), 0);
    res.segments = std::vector<Segment>{};
    if (!clip.valid()) throw BadParams("invalid audio clip");
    const int W = p.window;
    const int P = p.period();
    const Eigen::Index windows = clip.length() / W;
    if (windows < 1) return res;  // too short: detected=false, never an error

    // Normalized score per (window, candidate symbol); ~ +/-1 when the
    // window carries that symbol.
    Eigen::ArrayXXd rho(windows, P);
    const double nch = static_cast<double>(clip.channels.size());
    std::vector<Eigen::ArrayXd> chips(P);
    for (int q = 0; q < P; ++q) chips[q] = chips_for_symbol(key, q, W);
    for (Eigen::Index w = 0; w < windows; ++w) {
        for (int q = 0; q < P; ++q) {
            double score = 0.0;
            for (const auto& ch : clip.channels) {
                double rms = std::max(window_rms(ch, w * W, W), p.rms_floor);
                double dot = (ch.segment(w * W, W) * chips[q]).sum();
                score += dot / (p.gain * rms * W);
            }
            rho(w, q) = score / nch;
        }
    }

    // Phase alignment over the repeating period: window w carries symbol
    // (w + phi) mod P for the phase that best explains the sync pattern.
    auto symbol_at = [&](Eigen::Index w, int phi) {
        return static_cast<int>((w + phi) % P);
    };
    int best_phi = 0;
    double best_score = -1.0;
    for (int phi = 0; phi < P; ++phi) {
        double s = 0.0;
        int cnt = 0;
        for (Eigen::Index w = 0; w < windows; ++w) {
            int q = symbol_at(w, phi);
            if (q < p.sync_bits) {
                s += std::abs(rho(w, q));
                ++cnt;
            }
        }
        if (cnt > 0) s /= cnt;
        if (s > best_score) {
            best_score = s;
            best_phi = phi;
        }
    }

    // Per-window presence and maximal-run segments (in samples).
    std::vector<bool> present(static_cast<std::size_t>(windows), false);
    int present_sync = 0;
    for (Eigen::Index w = 0; w < windows; ++w) {
        int q = symbol_at(w, best_phi);
        if (std::abs(rho(w, q)) >= p.window_threshold) {
            present[static_cast<std::size_t>(w)] = true;
            if (q < p.sync_bits) ++present_sync;
        }
    }
    // Reported segments are smoothed: single-window dropouts inside a
    // marked run are filled (miss rate ~5% per window) and isolated short
    // runs are discarded (an unmarked window false-alarms ~10% of the
    // time, but 4 in a row is ~1e-4). Detection and bit recovery use the
    // raw per-window presence, not this smoothing.
    std::vector<bool> smooth = present;
    constexpr Eigen::Index kMaxGap = 2, kMinRun = 4;
    for (Eigen::Index w = 0; w < windows;) {
        if (smooth[static_cast<std::size_t>(w)]) {
            ++w;
            continue;
        }
        Eigen::Index gap_start = w;
        while (w < windows && !smooth[static_cast<std::size_t>(w)]) ++w;
        if (gap_start > 0 && w < windows && w - gap_start <= kMaxGap)
            for (Eigen::Index g = gap_start; g < w; ++g)
                smooth[static_cast<std::size_t>(g)] = true;
    }
    for (Eigen::Index w = 0; w < windows;) {
        if (!smooth[static_cast<std::size_t>(w)]) {
            ++w;
            continue;
        }
        Eigen::Index start = w;
        while (w < windows && smooth[static_cast<std::size_t>(w)]) ++w;
        if (w - start >= kMinRun) res.segments->emplace_back(start * W, w * W);
    }

    // Payload bits from the sum of scores over present windows, plus a
    // residual noise estimate (scores grouped by symbol, group-demeaned).
    std::vector<double> sum(static_cast<std::size_t>(P), 0.0),
        sumsq(static_cast<std::size_t>(P), 0.0),
        full_sum(static_cast<std::size_t>(P), 0.0);
    std::vector<std::int64_t> count(static_cast<std::size_t>(P), 0);
    double all_sum = 0.0, all_sumsq = 0.0;
    for (Eigen::Index w = 0; w < windows; ++w) {
        int q = symbol_at(w, best_phi);
        double r = rho(w, q);
        all_sum += r;
        all_sumsq += r * r;
        full_sum[static_cast<std::size_t>(q)] += r;
        if (!present[static_cast<std::size_t>(w)]) continue;
        sum[static_cast<std::size_t>(q)] += r;
        sumsq[static_cast<std::size_t>(q)] += r * r;
        ++count[static_cast<std::size_t>(q)];
    }
    double resid_ss = 0.0;
    std::int64_t dof = 0;
    for (int q = 0; q < P; ++q) {
        if (count[static_cast<std::size_t>(q)] > 0) {
            resid_ss += sumsq[static_cast<std::size_t>(q)] -
                        sum[static_cast<std::size_t>(q)] * sum[static_cast<std::size_t>(q)] /
                            count[static_cast<std::size_t>(q)];
            dof += count[static_cast<std::size_t>(q)] - 1;
        }
    }
    double sigma;
    if (dof >= 8) {
        sigma = std::sqrt(std::max(0.0, resid_ss) / dof);
    } else {
        double mean = all_sum / windows;
        sigma = std::sqrt(std::max(0.0, all_sumsq / windows - mean * mean));
    }

    double conf_sum = 0.0;
    bool any_signal = false;
    for (int b = 0; b < p.payload_bits; ++b) {
        std::size_t q = static_cast<std::size_t>(p.sync_bits + b);
        // Symbols whose every window fell below the presence threshold
        // (correlated content offsets can do this) are resolved from the
        // un-gated window sums instead of defaulting.
        double decision = count[q] > 0 ? sum[q] : full_sum[q];
        (*res.bits)[static_cast<std::size_t>(b)] = decision > 0.0 ? 1 : 0;
        if (count[q] == 0) continue;
        if (std::abs(sum[q]) > 1e-9) any_signal = true;
        if (sigma > 1e-12)
            conf_sum += std::abs(sum[q]) / (sigma * std::sqrt(static_cast<double>(count[q])));
    }
    if (sigma > 1e-12) {
        res.confidence = conf_sum / p.payload_bits;
    } else {
        res.confidence = any_signal ? 1e9 : 0.0;
    }
    res.detected = res.confidence >= p.detect_threshold && present_sync >= p.sync_bits;
    return res;
}

AudioClip embed_visible(const AudioClip& clip, const ToneParams& p) {
    if (!clip.valid()) throw BadParams("invalid audio clip");
    const int rate = clip.sample_rate;
    const Eigen::Index tone_len = static_cast<Eigen::Index>(std::llround(p.tone_ms / 1000.0 * rate));
    const Eigen::Index ramp = std::min<Eigen::Index>(tone_len / 2, rate * 5 / 1000);
    const Eigen::Index sig_len = tone_len * 8;

    Eigen::ArrayXd signature(sig_len);
    for (int k = 0; k < 8; ++k) {
        double w = 2.0 * std::numbers::pi * kToneFrequencies[static_cast<std::size_t>(k)] / rate;
        for (Eigen::Index n = 0; n < tone_len; ++n) {
            double env = 1.0;
            if (n < ramp)
                env = 0.5 * (1.0 - std::cos(std::numbers::pi * n / ramp));
            else if (n >= tone_len - ramp)
                env = 0.5 * (1.0 - std::cos(std::numbers::pi * (tone_len - 1 - n) / ramp));
            signature[k * tone_len + n] = kToneAmplitude * env * std::sin(w * n);
        }
    }

    AudioClip out;
    out.sample_rate = rate;
    for (const auto& ch : clip.channels) {
        Eigen::ArrayXd merged(sig_len + ch.size());
        merged.head(sig_len) = signature;
        merged.tail(ch.size()) = ch;
        out.channels.push_back(std::move(merged));
    }
    return out;
}

ExtractionResult detect_visible(const AudioClip& clip, const ToneParams& p) {
    ExtractionResult res;
    if (!clip.valid()) throw BadParams("invalid audio clip");
    const int rate = clip.sample_rate;
    const Eigen::Index step = static_cast<Eigen::Index>(std::llround(p.tone_ms / 1000.0 * rate));
    const Eigen::Index n = clip.length();
    const Eigen::ArrayXd& x = clip.channels[0];

    double best_margin_db = 0.0;
    Eigen::Index best_start = -1;
    for (Eigen::Index start = 0; start + 8 * step <= n; start += step) {
        double min_margin_db = 1e9;
        bool ok = true;
        for (int k = 0; k < 8 && ok; ++k) {
            Eigen::Index seg = start + k * step;
            double expected = 0.0, strongest_other = 0.0;
            for (int f = 0; f < 8; ++f) {
                double e = goertzel_power(x, seg, step,
                                          kToneFrequencies[static_cast<std::size_t>(f)], rate);
                if (f == k)
                    expected = e;
                else
                    strongest_other = std::max(strongest_other, e);
            }
            if (expected <= 0.0 || strongest_other <= 0.0) {
                ok = expected > 0.0 && strongest_other <= 0.0;
                if (ok) min_margin_db = std::min(min_margin_db, 1e9);
                continue;
            }
            double margin_db = 10.0 * std::log10(expected / strongest_other);
            min_margin_db = std::min(min_margin_db, margin_db);
            if (margin_db < 6.0) ok = false;
        }
        if (ok && min_margin_db > best_margin_db) {
            best_margin_db = min_margin_db;
            best_start = start;
        }
    }
    res.confidence = std::max(0.0, best_margin_db);
    res.detected = best_start >= 0;
    if (res.detected)
        res.segments = std::vector<Segment>{{best_start, best_start + 8 * step}};
    return res;
}

}  // namespace wmkit::audio
