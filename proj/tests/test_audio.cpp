#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wmkit/audio.hpp"
#include "wmkit/metrics.hpp"

using namespace wmkit;

namespace {

const audio::AudioWmParams kParams{};

MessagePayload payload32(std::uint64_t seed) {
    KeyStream ps(SecretKey{seed}, "payload", 0);
    return MessagePayload::random(ps, 32);
}

}  // namespace

TEST_CASE("round trip on a 30 s clip: exact bits, detected, full-span segment") {
    AudioClip clip = testutil::test_audio(30.0, 1);
    auto payload = payload32(1);
    AudioClip marked = audio::embed_hidden(clip, payload, SecretKey{11}, kParams);

    CHECK(metrics::snr_db(clip, marked) >= 20.0);

    ExtractionResult res = audio::extract_hidden(marked, SecretKey{11}, kParams);
    CHECK(res.detected);
    CHECK(res.confidence >= 3.0);
    CHECK(*res.bits == payload.bits());
    REQUIRE(res.segments.has_value());
    REQUIRE(!res.segments->empty());
    std::int64_t covered = 0;
    for (const auto& [b, e] : *res.segments) covered += e - b;
    const std::int64_t full_windows = clip.length() / kParams.window;
    CHECK(covered >= static_cast<std::int64_t>(0.95 * full_windows * kParams.window));
}

TEST_CASE("capacity boundary: P*W - 1 samples is too short to embed") {
    AudioClip clip = testutil::test_audio(30.0, 2);
    clip.channels[0].conservativeResize(kParams.period() * kParams.window - 1);
    CHECK_THROWS_AS(audio::embed_hidden(clip, payload32(2), SecretKey{1}, kParams),
                    CapacityExceeded);
}

TEST_CASE("short clip extraction returns detected=false, never throws") {
    AudioClip clip = testutil::test_audio(1.0, 3);  // 16000 samples, 3 windows
    ExtractionResult res = audio::extract_hidden(clip, SecretKey{1}, kParams);
    CHECK(!res.detected);
}

TEST_CASE("silence input: watermark amplitude bounded by gain*rms_floor") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.channels.push_back(Eigen::ArrayXd::Zero(kParams.period() * kParams.window));
    AudioClip marked = audio::embed_hidden(clip, payload32(4), SecretKey{3}, kParams);
    CHECK(marked.channels[0].abs().maxCoeff() <=
          kParams.gain * kParams.rms_floor + 1e-12);
}

TEST_CASE("stereo: both channels carry the identical watermark signal") {
    AudioClip clip = testutil::test_audio(15.0, 5, 16000, 2);
    auto payload = payload32(5);
    AudioClip marked = audio::embed_hidden(clip, payload, SecretKey{4}, kParams);
    Eigen::ArrayXd delta0 = marked.channels[0] - clip.channels[0];
    Eigen::ArrayXd delta1 = marked.channels[1] - clip.channels[1];
    CHECK((delta0 - delta1).abs().maxCoeff() < 1e-12);  // same content per channel here
    ExtractionResult res = audio::extract_hidden(marked, SecretKey{4}, kParams);
    CHECK(*res.bits == payload.bits());
}

TEST_CASE("gain invariance: scaling by 0.5 leaves bits unchanged") {
    AudioClip clip = testutil::test_audio(30.0, 6);
    auto payload = payload32(6);
    AudioClip marked = audio::embed_hidden(clip, payload, SecretKey{5}, kParams);
    for (auto& ch : marked.channels) ch *= 0.5;
    ExtractionResult res = audio::extract_hidden(marked, SecretKey{5}, kParams);
    CHECK(res.detected);
    CHECK(*res.bits == payload.bits());
}

TEST_CASE("wrong key: bit accuracy near 0.5, not detected") {
    AudioClip clip = testutil::test_audio(30.0, 7);
    auto payload = payload32(7);
    AudioClip marked = audio::embed_hidden(clip, payload, SecretKey{6}, kParams);
    double ba_sum = 0.0;
    int detected = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        ExtractionResult res = audio::extract_hidden(
            marked, SecretKey{300 + static_cast<unsigned>(t)}, kParams);
        ba_sum += metrics::bit_accuracy(payload.bits(), *res.bits);
        detected += res.detected ? 1 : 0;
    }
    CHECK(ba_sum / trials > 0.4);
    CHECK(ba_sum / trials < 0.6);
    CHECK(detected <= 2);
}

TEST_CASE("localization: watermark on a window-aligned interval") {
    // 60 s clip; watermark samples [W*40, W*140) -- a 100-window interval
    // (>= 4P = 192? no: 4P windows = 192 windows minimum per the
    // localization contract; use 192) of the 234 full windows.
    AudioClip clip = testutil::test_audio(60.0, 8);
    const int W = kParams.window;
    const std::int64_t begin = static_cast<std::int64_t>(W) * 20;
    const std::int64_t end = begin + static_cast<std::int64_t>(W) * 192;
    AudioClip slice;
    slice.sample_rate = clip.sample_rate;
    slice.channels.push_back(clip.channels[0].segment(begin, end - begin));
    auto payload = payload32(8);
    AudioClip marked_slice = audio::embed_hidden(slice, payload, SecretKey{7}, kParams);
    AudioClip spliced = clip;
    spliced.channels[0].segment(begin, end - begin) = marked_slice.channels[0];

    ExtractionResult res = audio::extract_hidden(spliced, SecretKey{7}, kParams);
    CHECK(res.detected);
    CHECK(*res.bits == payload.bits());
    REQUIRE(res.segments.has_value());
    std::int64_t inter = 0, cover = 0;
    for (const auto& [b, e] : *res.segments) {
        cover += e - b;
        inter += std::max<std::int64_t>(0, std::min(e, end) - std::max(b, begin));
    }
    double uni = static_cast<double>((end - begin) + cover - inter);
    CHECK(inter / uni >= 0.8);
}

TEST_CASE("tone signature: pure prefix, detected at offset 0") {
    AudioClip clip = testutil::test_audio(5.0, 9);
    audio::ToneParams tp{};
    AudioClip marked = audio::embed_visible(clip, tp);
    const Eigen::Index sig = clip.sample_rate;  // 1.0 s
    CHECK(marked.length() == clip.length() + sig);
    CHECK((marked.channels[0].tail(clip.length()) - clip.channels[0]).abs().maxCoeff() ==
          0.0);

    ExtractionResult res = audio::detect_visible(marked, tp);
    CHECK(res.detected);
    REQUIRE(res.segments.has_value());
    CHECK((*res.segments)[0].first == 0);
    CHECK(!res.bits.has_value());

    CHECK(!audio::detect_visible(clip, tp).detected);
}

TEST_CASE("tone signature detection across random content is quiet") {
    audio::ToneParams tp{};
    int detected = 0;
    for (int t = 0; t < 20; ++t)
        detected +=
            audio::detect_visible(testutil::test_audio(3.0, 500 + static_cast<unsigned>(t)), tp)
                    .detected
                ? 1
                : 0;
    CHECK(detected == 0);
}
