#include <doctest.h>

#include "helpers.hpp"
#include "wmkit/media_io.hpp"
#include "wmkit/metrics.hpp"
#include "wmkit/visual.hpp"

using namespace wmkit;

namespace {

const visual::VisualWmParams kParams{};
const visual::BadgeParams kBadge{};

VideoClip one_frame(const ImageBuffer& img) { return io::image_as_clip(img); }

}  // namespace

TEST_CASE("hidden watermark round trip on a 64x64 image, L=64") {
    ImageBuffer img = testutil::test_image(64, 64, 1);
    KeyStream ps(SecretKey{1}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    VideoClip marked = visual::embed_hidden(one_frame(img), payload, SecretKey{7}, kParams);

    CHECK(marked.frames[0].width == 64);
    CHECK(marked.frames[0].height == 64);
    CHECK(marked.frames[0] != img);  // not bit-identical to input
    CHECK(metrics::psnr(img, marked.frames[0]) >= 45.0);

    // 64 blocks for 64 bits: one observation per bit, so the grain of the
    // cover content flips isolated bits and the z-score never reaches the
    // detection threshold. Recovery must still be far above chance.
    ExtractionResult res = visual::extract_hidden(marked, SecretKey{7}, 64, kParams);
    REQUIRE(res.bits.has_value());
    CHECK(metrics::bit_accuracy(payload.bits(), *res.bits) >= 0.8);
}

TEST_CASE("exact recovery with 16 blocks per bit (256x256, L=64)") {
    ImageBuffer img = testutil::test_image(256, 256, 10);
    KeyStream ps(SecretKey{10}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    VideoClip marked = visual::embed_hidden(one_frame(img), payload, SecretKey{8}, kParams);
    ExtractionResult res = visual::extract_hidden(marked, SecretKey{8}, 64, kParams);
    CHECK(*res.bits == payload.bits());
}

TEST_CASE("256x256 round trip detects with z >= 3") {
    ImageBuffer img = testutil::test_image(256, 256, 2);
    KeyStream ps(SecretKey{2}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    VideoClip marked = visual::embed_hidden(one_frame(img), payload, SecretKey{9}, kParams);
    ExtractionResult res = visual::extract_hidden(marked, SecretKey{9}, 64, kParams);
    CHECK(res.detected);
    CHECK(res.confidence >= 3.0);
    CHECK(*res.bits == payload.bits());
}

TEST_CASE("capacity arithmetic") {
    CHECK(visual::block_capacity(64, 64) == 64);
    CHECK(visual::block_capacity(63, 63) == 49);
    ImageBuffer small = testutil::test_image(63, 63, 3);
    KeyStream ps(SecretKey{3}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    CHECK_THROWS_AS(visual::embed_hidden(one_frame(small), payload, SecretKey{1}, kParams),
                    CapacityExceeded);
}

TEST_CASE("embedding is deterministic") {
    ImageBuffer img = testutil::test_image(64, 64, 4);
    KeyStream ps(SecretKey{4}, "payload", 0);
    auto payload = MessagePayload::random(ps, 16);
    VideoClip a = visual::embed_hidden(one_frame(img), payload, SecretKey{5}, kParams);
    VideoClip b = visual::embed_hidden(one_frame(img), payload, SecretKey{5}, kParams);
    CHECK(a == b);
}

TEST_CASE("identical pattern per frame: static clip frames stay identical") {
    ImageBuffer img = testutil::test_image(128, 128, 5);
    VideoClip clip = testutil::static_clip(img, 4);
    KeyStream ps(SecretKey{5}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    VideoClip marked = visual::embed_hidden(clip, payload, SecretKey{6}, kParams);
    CHECK(marked.frames.size() == 4);
    for (std::size_t t = 1; t < 4; ++t) CHECK(marked.frames[t] == marked.frames[0]);
}

TEST_CASE("wrong key: mean bit accuracy near 0.5, rarely detected") {
    ImageBuffer img = testutil::test_image(256, 256, 6);
    KeyStream ps(SecretKey{6}, "payload", 0);
    auto payload = MessagePayload::random(ps, 64);
    VideoClip marked = visual::embed_hidden(one_frame(img), payload, SecretKey{100}, kParams);

    double ba_sum = 0.0;
    int detected = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        ExtractionResult res =
            visual::extract_hidden(marked, SecretKey{200 + static_cast<unsigned>(t)},
                                   64, kParams);
        ba_sum += metrics::bit_accuracy(payload.bits(), *res.bits);
        detected += res.detected ? 1 : 0;
    }
    CHECK(ba_sum / trials > 0.45);
    CHECK(ba_sum / trials < 0.55);
    CHECK(detected <= 4);  // <= 10%
}

TEST_CASE("unwatermarked content is not detected") {
    int detected = 0;
    for (int t = 0; t < 20; ++t) {
        ImageBuffer img = testutil::test_image(256, 256, 1000 + static_cast<unsigned>(t));
        ExtractionResult res =
            visual::extract_hidden(one_frame(img), SecretKey{42}, 64, kParams);
        detected += res.detected ? 1 : 0;
    }
    CHECK(detected <= 2);
}

TEST_CASE("extraction result carries no segments for visual media") {
    ImageBuffer img = testutil::test_image(64, 64, 7);
    ExtractionResult res = visual::extract_hidden(one_frame(img), SecretKey{1}, 16, kParams);
    CHECK(!res.segments.has_value());
}

TEST_CASE("badge: embed/detect round trip and locality") {
    ImageBuffer img = testutil::test_image(128, 128, 8);
    VideoClip marked = visual::embed_visible(one_frame(img), kBadge);
    ExtractionResult res = visual::detect_visible(marked, kBadge);
    CHECK(res.detected);
    CHECK(res.confidence >= 0.99);
    CHECK(!res.bits.has_value());  // VisibleMark results carry no bits

    // pixel diff mask is exactly the badge rectangle (bottom-right,
    // side = max(24, round(0.08*128)) = 24, 2 px inset)
    const ImageBuffer& out = marked.frames[0];
    int side = 24, inset = 2;
    int x0 = 128 - inset - side, y0 = 128 - inset - side;
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            bool inside = x >= x0 && x < x0 + side && y >= y0 && y < y0 + side;
            bool differs = false;
            for (int c = 0; c < 3; ++c)
                if (out.at(x, y, c) != img.at(x, y, c)) differs = true;
            if (!inside) CHECK(!differs);
        }

    ExtractionResult none = visual::detect_visible(one_frame(img), kBadge);
    CHECK(!none.detected);
}

TEST_CASE("badge requires min dimension 24") {
    ImageBuffer tiny = testutil::test_image(20, 20, 9);
    CHECK_THROWS_AS(visual::embed_visible(one_frame(tiny), kBadge), MediaTooSmall);
}

TEST_CASE("unmarked corpus rarely trips badge detection") {
    int detected = 0;
    for (int t = 0; t < 20; ++t) {
        ImageBuffer img = testutil::test_image(128, 128, 2000 + static_cast<unsigned>(t));
        detected += visual::detect_visible(one_frame(img), kBadge).detected ? 1 : 0;
    }
    CHECK(detected <= 1);
}
