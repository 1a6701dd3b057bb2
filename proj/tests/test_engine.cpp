#include <doctest.h>

#include <thread>
#include <vector>

#include "helpers.hpp"
#include "wmkit/engine.hpp"
#include "wmkit/media_io.hpp"

using namespace wmkit;

namespace {

Engine make_engine() { return Engine{load_config(std::nullopt)}; }

MessagePayload payload64(std::uint64_t seed) {
    KeyStream ps(SecretKey{seed}, "payload", 0);
    return MessagePayload::random(ps, 64);
}

}  // namespace

TEST_CASE("backends initialize lazily and exactly once") {
    Engine eng = make_engine();
    CHECK(eng.init_count(BackendKind::Visual) == 0);
    CHECK(eng.init_count(BackendKind::Audio) == 0);
    CHECK(eng.init_count(BackendKind::Text) == 0);

    CHECK(eng.get_or_init_adapter(Modality::Image, OperationMode::Watermark) ==
          BackendKind::Visual);
    CHECK(eng.init_count(BackendKind::Visual) == 1);
    CHECK(eng.init_count(BackendKind::Audio) == 0);

    // video shares the visual backend; no second construction
    CHECK(eng.get_or_init_adapter(Modality::Video, OperationMode::VisibleMark) ==
          BackendKind::Visual);
    CHECK(eng.init_count(BackendKind::Visual) == 1);

    eng.get_or_init_adapter(Modality::Audio, OperationMode::Watermark);
    eng.get_or_init_adapter(Modality::Text, OperationMode::Watermark);
    CHECK(eng.init_count(BackendKind::Audio) == 1);
    CHECK(eng.init_count(BackendKind::Text) == 1);
}

TEST_CASE("concurrent first use still initializes once") {
    Engine eng = make_engine();
    std::vector<std::thread> workers;
    for (int t = 0; t < 16; ++t)
        workers.emplace_back([&eng] {
            eng.get_or_init_adapter(Modality::Video, OperationMode::Watermark);
            eng.get_or_init_adapter(Modality::Audio, OperationMode::VisibleMark);
        });
    for (auto& w : workers) w.join();
    CHECK(eng.init_count(BackendKind::Visual) == 1);
    CHECK(eng.init_count(BackendKind::Audio) == 1);
}

TEST_CASE("dispatch totality: all modality/mode pairs resolve") {
    Engine eng = make_engine();
    for (auto mode : {OperationMode::Watermark, OperationMode::VisibleMark}) {
        CHECK(eng.get_or_init_adapter(Modality::Image, mode) == BackendKind::Visual);
        CHECK(eng.get_or_init_adapter(Modality::Video, mode) == BackendKind::Visual);
        CHECK(eng.get_or_init_adapter(Modality::Audio, mode) == BackendKind::Audio);
        CHECK(eng.get_or_init_adapter(Modality::Text, mode) == BackendKind::Text);
    }
}

TEST_CASE("watermark mode without payload is rejected before any work") {
    Engine eng = make_engine();
    MediaObject img{testutil::test_image(64, 64, 1)};
    CHECK_THROWS_AS(eng.embed(img, OperationMode::Watermark, std::nullopt, SecretKey{1}),
                    PayloadRequired);
    CHECK(eng.init_count(BackendKind::Visual) == 0);
}

TEST_CASE("image embedding equals single-frame video embedding bit-for-bit") {
    Engine eng = make_engine();
    ImageBuffer img = testutil::test_image(128, 128, 2);
    auto payload = payload64(2);
    MediaObject as_image =
        eng.embed(MediaObject{img}, OperationMode::Watermark, payload, SecretKey{5});
    MediaObject as_video = eng.embed(MediaObject{io::image_as_clip(img)},
                                     OperationMode::Watermark, payload, SecretKey{5});
    CHECK(as_image.image() == as_video.video().frames[0]);
}

TEST_CASE("engine round trips every modality through the facade") {
    Engine eng = make_engine();
    SecretKey key{99};

    auto payload = payload64(3);
    MediaObject img{testutil::test_image(256, 256, 3)};
    MediaObject marked = eng.embed(img, OperationMode::Watermark, payload, key);
    ExtractionResult res = eng.extract(marked, OperationMode::Watermark, key);
    CHECK(res.detected);
    CHECK(*res.bits == payload.bits());

    MediaObject badge = eng.embed(img, OperationMode::VisibleMark, std::nullopt, key);
    CHECK(eng.extract(badge, OperationMode::VisibleMark, key).detected);
    CHECK(!eng.extract(img, OperationMode::VisibleMark, key).detected);

    // audio uses its configured 32-bit payload length
    KeyStream ps(SecretKey{4}, "payload", 0);
    auto apayload = MessagePayload::random(ps, 32);
    MediaObject clip{testutil::test_audio(30.0, 4)};
    MediaObject amarked = eng.embed(clip, OperationMode::Watermark, apayload, key);
    ExtractionResult ares = eng.extract(amarked, OperationMode::Watermark, key);
    CHECK(ares.detected);
    CHECK(*ares.bits == apayload.bits());
}

TEST_CASE("engine embedding is deterministic") {
    Engine eng = make_engine();
    MediaObject img{testutil::test_image(64, 64, 5)};
    auto payload = payload64(5);
    MediaObject a = eng.embed(img, OperationMode::Watermark, payload, SecretKey{6});
    MediaObject b = eng.embed(img, OperationMode::Watermark, payload, SecretKey{6});
    CHECK(a.image() == b.image());
}

TEST_CASE("capacity errors surface through the facade") {
    Engine eng = make_engine();  // default 64-bit visual payload
    MediaObject tiny{testutil::test_image(8, 8, 6)};
    CHECK_THROWS_AS(eng.embed(tiny, OperationMode::Watermark, payload64(6), SecretKey{1}),
                    CapacityExceeded);
}
