#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "wmkit/config.hpp"
#include "wmkit/errors.hpp"

using namespace wmkit;
using testutil::TempDir;

namespace {

std::string write_yaml(const TempDir& dir, const std::string& body) {
    std::string path = dir.str("cfg.yaml");
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("no path yields built-in defaults") {
    EngineConfig cfg = load_config(std::nullopt);
    CHECK(cfg.image.watermark.strength == 2.0);
    CHECK(cfg.image.watermark.block == 8);
    CHECK(cfg.engine.default_message_bits == 64);
    CHECK(cfg.audio.watermark.window == 4096);
    CHECK(cfg.audio.watermark.payload_bits == 32);
    CHECK(cfg.text.watermark.payload_bits == 16);
    CHECK(cfg.text.visible_mark.label == "[AI-GENERATED]");
    CHECK(cfg.bench.trials == 20);
}

TEST_CASE("overlay: single field changes, others stay default") {
    TempDir dir;
    auto path = write_yaml(dir, "image:\n  watermark:\n    strength: 3.5\n");
    EngineConfig cfg = load_config(path);
    CHECK(cfg.image.watermark.strength == 3.5);
    CHECK(cfg.image.watermark.detect_threshold == 3.0);
    CHECK(cfg.audio.watermark.gain == 0.05);
}

TEST_CASE("typo'd key is rejected") {
    TempDir dir;
    auto path = write_yaml(dir, "image:\n  watermark:\n    strenght: 3.5\n");
    CHECK_THROWS_AS(load_config(path), UnknownConfigKey);
}

TEST_CASE("out-of-range values are rejected") {
    TempDir dir;
    CHECK_THROWS_AS(
        load_config(write_yaml(dir, "image:\n  watermark:\n    strength: -1\n")),
        OutOfRangeValue);
    CHECK_THROWS_AS(
        load_config(write_yaml(dir, "audio:\n  watermark:\n    gain: 0.9\n")),
        OutOfRangeValue);
    CHECK_THROWS_AS(
        load_config(write_yaml(dir, "engine:\n  default_message_bits: 0\n")),
        OutOfRangeValue);
    CHECK_THROWS_AS(
        load_config(write_yaml(dir, "image:\n  watermark:\n    algorithm: magic\n")),
        OutOfRangeValue);
}

TEST_CASE("unparsable YAML and missing file") {
    TempDir dir;
    CHECK_THROWS_AS(load_config(write_yaml(dir, "image: [unclosed\n")), ConfigParseError);
    CHECK_THROWS_AS(load_config(dir.str("nope.yaml")), IoError);
}

TEST_CASE("bundled default config equals built-in defaults") {
    EngineConfig from_file = load_config(std::string(WMKIT_SOURCE_DIR) +
                                         "/config/default_config.yaml");
    EngineConfig builtin = load_config(std::nullopt);
    CHECK(from_file.canonical_dump() == builtin.canonical_dump());
    CHECK(from_file.digest() == builtin.digest());
}

TEST_CASE("digest is stable and sensitive") {
    EngineConfig a = load_config(std::nullopt);
    EngineConfig b = load_config(std::nullopt);
    CHECK(a.digest() == b.digest());
    b.image.watermark.strength = 2.5;
    CHECK(a.digest() != b.digest());
}
