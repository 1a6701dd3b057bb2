#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmkit/attacks.hpp"
#include "wmkit/config.hpp"
#include "wmkit/dataset.hpp"
#include "wmkit/metrics.hpp"

namespace wmkit::bench {

struct SuiteSpec {
    std::string name;
    Modality modality = Modality::Image;
    DatasetSpec dataset;
    std::vector<attacks::AttackSpec> attacks;  // identity injected at front
    int trials = 2;
    std::uint64_t seed = 42;
    int payload_bits = 64;
};

// YAML suite file under benchmarks/, strict schema. The identity attack
// "none" is prepended if the file does not list it.
SuiteSpec load_suite(const std::string& path);

// Standalone YAML dataset spec (same keys as a suite's dataset block plus
// modality/count/seed), used by `bench dataset`.
DatasetSpec load_dataset_spec(const std::string& path);

// Materializes the corpus under dir (PNG / frame-dir / WAV / TXT) plus a
// manifest.json listing the items; returns the relative item paths.
std::vector<std::string> write_dataset(const DatasetSpec& spec, const std::string& dir);

struct QualityCell {
    // nullopt -> JSON null (metric not applicable to the modality);
    // +inf -> the string "inf".
    std::optional<double> psnr_db;
    std::optional<double> ssim;
    std::optional<double> snr_db;
};

struct ReportRow {
    attacks::AttackSpec attack;
    QualityCell quality;
    metrics::RobustnessScores robustness;
};

struct BenchmarkReport {
    struct Meta {
        std::string suite;
        std::uint64_t seed = 0;
        std::string config_digest;
        std::string version;
        std::string timestamp;
    } meta;
    std::vector<ReportRow> rows;
};

// Attack-Detect-Score loop. Per (item, trial): derive key and payload
// from the master seed, embed, score quality against the original, then
// run every attack and extract. Unwatermarked controls feed the FPR
// column. Items fan out over `jobs` threads; the report is bit-identical
// (timestamp aside) for any job count because all randomness is derived
// up front and aggregation happens in fixed index order.
BenchmarkReport run_suite(const SuiteSpec& suite, const EngineConfig& base_cfg,
                          int jobs);

// Writes report.json (byte-stable, 6-decimal numbers, fixed key order),
// report.md, and radar.svg into dir.
void write_report(const BenchmarkReport& report, const std::string& dir);

std::string serialize_report(const BenchmarkReport& report);
BenchmarkReport parse_report(const std::string& json_text);

std::string render_markdown(const BenchmarkReport& report);
std::string render_radar_svg(const BenchmarkReport& report);

}  // namespace wmkit::bench
