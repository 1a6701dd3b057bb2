#include "wmkit/bench.hpp"

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <json.hpp>
#include <numbers>
#include <thread>

#include "wmkit/engine.hpp"
#include "wmkit/media_io.hpp"
#include "wmkit/payload.hpp"

namespace wmkit::bench {

namespace {

constexpr const char* kLpipsReason =
    "no learned perceptual model is bundled; lpips is not computed";

Modality parse_modality(const std::string& s) {
    if (s == "image") return Modality::Image;
    if (s == "video") return Modality::Video;
    if (s == "audio") return Modality::Audio;
    if (s == "text") return Modality::Text;
    throw BadSpec("unknown modality: " + s);
}

void require_keys(const YAML::Node& node, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& kv : node) {
        std::string key = kv.first.as<std::string>();
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw BadSpec("unknown key '" + key + "' in " + where);
    }
}

std::string format6(double v) {
    if (std::isinf(v)) return "\"inf\"";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string quality_field(const std::optional<double>& v) {
    return v ? format6(*v) : "null";
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string attack_label(const attacks::AttackSpec& a) {
    std::string label = a.name;
    for (const auto& [k, v] : a.params) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%g", v);
        label += " " + k + "=" + buf;
    }
    return label;
}

// Effective config for a suite: the suite's payload length overrides the
// modality's configured payload length.
EngineConfig effective_config(const SuiteSpec& suite, EngineConfig cfg) {
    switch (suite.modality) {
        case Modality::Image:
        case Modality::Video:
            cfg.engine.default_message_bits = suite.payload_bits;
            break;
        case Modality::Audio:
            cfg.audio.watermark.payload_bits = suite.payload_bits;
            break;
        case Modality::Text:
            cfg.text.watermark.payload_bits = suite.payload_bits;
            break;
    }
    return cfg;
}

QualityCell measure_quality(const MediaObject& orig, const MediaObject& emb) {
    QualityCell q;
    switch (orig.modality()) {
        case Modality::Image:
            q.psnr_db = metrics::psnr(orig.image(), emb.image());
            q.ssim = metrics::ssim(orig.image(), emb.image());
            break;
        case Modality::Video: {
            auto vq = metrics::video_quality(orig.video(), emb.video());
            q.psnr_db = vq.psnr_db;
            q.ssim = vq.ssim;
            break;
        }
        case Modality::Audio:
            q.snr_db = metrics::snr_db(orig.audio(), emb.audio());
            break;
        case Modality::Text:
            break;  // no numeric fidelity metric for text
    }
    return q;
}

// Mean that skips +inf entries; all-inf (or empty) collapses to +inf.
std::optional<double> finite_mean(const std::vector<double>& values, bool applicable) {
    if (!applicable) return std::nullopt;
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values)
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    if (n == 0) return metrics::kInfiniteDb;
    return sum / static_cast<double>(n);
}

struct TaskFailure {
    int item = 0;
    std::string attack;
    std::string error_name;
    std::string message;
};

}  // namespace

SuiteSpec load_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open suite file: " + path);

    YAML::Node root;
    try {
        root = YAML::Load(in);
    } catch (const YAML::Exception& e) {
        throw BadSpec("suite parse error in " + path + ": " + e.what());
    }
    if (!root.IsMap()) throw BadSpec("suite file must be a YAML mapping");
    require_keys(root, {"name", "modality", "payload_bits", "trials", "seed",
                        "dataset", "attacks"},
                 "suite");

    SuiteSpec suite;
    try {
        if (!root["name"] || !root["modality"])
            throw BadSpec("suite requires 'name' and 'modality'");
        suite.name = root["name"].as<std::string>();
        suite.modality = parse_modality(root["modality"].as<std::string>());
        if (root["payload_bits"]) suite.payload_bits = root["payload_bits"].as<int>();
        if (root["trials"]) suite.trials = root["trials"].as<int>();
        if (root["seed"]) suite.seed = root["seed"].as<std::uint64_t>();

        if (root["dataset"]) {
            const YAML::Node& d = root["dataset"];
            require_keys(d, {"count", "kind", "size", "frames", "fps", "frame_size",
                             "duration_s", "rate", "sentences"},
                         "dataset");
            if (d["count"]) suite.dataset.count = d["count"].as<int>();
            if (d["kind"]) suite.dataset.kind = d["kind"].as<std::string>();
            if (d["size"]) suite.dataset.size = d["size"].as<int>();
            if (d["frames"]) suite.dataset.frames = d["frames"].as<int>();
            if (d["fps"]) suite.dataset.fps = d["fps"].as<double>();
            if (d["frame_size"]) suite.dataset.frame_size = d["frame_size"].as<int>();
            if (d["duration_s"]) suite.dataset.duration_s = d["duration_s"].as<double>();
            if (d["rate"]) suite.dataset.rate = d["rate"].as<int>();
            if (d["sentences"]) suite.dataset.sentences = d["sentences"].as<int>();
        }

        if (root["attacks"]) {
            if (!root["attacks"].IsSequence())
                throw BadSpec("'attacks' must be a sequence");
            for (const auto& entry : root["attacks"]) {
                require_keys(entry, {"name", "params", "seed"}, "attack");
                if (!entry["name"]) throw BadSpec("attack entry requires 'name'");
                attacks::AttackSpec spec;
                spec.name = entry["name"].as<std::string>();
                if (entry["params"])
                    for (const auto& kv : entry["params"])
                        spec.params[kv.first.as<std::string>()] =
                            kv.second.as<double>();
                if (entry["seed"]) spec.seed = entry["seed"].as<std::uint64_t>();
                suite.attacks.push_back(std::move(spec));
            }
        }
    } catch (const YAML::Exception& e) {
        throw BadSpec("suite value error in " + path + ": " + e.what());
    }

    if (suite.payload_bits < 1 || suite.payload_bits > 256)
        throw BadSpec("payload_bits must be in 1..256");
    if (suite.trials < 1) throw BadSpec("trials must be >= 1");

    bool has_identity = false;
    for (const auto& a : suite.attacks)
        if (a.name == "none") has_identity = true;
    if (!has_identity)
        suite.attacks.insert(suite.attacks.begin(), attacks::identity_attack());
    return suite;
}

DatasetSpec load_dataset_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset spec: " + path);
    YAML::Node root;
    try {
        root = YAML::Load(in);
    } catch (const YAML::Exception& e) {
        throw BadSpec("dataset spec parse error in " + path + ": " + e.what());
    }
    if (!root.IsMap()) throw BadSpec("dataset spec must be a YAML mapping");
    require_keys(root, {"modality", "count", "seed", "kind", "size", "frames", "fps",
                        "frame_size", "duration_s", "rate", "sentences"},
                 "dataset spec");
    DatasetSpec spec;
    try {
        if (!root["modality"]) throw BadSpec("dataset spec requires 'modality'");
        spec.modality = parse_modality(root["modality"].as<std::string>());
        if (root["count"]) spec.count = root["count"].as<int>();
        if (root["seed"]) spec.seed = root["seed"].as<std::uint64_t>();
        if (root["kind"]) spec.kind = root["kind"].as<std::string>();
        if (root["size"]) spec.size = root["size"].as<int>();
        if (root["frames"]) spec.frames = root["frames"].as<int>();
        if (root["fps"]) spec.fps = root["fps"].as<double>();
        if (root["frame_size"]) spec.frame_size = root["frame_size"].as<int>();
        if (root["duration_s"]) spec.duration_s = root["duration_s"].as<double>();
        if (root["rate"]) spec.rate = root["rate"].as<int>();
        if (root["sentences"]) spec.sentences = root["sentences"].as<int>();
    } catch (const YAML::Exception& e) {
        throw BadSpec("dataset spec value error in " + path + ": " + e.what());
    }
    if (spec.count < 1) throw BadSpec("dataset count must be >= 1");
    return spec;
}

std::vector<std::string> write_dataset(const DatasetSpec& spec, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create dataset directory: " + dir);

    std::vector<std::string> rel_paths;
    for (int i = 0; i < spec.count; ++i) {
        MediaObject item = generate_item(spec, i);
        char name[64];
        switch (spec.modality) {
            case Modality::Image:
                std::snprintf(name, sizeof(name), "image_%03d.png", i);
                io::save_image(item.image(), dir + "/" + name, io::ImageFormat::Png);
                break;
            case Modality::Video: {
                std::snprintf(name, sizeof(name), "video_%03d", i);
                io::save_video(item.video(), dir + "/" + name);
                std::snprintf(name, sizeof(name), "video_%03d/manifest.json", i);
                break;
            }
            case Modality::Audio:
                std::snprintf(name, sizeof(name), "audio_%03d.wav", i);
                io::save_wav(item.audio(), dir + "/" + name);
                break;
            case Modality::Text:
                std::snprintf(name, sizeof(name), "text_%03d.txt", i);
                io::save_text(item.text().content, dir + "/" + name);
                break;
        }
        rel_paths.emplace_back(name);
    }

    std::string manifest = "{\n  \"modality\": \"" +
                           std::string(modality_name(spec.modality)) +
                           "\",\n  \"count\": " + std::to_string(spec.count) +
                           ",\n  \"seed\": " + std::to_string(spec.seed) +
                           ",\n  \"items\": [";
    for (std::size_t i = 0; i < rel_paths.size(); ++i) {
        if (i) manifest += ", ";
        manifest += "\"" + json_escape(rel_paths[i]) + "\"";
    }
    manifest += "]\n}\n";
    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write dataset manifest in " + dir);
    out << manifest;
    return rel_paths;
}

BenchmarkReport run_suite(const SuiteSpec& suite, const EngineConfig& base_cfg,
                          int jobs) {
    if (jobs < 1) jobs = 1;
    EngineConfig cfg = effective_config(suite, base_cfg);
    Engine engine(cfg);

    DatasetSpec ds = suite.dataset;
    ds.modality = suite.modality;
    ds.seed = suite.seed;
    const std::vector<MediaObject> items = generate_dataset(ds);

    const int I = static_cast<int>(items.size());
    const int T = suite.trials;
    const int A = static_cast<int>(suite.attacks.size());
    const std::size_t L = static_cast<std::size_t>(suite.payload_bits);
    const SecretKey master{suite.seed};

    // All randomness derived before any work fans out.
    std::vector<SecretKey> keys(static_cast<std::size_t>(I) * T);
    std::vector<MessagePayload> payloads(static_cast<std::size_t>(I) * T);
    for (int i = 0; i < I; ++i)
        for (int t = 0; t < T; ++t) {
            std::uint64_t idx = static_cast<std::uint64_t>(i) * T + t;
            keys[idx] = SecretKey{derive_stream(master, "bench-key", idx).next_u64()};
            KeyStream ps = derive_stream(master, "bench-payload", idx);
            payloads[idx] = MessagePayload::random(ps, L);
        }
    auto attack_seed = [&](int a, int i, int t) {
        std::uint64_t idx = (static_cast<std::uint64_t>(a) * I + i) * T + t;
        return derive_stream(master, "bench-attack", idx).next_u64() ^
               suite.attacks[static_cast<std::size_t>(a)].seed;
    };
    auto control_seed = [&](int a, int i) {
        std::uint64_t idx = static_cast<std::uint64_t>(a) * I + i;
        return derive_stream(master, "bench-control", idx).next_u64() ^
               suite.attacks[static_cast<std::size_t>(a)].seed;
    };

    // Per-task result slots, indexed deterministically.
    std::vector<double> ba(static_cast<std::size_t>(A) * I * T, 0.0);
    std::vector<char> detected(static_cast<std::size_t>(A) * I * T, 0);
    std::vector<char> false_alarm(static_cast<std::size_t>(A) * I, 0);
    std::vector<QualityCell> quality(static_cast<std::size_t>(I) * T);

    std::atomic<int> next_item{0};
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::optional<TaskFailure> first_failure;

    auto record_failure = [&](int item, const std::string& attack, const Error* err,
                              const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!first_failure || item < first_failure->item)
            first_failure = TaskFailure{item, attack, err ? err->name() : "Error",
                                        e.what()};
        failed.store(true);
    };

    auto run_item = [&](int i) {
        std::string stage = "none";
        try {
            const MediaObject& orig = items[static_cast<std::size_t>(i)];
            for (int t = 0; t < T; ++t) {
                std::size_t idx = static_cast<std::size_t>(i) * T + t;
                stage = "none";
                MediaObject emb = engine.embed(orig, OperationMode::Watermark,
                                               payloads[idx], keys[idx]);
                quality[idx] = measure_quality(orig, emb);
                for (int a = 0; a < A; ++a) {
                    attacks::AttackSpec spec = suite.attacks[static_cast<std::size_t>(a)];
                    stage = spec.name;
                    spec.seed = attack_seed(a, i, t);
                    MediaObject attacked = attacks::apply_attack(emb, spec);
                    ExtractionResult res =
                        engine.extract(attacked, OperationMode::Watermark, keys[idx]);
                    std::size_t slot = (static_cast<std::size_t>(a) * I + i) * T + t;
                    detected[slot] = res.detected ? 1 : 0;
                    ba[slot] = res.bits ? metrics::bit_accuracy(payloads[idx].bits(),
                                                                *res.bits)
                                        : 0.0;
                }
            }
            // Unwatermarked controls: one per (item, attack), trial-0 key.
            for (int a = 0; a < A; ++a) {
                attacks::AttackSpec spec = suite.attacks[static_cast<std::size_t>(a)];
                stage = spec.name;
                spec.seed = control_seed(a, i);
                MediaObject attacked = attacks::apply_attack(orig, spec);
                ExtractionResult res =
                    engine.extract(attacked, OperationMode::Watermark,
                                   keys[static_cast<std::size_t>(i) * T]);
                false_alarm[static_cast<std::size_t>(a) * I + i] = res.detected ? 1 : 0;
            }
        } catch (const Error& e) {
            record_failure(i, stage, &e, e);
        } catch (const std::exception& e) {
            record_failure(i, stage, nullptr, e);
        }
    };

    auto worker = [&] {
        while (!failed.load()) {
            int i = next_item.fetch_add(1);
            if (i >= I) return;
            run_item(i);
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min(jobs, I); ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (first_failure) {
        const TaskFailure& f = *first_failure;
        throw Error(f.error_name, "suite '" + suite.name + "' failed at item " +
                                      std::to_string(f.item) + ", attack '" +
                                      f.attack + "': " + f.message);
    }

    // Fixed-order aggregation: identical sums for any thread count.
    const bool visual = suite.modality == Modality::Image ||
                        suite.modality == Modality::Video;
    const bool is_audio = suite.modality == Modality::Audio;
    std::vector<double> psnrs, ssims, snrs;
    for (const auto& q : quality) {
        if (q.psnr_db) psnrs.push_back(*q.psnr_db);
        if (q.ssim) ssims.push_back(*q.ssim);
        if (q.snr_db) snrs.push_back(*q.snr_db);
    }
    QualityCell agg;
    agg.psnr_db = finite_mean(psnrs, visual);
    agg.snr_db = finite_mean(snrs, is_audio);
    if (visual) {
        double s = 0.0;
        for (double v : ssims) s += v;
        agg.ssim = s / static_cast<double>(ssims.size());
    }

    BenchmarkReport report;
    report.meta.suite = suite.name;
    report.meta.seed = suite.seed;
    char digest_hex[32];
    std::snprintf(digest_hex, sizeof(digest_hex), "%016llx",
                  static_cast<unsigned long long>(cfg.digest()));
    report.meta.config_digest = digest_hex;
    report.meta.version = WMKIT_VERSION;
    report.meta.timestamp = iso_timestamp();

    for (int a = 0; a < A; ++a) {
        ReportRow row;
        row.attack = suite.attacks[static_cast<std::size_t>(a)];
        row.quality = agg;
        double ba_sum = 0.0;
        std::int64_t tp = 0, fp = 0;
        for (int i = 0; i < I; ++i) {
            for (int t = 0; t < T; ++t) {
                std::size_t slot = (static_cast<std::size_t>(a) * I + i) * T + t;
                ba_sum += ba[slot];
                tp += detected[slot];
            }
            fp += false_alarm[static_cast<std::size_t>(a) * I + i];
        }
        row.robustness.n_positive = static_cast<std::int64_t>(I) * T;
        row.robustness.n_negative = I;
        row.robustness.bit_accuracy = ba_sum / static_cast<double>(I * T);
        row.robustness.tpr = static_cast<double>(tp) / static_cast<double>(I * T);
        row.robustness.fpr = static_cast<double>(fp) / static_cast<double>(I);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string serialize_report(const BenchmarkReport& report) {
    std::string out;
    out += "{\n";
    out += "  \"meta\": {\n";
    out += "    \"suite\": \"" + json_escape(report.meta.suite) + "\",\n";
    out += "    \"seed\": " + std::to_string(report.meta.seed) + ",\n";
    out += "    \"config_digest\": \"" + json_escape(report.meta.config_digest) + "\",\n";
    out += "    \"version\": \"" + json_escape(report.meta.version) + "\",\n";
    out += "    \"timestamp\": \"" + json_escape(report.meta.timestamp) + "\"\n";
    out += "  },\n";
    out += "  \"rows\": [\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const ReportRow& row = report.rows[r];
        out += "    {\n";
        out += "      \"attack\": {\"name\": \"" + json_escape(row.attack.name) +
               "\", \"params\": {";
        bool first = true;
        for (const auto& [k, v] : row.attack.params) {
            if (!first) out += ", ";
            first = false;
            out += "\"" + json_escape(k) + "\": " + format6(v);
        }
        out += "}, \"seed\": " + std::to_string(row.attack.seed) + "},\n";
        out += "      \"quality\": {\"psnr_db\": " + quality_field(row.quality.psnr_db) +
               ", \"ssim\": " + quality_field(row.quality.ssim) +
               ", \"snr_db\": " + quality_field(row.quality.snr_db) +
               ", \"lpips\": null, \"lpips_reason\": \"" + json_escape(kLpipsReason) +
               "\"},\n";
        out += "      \"robustness\": {\"bit_accuracy\": " +
               format6(row.robustness.bit_accuracy) +
               ", \"tpr\": " + format6(row.robustness.tpr) +
               ", \"fpr\": " + format6(row.robustness.fpr) +
               ", \"n_positive\": " + std::to_string(row.robustness.n_positive) +
               ", \"n_negative\": " + std::to_string(row.robustness.n_negative) + "}\n";
        out += r + 1 < report.rows.size() ? "    },\n" : "    }\n";
    }
    out += "  ]\n";
    out += "}\n";
    return out;
}

BenchmarkReport parse_report(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    auto number_or = [](const nlohmann::json& v) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        if (v.is_string() && v.get<std::string>() == "inf")
            return metrics::kInfiniteDb;
        return v.get<double>();
    };
    BenchmarkReport report;
    report.meta.suite = j.at("meta").at("suite").get<std::string>();
    report.meta.seed = j.at("meta").at("seed").get<std::uint64_t>();
    report.meta.config_digest = j.at("meta").at("config_digest").get<std::string>();
    report.meta.version = j.at("meta").at("version").get<std::string>();
    report.meta.timestamp = j.at("meta").at("timestamp").get<std::string>();
    for (const auto& jr : j.at("rows")) {
        ReportRow row;
        row.attack.name = jr.at("attack").at("name").get<std::string>();
        for (const auto& [k, v] : jr.at("attack").at("params").items())
            row.attack.params[k] = v.get<double>();
        row.attack.seed = jr.at("attack").at("seed").get<std::uint64_t>();
        row.quality.psnr_db = number_or(jr.at("quality").at("psnr_db"));
        row.quality.ssim = number_or(jr.at("quality").at("ssim"));
        row.quality.snr_db = number_or(jr.at("quality").at("snr_db"));
        row.robustness.bit_accuracy = jr.at("robustness").at("bit_accuracy").get<double>();
        row.robustness.tpr = jr.at("robustness").at("tpr").get<double>();
        row.robustness.fpr = jr.at("robustness").at("fpr").get<double>();
        row.robustness.n_positive = jr.at("robustness").at("n_positive").get<std::int64_t>();
        row.robustness.n_negative = jr.at("robustness").at("n_negative").get<std::int64_t>();
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_markdown(const BenchmarkReport& report) {
    auto cell = [](const std::optional<double>& v) -> std::string {
        if (!v) return "-";
        if (std::isinf(*v)) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", *v);
        return buf;
    };
    std::string out;
    out += "# Benchmark report: " + report.meta.suite + "\n\n";
    out += "- seed: " + std::to_string(report.meta.seed) + "\n";
    out += "- config digest: " + report.meta.config_digest + "\n";
    out += "- version: " + report.meta.version + "\n";
    out += "- timestamp: " + report.meta.timestamp + "\n\n";
    out += "| attack | PSNR (dB) | SSIM | SNR (dB) | bit accuracy | TPR | FPR | n+ | n- |\n";
    out += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.rows) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%.4f | %.3f | %.3f",
                      row.robustness.bit_accuracy, row.robustness.tpr,
                      row.robustness.fpr);
        out += "| " + attack_label(row.attack) + " | " + cell(row.quality.psnr_db) +
               " | " + cell(row.quality.ssim) + " | " + cell(row.quality.snr_db) +
               " | " + buf + " | " + std::to_string(row.robustness.n_positive) +
               " | " + std::to_string(row.robustness.n_negative) + " |\n";
    }
    out += "\nQuality columns are measured on un-attacked embeds; lpips is not "
           "computed (" +
           std::string(kLpipsReason) + ").\n";
    return out;
}

std::string render_radar_svg(const BenchmarkReport& report) {
    constexpr double kSize = 600.0, kCx = 300.0, kCy = 310.0, kRadius = 220.0;
    const std::size_t n = report.rows.size();
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    svg += "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    svg += "  <text x=\"300\" y=\"28\" text-anchor=\"middle\" font-size=\"20\" "
           "font-family=\"sans-serif\">" +
           xml_escape(report.meta.suite) + "</text>\n";
    svg += "  <text x=\"300\" y=\"50\" text-anchor=\"middle\" font-size=\"13\" "
           "font-family=\"sans-serif\" fill=\"#555\">mean bit accuracy per attack "
           "(0 at center, 1 at rim)</text>\n";

    // Reference rings at 0.25 steps.
    for (int ring = 1; ring <= 4; ++ring)
        svg += "  <circle cx=\"" + fmt(kCx) + "\" cy=\"" + fmt(kCy) + "\" r=\"" +
               fmt(kRadius * ring / 4.0) +
               "\" fill=\"none\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";

    std::string points;
    for (std::size_t k = 0; k < n; ++k) {
        double angle = -std::numbers::pi / 2.0 +
                       2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(n);
        double ux = std::cos(angle), uy = std::sin(angle);
        svg += "  <line class=\"axis\" x1=\"" + fmt(kCx) + "\" y1=\"" + fmt(kCy) +
               "\" x2=\"" + fmt(kCx + kRadius * ux) + "\" y2=\"" +
               fmt(kCy + kRadius * uy) + "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
        double lx = kCx + (kRadius + 18.0) * ux, ly = kCy + (kRadius + 18.0) * uy;
        std::string anchor = ux > 0.3 ? "start" : (ux < -0.3 ? "end" : "middle");
        svg += "  <text class=\"axis-label\" x=\"" + fmt(lx) + "\" y=\"" +
               fmt(ly + 4.0) + "\" text-anchor=\"" + anchor +
               "\" font-size=\"12\" font-family=\"sans-serif\">" +
               xml_escape(attack_label(report.rows[k].attack)) + "</text>\n";
        double r = kRadius * std::clamp(report.rows[k].robustness.bit_accuracy, 0.0, 1.0);
        if (!points.empty()) points += " ";
        points += fmt(kCx + r * ux) + "," + fmt(kCy + r * uy);
    }
    if (n == 1) {
        // Degenerate polygon: repeat the single vertex so the element parses.
        points += " " + points;
    }
    svg += "  <polygon class=\"ba\" points=\"" + points +
           "\" fill=\"rgba(46,110,180,0.35)\" stroke=\"#2e6eb4\" "
           "stroke-width=\"2\"/>\n";
    svg += "</svg>\n";
    (void)kSize;
    return svg;
}

void write_report(const BenchmarkReport& report, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create report directory: " + dir);
    auto write_file = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir + "/" + name, std::ios::binary);
        if (!out) throw IoError("cannot write " + dir + "/" + name);
        out << content;
        if (!out) throw IoError("short write to " + dir + "/" + name);
    };
    write_file("report.json", serialize_report(report));
    write_file("report.md", render_markdown(report));
    write_file("radar.svg", render_radar_svg(report));
}

}  // namespace wmkit::bench
