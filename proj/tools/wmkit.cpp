#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "wmkit/bench.hpp"
#include "wmkit/engine.hpp"
#include "wmkit/media_io.hpp"
#include "wmkit/metrics.hpp"

namespace {

using namespace wmkit;

Modality parse_modality(const std::string& s) {
    if (s == "image") return Modality::Image;
    if (s == "video") return Modality::Video;
    if (s == "audio") return Modality::Audio;
    if (s == "text") return Modality::Text;
    throw BadParams("unknown modality: " + s);
}

std::optional<std::string> config_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("UNIMARK_CONFIG"); env && *env)
        return std::string(env);
    return std::nullopt;
}

MediaObject load_media(Modality m, const std::string& path) {
    switch (m) {
        case Modality::Image: return MediaObject{io::load_image(path)};
        case Modality::Video: return MediaObject{io::load_video(path)};
        case Modality::Audio: return MediaObject{io::load_wav(path)};
        case Modality::Text: return MediaObject{TextDocument{io::load_text(path)}};
    }
    throw BadParams("unknown modality");
}

void save_media(const MediaObject& media, const std::string& path) {
    switch (media.modality()) {
        case Modality::Image: {
            auto ext = std::filesystem::path(path).extension().string();
            io::ImageFormat fmt = (ext == ".ppm" || ext == ".pgm")
                                      ? io::ImageFormat::Ppm
                                      : io::ImageFormat::Png;
            io::save_image(media.image(), path, fmt);
            return;
        }
        case Modality::Video: io::save_video(media.video(), path); return;
        case Modality::Audio: io::save_wav(media.audio(), path); return;
        case Modality::Text: io::save_text(media.text().content, path); return;
    }
}

std::string fmt_real(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct EmbedArgs {
    std::string modality, operation, in, out, key, message, config;
};
struct ExtractArgs {
    std::string modality, operation, in, key, config;
};
struct BenchRunArgs {
    std::string suite, out, config;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
};
struct BenchDatasetArgs {
    std::string spec, out;
};

int cmd_embed(const EmbedArgs& a) {
    if (a.operation == "watermark" && (a.message.empty() || a.key.empty())) {
        std::cerr << "embed --operation watermark requires --message and --key\n";
        return 2;
    }
    if (a.operation == "visible_mark" && !a.message.empty()) {
        std::cerr << "embed --operation visible_mark forbids --message\n";
        return 2;
    }
    Modality modality = parse_modality(a.modality);
    OperationMode mode = a.operation == "watermark" ? OperationMode::Watermark
                                                    : OperationMode::VisibleMark;
    Engine engine(load_config(config_path_or_env(a.config)));
    MediaObject input = load_media(modality, a.in);
    std::optional<MessagePayload> payload;
    if (mode == OperationMode::Watermark) payload = MessagePayload::from_hex(a.message);

    MediaObject output =
        engine.embed(input, mode, payload, SecretKey{fnv1a64(a.key)});
    save_media(output, a.out);

    std::string psnr = "-", snr = "-";
    switch (modality) {
        case Modality::Image:
            psnr = fmt_real(metrics::psnr(input.image(), output.image()));
            break;
        case Modality::Video:
            psnr = fmt_real(metrics::video_quality(input.video(), output.video()).psnr_db);
            break;
        case Modality::Audio:
            if (input.audio().length() == output.audio().length())
                snr = fmt_real(metrics::snr_db(input.audio(), output.audio()));
            break;
        case Modality::Text: break;
    }
    std::cout << "modality=" << a.modality << " operation=" << a.operation
              << " payload_bits=" << (payload ? std::to_string(payload->size()) : "-")
              << " psnr_db=" << psnr << " snr_db=" << snr << " out=" << a.out << "\n";
    return 0;
}

int cmd_extract(const ExtractArgs& a) {
    Modality modality = parse_modality(a.modality);
    OperationMode mode = a.operation == "watermark" ? OperationMode::Watermark
                                                    : OperationMode::VisibleMark;
    Engine engine(load_config(config_path_or_env(a.config)));
    MediaObject input = load_media(modality, a.in);
    ExtractionResult res = engine.extract(input, mode, SecretKey{fnv1a64(a.key)});

    std::string bits = "-";
    if (res.bits) bits = MessagePayload(*res.bits).to_hex();
    std::string segments = "-";
    if (res.segments) {
        segments.clear();
        for (const auto& [begin, end] : *res.segments) {
            if (!segments.empty()) segments += ",";
            segments += std::to_string(begin) + ":" + std::to_string(end);
        }
        if (segments.empty()) segments = "none";
    }
    std::cout << "detected=" << (res.detected ? "true" : "false")
              << " confidence=" << fmt_real(res.confidence) << " bits=" << bits
              << " segments=" << segments << "\n";
    return 0;
}

int cmd_bench_run(const BenchRunArgs& a) {
    if (!std::filesystem::exists(a.suite)) {
        std::cerr << "suite file not found: " << a.suite << "\n";
        return 2;
    }
    bench::SuiteSpec suite = bench::load_suite(a.suite);
    if (a.seed) suite.seed = *a.seed;
    EngineConfig cfg = load_config(config_path_or_env(a.config));
    bench::BenchmarkReport report = bench::run_suite(suite, cfg, a.jobs);
    std::string out_dir = a.out.empty() ? cfg.bench.output_dir : a.out;
    bench::write_report(report, out_dir);

    for (const auto& row : report.rows)
        if (row.attack.name == "none") {
            std::cout << "suite=" << report.meta.suite << " attack=none"
                      << " bit_accuracy=" << fmt_real(row.robustness.bit_accuracy)
                      << " tpr=" << fmt_real(row.robustness.tpr)
                      << " fpr=" << fmt_real(row.robustness.fpr) << " out=" << out_dir
                      << "\n";
            break;
        }
    return 0;
}

int cmd_bench_dataset(const BenchDatasetArgs& a) {
    if (!std::filesystem::exists(a.spec)) {
        std::cerr << "dataset spec not found: " << a.spec << "\n";
        return 2;
    }
    bench::DatasetSpec spec = bench::load_dataset_spec(a.spec);
    auto items = bench::write_dataset(spec, a.out);
    std::cout << "modality=" << modality_name(spec.modality)
              << " count=" << items.size() << " out=" << a.out << "\n";
    return 0;
}

int cmd_config_show(const std::string& config) {
    EngineConfig cfg = load_config(config_path_or_env(config));
    std::cout << cfg.canonical_dump();
    char digest_hex[32];
    std::snprintf(digest_hex, sizeof(digest_hex), "%016llx",
                  static_cast<unsigned long long>(cfg.digest()));
    std::cout << "digest=" << digest_hex << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wmkit - multimodal watermarking toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> kModalities{"image", "video", "audio", "text"};
    const std::vector<std::string> kOperations{"watermark", "visible_mark"};

    EmbedArgs embed_args;
    CLI::App* embed = app.add_subcommand("embed", "embed a watermark or visible mark");
    embed->add_option("--modality", embed_args.modality)
        ->required()
        ->check(CLI::IsMember(kModalities));
    embed->add_option("--operation", embed_args.operation)
        ->required()
        ->check(CLI::IsMember(kOperations));
    embed->add_option("--in", embed_args.in)->required();
    embed->add_option("--out", embed_args.out)->required();
    embed->add_option("--key", embed_args.key);
    embed->add_option("--message", embed_args.message);
    embed->add_option("--config", embed_args.config);

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "detect / extract a mark");
    extract->add_option("--modality", extract_args.modality)
        ->required()
        ->check(CLI::IsMember(kModalities));
    extract->add_option("--operation", extract_args.operation)
        ->required()
        ->check(CLI::IsMember(kOperations));
    extract->add_option("--in", extract_args.in)->required();
    extract->add_option("--key", extract_args.key);
    extract->add_option("--config", extract_args.config);

    CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark harness");
    bench_cmd->require_subcommand(1);
    BenchRunArgs run_args;
    CLI::App* bench_run = bench_cmd->add_subcommand("run", "run a benchmark suite");
    bench_run->add_option("--suite", run_args.suite)->required();
    bench_run->add_option("--out", run_args.out);
    bench_run->add_option("--seed", run_args.seed);
    bench_run->add_option("--jobs", run_args.jobs)->check(CLI::Range(1, 256));
    bench_run->add_option("--config", run_args.config);
    BenchDatasetArgs dataset_args;
    CLI::App* bench_ds = bench_cmd->add_subcommand("dataset", "materialize a corpus");
    bench_ds->add_option("--spec", dataset_args.spec)->required();
    bench_ds->add_option("--out", dataset_args.out)->required();

    std::string config_show_path;
    CLI::App* config_cmd = app.add_subcommand("config", "configuration helpers");
    config_cmd->require_subcommand(1);
    CLI::App* config_show = config_cmd->add_subcommand("show", "print effective config");
    config_show->add_option("--config", config_show_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*embed) return cmd_embed(embed_args);
        if (*extract) return cmd_extract(extract_args);
        if (*bench_run) return cmd_bench_run(run_args);
        if (*bench_ds) return cmd_bench_dataset(dataset_args);
        if (*config_show) return cmd_config_show(config_show_path);
    } catch (const wmkit::Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
