#include "wmkit/media_io.hpp"

#include <zlib.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace wmkit::io {
namespace {

constexpr std::size_t kMaxDim = 1 << 16;
constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("read failure on " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------- PPM/PGM

// Reads one whitespace-delimited token, skipping '#' comments.
bool next_token(const std::string& data, std::size_t& pos, std::string& tok) {
    while (pos < data.size()) {
        char c = data[pos];
        if (c == '#') {
            while (pos < data.size() && data[pos] != '\n') ++pos;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++pos;
        } else {
            break;
        }
    }
    tok.clear();
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos])) ) {
        tok.push_back(data[pos++]);
    }
    return !tok.empty();
}

long parse_pnm_int(const std::string& data, std::size_t& pos) {
    std::string tok;
    if (!next_token(data, pos, tok)) throw DecodeError("truncated PNM header");
    long v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw DecodeError("bad integer in PNM header");
        v = v * 10 + (c - '0');
        if (v > std::numeric_limits<int>::max()) throw DecodeError("PNM value overflow");
    }
    return v;
}

ImageBuffer decode_pnm(const std::string& data) {
    if (data.size() < 2) throw DecodeError("truncated PNM");
    int channels = data[1] == '6' ? 3 : 1;
    std::size_t pos = 2;
    long w = parse_pnm_int(data, pos);
    long h = parse_pnm_int(data, pos);
    long maxval = parse_pnm_int(data, pos);
    if (w < 1 || h < 1 || static_cast<std::size_t>(w) > kMaxDim ||
        static_cast<std::size_t>(h) > kMaxDim ||
        static_cast<std::size_t>(w) * h > kMaxPixels)
        throw DecodeError("bad PNM dimensions");
    if (maxval != 255) throw UnsupportedFormat("PNM maxval must be 255");
    if (pos >= data.size()) throw DecodeError("truncated PNM");
    ++pos;  // single whitespace after maxval
    std::size_t need = static_cast<std::size_t>(w) * h * channels;
    if (data.size() - pos < need) throw DecodeError("truncated PNM pixel data");
    ImageBuffer img{static_cast<int>(w), static_cast<int>(h), channels, {}};
    img.samples.assign(data.begin() + static_cast<std::ptrdiff_t>(pos),
                       data.begin() + static_cast<std::ptrdiff_t>(pos + need));
    return img;
}

std::string encode_pnm(const ImageBuffer& img) {
    std::ostringstream ss;
    ss << (img.channels == 3 ? "P6" : "P5") << "\n"
       << img.width << " " << img.height << "\n255\n";
    std::string out = ss.str();
    out.append(reinterpret_cast<const char*>(img.samples.data()), img.samples.size());
    return out;
}

// -------------------------------------------------------------------- PNG

constexpr unsigned char kPngSig[8] = {137, 80, 78, 71, 13, 10, 26, 10};

std::uint32_t be32(const unsigned char* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_be32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
    put_be32(out, static_cast<std::uint32_t>(payload.size()));
    std::string body(type, 4);
    body += payload;
    out += body;
    std::uint32_t crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size())));
    put_be32(out, crc);
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

ImageBuffer decode_png(const std::string& data) {
    if (data.size() < 8 + 25 || std::memcmp(data.data(), kPngSig, 8) != 0)
        throw DecodeError("bad PNG signature");
    std::size_t pos = 8;
    bool have_ihdr = false;
    std::uint32_t w = 0, h = 0;
    int channels = 0;
    std::string idat;
    while (pos + 12 <= data.size()) {
        std::uint32_t len = be32(reinterpret_cast<const unsigned char*>(data.data() + pos));
        if (len > data.size() || pos + 12 + len > data.size())
            throw DecodeError("truncated PNG chunk");
        std::string type = data.substr(pos + 4, 4);
        const char* payload = data.data() + pos + 8;
        std::uint32_t crc_stored =
            be32(reinterpret_cast<const unsigned char*>(data.data() + pos + 8 + len));
        std::uint32_t crc_calc = static_cast<std::uint32_t>(crc32(
            0, reinterpret_cast<const Bytef*>(data.data() + pos + 4), static_cast<uInt>(len + 4)));
        if (crc_stored != crc_calc) throw DecodeError("PNG chunk CRC mismatch");
        if (type == "IHDR") {
            if (len != 13) throw DecodeError("bad IHDR length");
            const auto* p = reinterpret_cast<const unsigned char*>(payload);
            w = be32(p);
            h = be32(p + 4);
            int bit_depth = p[8], color_type = p[9];
            int compression = p[10], filter = p[11], interlace = p[12];
            if (bit_depth != 8)
                throw UnsupportedFormat("only 8-bit PNG supported");
            if (color_type != 0 && color_type != 2)
                throw UnsupportedFormat("only gray/RGB PNG supported");
            if (compression != 0 || filter != 0)
                throw DecodeError("bad PNG compression/filter method");
            if (interlace != 0)
                throw UnsupportedFormat("interlaced PNG not supported");
            if (w < 1 || h < 1 || w > kMaxDim || h > kMaxDim ||
                static_cast<std::size_t>(w) * h > kMaxPixels)
                throw DecodeError("bad PNG dimensions");
            channels = color_type == 2 ? 3 : 1;
            have_ihdr = true;
        } else if (type == "IDAT") {
            if (!have_ihdr) throw DecodeError("IDAT before IHDR");
            idat.append(payload, len);
        } else if (type == "IEND") {
            break;
        }
        pos += 12 + len;
    }
    if (!have_ihdr) throw DecodeError("missing IHDR");
    if (idat.empty()) throw DecodeError("missing IDAT");

    std::size_t stride = static_cast<std::size_t>(w) * channels;
    std::size_t raw_size = (stride + 1) * h;
    std::vector<unsigned char> raw(raw_size);
    uLongf dest_len = raw_size;
    int rc = uncompress(raw.data(), &dest_len, reinterpret_cast<const Bytef*>(idat.data()),
                        static_cast<uLong>(idat.size()));
    if (rc != Z_OK || dest_len != raw_size) throw DecodeError("PNG inflate failure");

    ImageBuffer img{static_cast<int>(w), static_cast<int>(h), channels, {}};
    img.samples.resize(stride * h);
    int bpp = channels;
    for (std::uint32_t y = 0; y < h; ++y) {
        unsigned char filter = raw[y * (stride + 1)];
        const unsigned char* src = raw.data() + y * (stride + 1) + 1;
        std::uint8_t* dst = img.samples.data() + y * stride;
        const std::uint8_t* prev = y > 0 ? img.samples.data() + (y - 1) * stride : nullptr;
        for (std::size_t x = 0; x < stride; ++x) {
            int a = x >= static_cast<std::size_t>(bpp) ? dst[x - bpp] : 0;
            int b = prev ? prev[x] : 0;
            int c = (prev && x >= static_cast<std::size_t>(bpp)) ? prev[x - bpp] : 0;
            int v;
            switch (filter) {
                case 0: v = src[x]; break;
                case 1: v = src[x] + a; break;
                case 2: v = src[x] + b; break;
                case 3: v = src[x] + (a + b) / 2; break;
                case 4: v = src[x] + paeth(a, b, c); break;
                default: throw DecodeError("bad PNG row filter");
            }
            dst[x] = static_cast<std::uint8_t>(v & 0xff);
        }
    }
    return img;
}

std::string encode_png(const ImageBuffer& img) {
    std::string out(reinterpret_cast<const char*>(kPngSig), 8);

    std::string ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(img.width));
    put_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);                                   // bit depth
    ihdr.push_back(img.channels == 3 ? 2 : 0);           // color type
    ihdr.push_back(0);                                   // compression
    ihdr.push_back(0);                                   // filter method
    ihdr.push_back(0);                                   // interlace
    append_chunk(out, "IHDR", ihdr);

    std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
    std::string raw;
    raw.reserve((stride + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);  // filter: none
        raw.append(reinterpret_cast<const char*>(img.samples.data() + y * stride), stride);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string compressed(bound, '\0');
    int rc = compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                       reinterpret_cast<const Bytef*>(raw.data()),
                       static_cast<uLong>(raw.size()), Z_BEST_SPEED);
    if (rc != Z_OK) throw IoError("PNG deflate failure");
    compressed.resize(bound);
    append_chunk(out, "IDAT", compressed);
    append_chunk(out, "IEND", "");
    return out;
}

// -------------------------------------------------------------------- WAV

std::uint32_t le32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
           (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_le32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_le16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

AudioClip decode_wav(const std::string& data) {
    if (data.size() < 12 || data.compare(0, 4, "RIFF") != 0 || data.compare(8, 4, "WAVE") != 0)
        throw DecodeError("not a RIFF/WAVE file");
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    std::size_t pos = 12;
    int num_channels = 0, sample_rate = 0;
    bool have_fmt = false;
    std::size_t data_pos = 0, data_len = 0;
    while (pos + 8 <= data.size()) {
        std::string id = data.substr(pos, 4);
        std::uint32_t len = le32(bytes + pos + 4);
        if (pos + 8 + len > data.size()) throw DecodeError("truncated WAV chunk");
        if (id == "fmt ") {
            if (len < 16) throw DecodeError("short fmt chunk");
            int audio_format = le16(bytes + pos + 8);
            num_channels = le16(bytes + pos + 10);
            sample_rate = static_cast<int>(le32(bytes + pos + 12));
            int bits = le16(bytes + pos + 22);
            if (audio_format != 1) throw UnsupportedFormat("only PCM WAV supported");
            if (bits != 16) throw UnsupportedFormat("only 16-bit PCM supported");
            if (num_channels < 1 || num_channels > 2)
                throw UnsupportedFormat("only mono/stereo supported");
            if (sample_rate < 8000) throw UnsupportedFormat("sample rate below 8000 Hz");
            have_fmt = true;
        } else if (id == "data") {
            data_pos = pos + 8;
            data_len = len;
        }
        pos += 8 + len + (len & 1);  // chunks are word-aligned
    }
    if (!have_fmt) throw DecodeError("missing fmt chunk");
    if (data_pos == 0) throw DecodeError("missing data chunk");
    std::size_t frame_bytes = 2u * num_channels;
    if (data_len % frame_bytes != 0) throw DecodeError("data chunk not frame-aligned");
    std::size_t n = data_len / frame_bytes;
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.channels.assign(num_channels, Eigen::ArrayXd(static_cast<Eigen::Index>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < num_channels; ++c) {
            const unsigned char* p = bytes + data_pos + (i * num_channels + c) * 2;
            std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
            clip.channels[c][static_cast<Eigen::Index>(i)] = s / 32768.0;
        }
    }
    return clip;
}

std::string encode_wav(const AudioClip& clip) {
    int num_channels = static_cast<int>(clip.channels.size());
    std::size_t n = static_cast<std::size_t>(clip.length());
    std::uint32_t data_len = static_cast<std::uint32_t>(n * num_channels * 2);
    std::string out;
    out.reserve(44 + data_len);
    out += "RIFF";
    put_le32(out, 36 + data_len);
    out += "WAVEfmt ";
    put_le32(out, 16);
    put_le16(out, 1);  // PCM
    put_le16(out, static_cast<std::uint16_t>(num_channels));
    put_le32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_le32(out, static_cast<std::uint32_t>(clip.sample_rate * num_channels * 2));
    put_le16(out, static_cast<std::uint16_t>(num_channels * 2));
    put_le16(out, 16);
    out += "data";
    put_le32(out, data_len);
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < num_channels; ++c) {
            double x = clip.channels[c][static_cast<Eigen::Index>(i)];
            long v = std::lround(x * 32768.0);
            v = std::clamp(v, -32768l, 32767l);
            put_le16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
        }
    }
    return out;
}

}  // namespace

ImageBuffer decode_image(const std::string& bytes) {
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0)
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
        return decode_pnm(bytes);
    throw UnsupportedFormat("unrecognized image format");
}

ImageBuffer load_image(const std::string& path) {
    ImageBuffer img = decode_image(read_file(path));
    if (!img.valid()) throw DecodeError("decoded image failed validation");
    return img;
}

void save_image(const ImageBuffer& img, const std::string& path, ImageFormat format) {
    if (!img.valid()) throw BadParams("invalid image buffer");
    write_file(path, format == ImageFormat::Png ? encode_png(img) : encode_pnm(img));
}

VideoClip load_video(const std::string& manifest_path) {
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("bad video manifest: ") + e.what());
    }
    if (!manifest.contains("fps") || !manifest.contains("frames") ||
        !manifest["frames"].is_array() || manifest["frames"].empty())
        throw DecodeError("video manifest missing fps/frames");
    VideoClip clip;
    clip.fps = manifest["fps"].get<double>();
    if (!(clip.fps > 0)) throw DecodeError("non-positive fps in manifest");
    fs::path base = fs::path(manifest_path).parent_path();
    for (const auto& rel : manifest["frames"]) {
        if (!rel.is_string()) throw DecodeError("non-string frame entry");
        fs::path p = base / rel.get<std::string>();
        if (!fs::exists(p)) throw DecodeError("missing frame file " + p.string());
        clip.frames.push_back(load_image(p.string()));
    }
    if (!clip.valid()) throw InconsistentFrames("frame dimensions differ");
    return clip;
}

void save_video(const VideoClip& clip, const std::string& dir_path) {
    if (!clip.valid()) throw BadParams("invalid video clip");
    std::error_code ec;
    fs::create_directories(dir_path, ec);
    nlohmann::json manifest;
    manifest["fps"] = clip.fps;
    manifest["frames"] = nlohmann::json::array();
    for (std::size_t i = 0; i < clip.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.png", i);
        save_image(clip.frames[i], (fs::path(dir_path) / name).string(), ImageFormat::Png);
        manifest["frames"].push_back(name);
    }
    write_file((fs::path(dir_path) / "manifest.json").string(), manifest.dump(2) + "\n");
}

AudioClip load_wav(const std::string& path) {
    AudioClip clip = decode_wav(read_file(path));
    if (!clip.valid()) throw DecodeError("decoded audio failed validation");
    return clip;
}

void save_wav(const AudioClip& clip, const std::string& path) {
    if (clip.channels.empty() || clip.channels.size() > 2 || clip.sample_rate < 8000)
        throw BadParams("invalid audio clip");
    write_file(path, encode_wav(clip));
}

std::string load_text(const std::string& path) { return read_file(path); }

void save_text(const std::string& content, const std::string& path) {
    write_file(path, content);
}

VideoClip image_as_clip(const ImageBuffer& img) {
    VideoClip clip;
    clip.frames.push_back(img);
    clip.fps = 1.0;
    return clip;
}

ImageBuffer clip_as_image(const VideoClip& clip) {
    if (clip.frames.size() != 1) throw NotSingleFrame("clip has more than one frame");
    return clip.frames[0];
}

}  // namespace wmkit::io
