#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace wmkit {

// 64-bit watermarking key. CLI-level key strings are hashed to a seed
// with fnv1a64.
struct SecretKey {
    std::uint64_t seed = 0;
};

constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Counter-mode keyed generator: SplitMix64 seeded with
// seed ^ fnv1a64(tag) ^ index. Distinct (tag, index) pairs yield
// statistically independent streams, so every consumer of randomness in
// the toolkit can derive its own stream up front and stay reproducible
// under any execution order.
class KeyStream {
public:
    KeyStream(SecretKey key, std::string_view domain_tag, std::uint64_t index)
        : state_(key.seed ^ fnv1a64(domain_tag) ^ index) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // +1 / -1 from the sign bit of the next output.
    double next_chip() {
        return (next_u64() >> 63) ? 1.0 : -1.0;
    }

    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline KeyStream derive_stream(SecretKey key, std::string_view domain_tag,
                               std::uint64_t index) {
    return KeyStream(key, domain_tag, index);
}

}  // namespace wmkit
