#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmkit/errors.hpp"
#include "wmkit/keystream.hpp"

namespace wmkit {

// Fixed-length bit vector carried by hidden watermarks. Bits are stored
// MSB-first relative to the hex representation.
class MessagePayload {
public:
    MessagePayload() = default;

    explicit MessagePayload(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.empty() || bits_.size() > 256)
            throw BadParams("payload length must be in 1..256 bits");
        for (auto b : bits_)
            if (b > 1) throw BadParams("payload bits must be 0 or 1");
    }

    static MessagePayload from_hex(const std::string& hex) {
        if (hex.empty()) throw BadParams("empty payload hex string");
        std::vector<std::uint8_t> bits;
        bits.reserve(hex.size() * 4);
        for (char c : hex) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else throw BadParams("invalid hex digit in payload");
            for (int i = 3; i >= 0; --i) bits.push_back((v >> i) & 1);
        }
        return MessagePayload(std::move(bits));
    }

    static MessagePayload random(KeyStream& stream, std::size_t length) {
        std::vector<std::uint8_t> bits(length);
        for (auto& b : bits) b = static_cast<std::uint8_t>(stream.next_bit());
        return MessagePayload(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

    // MSB-first hex; trailing bits of a partial nibble are zero-padded.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (std::size_t i = 0; i < bits_.size(); i += 4) {
            int v = 0;
            for (std::size_t j = 0; j < 4; ++j)
                v = (v << 1) | (i + j < bits_.size() ? bits_[i + j] : 0);
            out.push_back(digits[v]);
        }
        return out;
    }

    bool operator==(const MessagePayload& o) const { return bits_ == o.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace wmkit
