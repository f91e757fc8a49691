#ifndef CSR_BYTES_HPP
#define CSR_BYTES_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csr/error.hpp"

namespace csr {

using ByteBuffer = std::vector<std::uint8_t>;

/// Every item that enters a hash concatenation is framed with a 4-byte
/// big-endian length prefix, so distinct (item sequence) inputs can never
/// collide by resplitting the concatenated bytes.
inline void append_frame(ByteBuffer& out, std::span<const std::uint8_t> payload) {
    if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("framed item exceeds 4 GiB");
    }
    const auto n = static_cast<std::uint32_t>(payload.size());
    out.push_back(static_cast<std::uint8_t>(n >> 24));
    out.push_back(static_cast<std::uint8_t>(n >> 16));
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(n));
    out.insert(out.end(), payload.begin(), payload.end());
}

inline void append_frame(ByteBuffer& out, std::string_view payload) {
    append_frame(out, std::span<const std::uint8_t>(
                          reinterpret_cast<const std::uint8_t*>(payload.data()),
                          payload.size()));
}

inline ByteBuffer frame(std::string_view payload) {
    ByteBuffer out;
    append_frame(out, payload);
    return out;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Digest value encodings. Base64 is the normative form; the dash-separated
// uppercase hex form ("49-2A-ED-...") is accepted and emittable as well.
// ---------------------------------------------------------------------------

enum class DigestEncoding { base64, hex_dash };

inline std::string base64_encode(std::span<const std::uint8_t> bytes) {
    static constexpr char alphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(alphabet[(v >> 18) & 0x3f]);
        out.push_back(alphabet[(v >> 12) & 0x3f]);
        out.push_back(alphabet[(v >> 6) & 0x3f]);
        out.push_back(alphabet[v & 0x3f]);
    }
    if (i + 1 == bytes.size()) {
        const std::uint32_t v = bytes[i] << 16;
        out.push_back(alphabet[(v >> 18) & 0x3f]);
        out.push_back(alphabet[(v >> 12) & 0x3f]);
        out.append("==");
    } else if (i + 2 == bytes.size()) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(alphabet[(v >> 18) & 0x3f]);
        out.push_back(alphabet[(v >> 12) & 0x3f]);
        out.push_back(alphabet[(v >> 6) & 0x3f]);
        out.push_back('=');
    }
    return out;
}

inline ByteBuffer base64_decode(std::string_view text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    if (text.empty()) return {};
    if (text.size() % 4 != 0) {
        throw FormatError("base64 value has invalid length " + std::to_string(text.size()));
    }
    std::size_t pad = 0;
    if (text.ends_with("==")) pad = 2;
    else if (text.ends_with('=')) pad = 1;
    ByteBuffer out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        std::uint32_t v = 0;
        int sextets = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            const char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 4 - pad) {
                    throw FormatError("base64 value has misplaced padding");
                }
                v <<= 6;
                continue;
            }
            const int s = value_of(c);
            if (s < 0) throw FormatError(std::string("base64 value has invalid character '") + c + "'");
            v = (v << 6) | static_cast<std::uint32_t>(s);
            ++sextets;
        }
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (sextets >= 3) out.push_back(static_cast<std::uint8_t>(v >> 8));
        if (sextets == 4) out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

inline std::string hex_dash_encode(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(bytes.size() * 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i != 0) out.push_back('-');
        out.push_back(digits[bytes[i] >> 4]);
        out.push_back(digits[bytes[i] & 0x0f]);
    }
    return out;
}

inline ByteBuffer hex_dash_decode(std::string_view text) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    ByteBuffer out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t next = text.find('-', pos);
        const std::string_view group =
            text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        // Each dash-separated group must be exactly one octet; a lone hex
        // digit (as in a truncated value) is rejected rather than guessed at.
        if (group.size() != 2 || nibble(group[0]) < 0 || nibble(group[1]) < 0) {
            throw FormatError("hex digest group '" + std::string(group) + "' is not a two-digit octet");
        }
        out.push_back(static_cast<std::uint8_t>((nibble(group[0]) << 4) | nibble(group[1])));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (text.empty()) throw FormatError("empty hex digest value");
    return out;
}

inline std::string encode_digest(std::span<const std::uint8_t> bytes, DigestEncoding encoding) {
    return encoding == DigestEncoding::base64 ? base64_encode(bytes) : hex_dash_encode(bytes);
}

/// Accepts either supported encoding; dashes mark the hex form, anything else
/// is treated as base64.
inline ByteBuffer decode_digest(std::string_view text) {
    if (text.find('-') != std::string_view::npos) return hex_dash_decode(text);
    return base64_decode(text);
}

}  // namespace csr

#endif
