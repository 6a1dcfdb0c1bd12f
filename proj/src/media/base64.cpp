#include "sln/media.hpp"

#include <array>

namespace sln::media {

namespace {

constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
constexpr std::uint8_t kInvalid = 0xFF;
constexpr std::uint8_t kPad = 0xFE;

constexpr std::array<std::uint8_t, 256> make_values() {
    std::array<std::uint8_t, 256> table{};
    for (auto& v : table) {
        v = kInvalid;
    }
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
        table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::uint8_t>(i);
    }
    table['='] = kPad;
    return table;
}

constexpr auto kValues = make_values();

} // namespace

std::string base64_encode(ByteView bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t v = (std::uint32_t{bytes[i]} << 16) | (std::uint32_t{bytes[i + 1]} << 8) | bytes[i + 2];
        out.push_back(kAlphabet[(v >> 18) & 0x3F]);
        out.push_back(kAlphabet[(v >> 12) & 0x3F]);
        out.push_back(kAlphabet[(v >> 6) & 0x3F]);
        out.push_back(kAlphabet[v & 0x3F]);
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const std::uint32_t v = std::uint32_t{bytes[i]} << 16;
        out.push_back(kAlphabet[(v >> 18) & 0x3F]);
        out.push_back(kAlphabet[(v >> 12) & 0x3F]);
        out.append("==");
    } else if (rest == 2) {
        const std::uint32_t v = (std::uint32_t{bytes[i]} << 16) | (std::uint32_t{bytes[i + 1]} << 8);
        out.push_back(kAlphabet[(v >> 18) & 0x3F]);
        out.push_back(kAlphabet[(v >> 12) & 0x3F]);
        out.push_back(kAlphabet[(v >> 6) & 0x3F]);
        out.push_back('=');
    }
    return out;
}

std::optional<Bytes> base64_decode(std::string_view text) {
    Base64Checker checker;
    checker.feed(text);
    if (!checker.finish().empty()) {
        return std::nullopt;
    }
    Bytes out;
    out.reserve(static_cast<std::size_t>(checker.decoded_size()));
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        const std::uint8_t v = kValues[static_cast<unsigned char>(c)];
        if (v == kPad) {
            break;
        }
        acc = (acc << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
        }
    }
    return out;
}

void Base64Checker::feed(std::string_view chunk) {
    if (!error_.empty()) {
        return;
    }
    for (char c : chunk) {
        const std::uint8_t v = kValues[static_cast<unsigned char>(c)];
        if (v == kInvalid) {
            error_ = "character outside the base64 alphabet";
            return;
        }
        if (v == kPad) {
            if (++padding_ > 2) {
                error_ = "too much padding";
                return;
            }
            continue;
        }
        if (padding_ > 0) {
            error_ = "data after padding";
            return;
        }
        ++data_chars_;
        last_value_ = v;
    }
}

std::string Base64Checker::finish() const {
    if (!error_.empty()) {
        return error_;
    }
    const std::uint64_t total = data_chars_ + padding_;
    if (total % 4 != 0) {
        return "length is not a multiple of four";
    }
    // Leftover bits of the final quantum must be zero for a canonical encoding.
    if (padding_ == 1 && (last_value_ & 0x03) != 0) {
        return "non-zero trailing bits";
    }
    if (padding_ == 2 && (last_value_ & 0x0F) != 0) {
        return "non-zero trailing bits";
    }
    return {};
}

} // namespace sln::media
