#pragma once

#include "sln/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sln::media {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

class BadMediaType : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MalformedDataUri : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OutOfBounds : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class UnsupportedFormat : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorruptImage : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Base64 (standard alphabet, padded, no line breaks)

std::string base64_encode(ByteView bytes);

/// Strict decode: rejects characters outside the alphabet, missing or
/// misplaced padding and non-zero trailing bits.
std::optional<Bytes> base64_decode(std::string_view text);

/// Validates base64 text delivered in arbitrary pieces without buffering it.
class Base64Checker {
public:
    void feed(std::string_view chunk);
    /// Empty on success, otherwise a description of the defect.
    std::string finish() const;
    std::uint64_t decoded_size() const { return data_chars_ * 3 / 4; }

private:
    std::uint64_t data_chars_ = 0;
    unsigned padding_ = 0;
    std::uint8_t last_value_ = 0;
    std::string error_;
};

// ---------------------------------------------------------------------------
// Data URIs: data:<media_type>;base64,<payload>

std::string encode_data_uri(std::string_view media_type, ByteView bytes);
std::string encode_data_uri(const MediaBlob& blob);

/// Throws MalformedDataUri.
MediaBlob decode_data_uri(std::string_view text);

/// Streaming counterpart of decode_data_uri that only checks the grammar.
class DataUriChecker {
public:
    void feed(std::string_view chunk);
    std::string finish() const;
    const std::string& media_type() const { return media_type_; }
    std::uint64_t decoded_size() const { return payload_.decoded_size(); }

private:
    void parse_header();

    std::string header_;
    bool in_payload_ = false;
    std::string media_type_;
    std::string error_;
    Base64Checker payload_;
};

// ---------------------------------------------------------------------------
// Format sniffing

enum class ImageFormat { Png, Jpeg, Gif, Bmp, Svg, Unknown };

/// Decides by magic bytes, or by an `svg` root element for XML text.
ImageFormat sniff_format(ByteView bytes);
std::string_view format_name(ImageFormat format);
std::string_view file_extension(ImageFormat format);
std::string_view media_type_of(ImageFormat format);

// ---------------------------------------------------------------------------
// Raster operations

struct Rgba {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 0;
    bool operator==(const Rgba&) const = default;
};

/// Row-major RGBA8 pixels.
struct Raster {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    Bytes pixels;

    static Raster filled(std::uint32_t width, std::uint32_t height, Rgba color);

    Rgba at(std::uint32_t x, std::uint32_t y) const;
    void set(std::uint32_t x, std::uint32_t y, Rgba color);
    bool operator==(const Raster&) const = default;
};

struct CropRect {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t w = 0;
    std::uint32_t h = 0;
};

enum class ScaleFactor : std::uint32_t { Full = 1, Half = 2, Quarter = 4, Eighth = 8 };

inline constexpr std::uint32_t divisor(ScaleFactor factor) { return static_cast<std::uint32_t>(factor); }
/// Accepts "1:1", "1:2", "1:4" and "1:8".
std::optional<ScaleFactor> parse_scale(std::string_view text);

inline constexpr std::uint32_t kThumbnailSide = 128;

/// Throws OutOfBounds unless the rectangle is non-empty and inside the raster.
Raster crop(const Raster& source, CropRect rect);

/// 1:k downscale by k-by-k box averaging; each side becomes max(1, floor(side / k)).
Raster scale(const Raster& source, ScaleFactor factor);

/// Area-average resample to an arbitrary smaller size.
Raster resample(const Raster& source, std::uint32_t width, std::uint32_t height);

/// Fits the longest side into kThumbnailSide, preserving aspect ratio.
Raster make_thumbnail(const Raster& source);

/// PNG only. Throws UnsupportedFormat for other sniffed formats and
/// CorruptImage when the PNG stream cannot be decoded.
Raster decode_raster(ByteView bytes);
Bytes encode_raster(const Raster& raster);

/// Builds an image record with PNG full image and auto-generated thumbnail.
ImageRecord make_image_record(std::string name, std::string notes, const Raster& full);

} // namespace sln::media
