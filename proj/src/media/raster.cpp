#include "sln/media.hpp"

#include <algorithm>

namespace sln::media {

Raster Raster::filled(std::uint32_t width, std::uint32_t height, Rgba color) {
    Raster r;
    r.width = width;
    r.height = height;
    r.pixels.resize(std::size_t{width} * height * 4);
    for (std::size_t i = 0; i < r.pixels.size(); i += 4) {
        r.pixels[i] = color.r;
        r.pixels[i + 1] = color.g;
        r.pixels[i + 2] = color.b;
        r.pixels[i + 3] = color.a;
    }
    return r;
}

Rgba Raster::at(std::uint32_t x, std::uint32_t y) const {
    const std::size_t i = (std::size_t{y} * width + x) * 4;
    return {pixels[i], pixels[i + 1], pixels[i + 2], pixels[i + 3]};
}

void Raster::set(std::uint32_t x, std::uint32_t y, Rgba color) {
    const std::size_t i = (std::size_t{y} * width + x) * 4;
    pixels[i] = color.r;
    pixels[i + 1] = color.g;
    pixels[i + 2] = color.b;
    pixels[i + 3] = color.a;
}

std::optional<ScaleFactor> parse_scale(std::string_view text) {
    if (text == "1:1") {
        return ScaleFactor::Full;
    }
    if (text == "1:2") {
        return ScaleFactor::Half;
    }
    if (text == "1:4") {
        return ScaleFactor::Quarter;
    }
    if (text == "1:8") {
        return ScaleFactor::Eighth;
    }
    return std::nullopt;
}

Raster crop(const Raster& source, CropRect rect) {
    if (rect.w < 1 || rect.h < 1 || rect.x > source.width || rect.w > source.width - rect.x ||
        rect.y > source.height || rect.h > source.height - rect.y) {
        throw OutOfBounds("crop rectangle " + std::to_string(rect.x) + "," + std::to_string(rect.y) + " " +
                          std::to_string(rect.w) + "x" + std::to_string(rect.h) + " exceeds " +
                          std::to_string(source.width) + "x" + std::to_string(source.height));
    }
    Raster out;
    out.width = rect.w;
    out.height = rect.h;
    out.pixels.resize(std::size_t{rect.w} * rect.h * 4);
    const std::size_t row_bytes = std::size_t{rect.w} * 4;
    for (std::uint32_t j = 0; j < rect.h; ++j) {
        const auto* src = source.pixels.data() + ((std::size_t{rect.y} + j) * source.width + rect.x) * 4;
        std::copy_n(src, row_bytes, out.pixels.data() + j * row_bytes);
    }
    return out;
}

Raster resample(const Raster& source, std::uint32_t width, std::uint32_t height) {
    Raster out;
    out.width = width;
    out.height = height;
    out.pixels.resize(std::size_t{width} * height * 4);
    for (std::uint32_t j = 0; j < height; ++j) {
        const std::uint64_t y0 = std::uint64_t{j} * source.height / height;
        const std::uint64_t y1 = std::max(y0 + 1, std::uint64_t{j + 1} * source.height / height);
        for (std::uint32_t i = 0; i < width; ++i) {
            const std::uint64_t x0 = std::uint64_t{i} * source.width / width;
            const std::uint64_t x1 = std::max(x0 + 1, std::uint64_t{i + 1} * source.width / width);
            std::array<std::uint64_t, 4> sum{};
            for (std::uint64_t y = y0; y < y1; ++y) {
                const auto* row = source.pixels.data() + (y * source.width) * 4;
                for (std::uint64_t x = x0; x < x1; ++x) {
                    for (std::size_t c = 0; c < 4; ++c) {
                        sum[c] += row[x * 4 + c];
                    }
                }
            }
            const std::uint64_t count = (y1 - y0) * (x1 - x0);
            auto* dst = out.pixels.data() + (std::size_t{j} * width + i) * 4;
            for (std::size_t c = 0; c < 4; ++c) {
                dst[c] = static_cast<std::uint8_t>((sum[c] + count / 2) / count);
            }
        }
    }
    return out;
}

Raster scale(const Raster& source, ScaleFactor factor) {
    const std::uint32_t k = divisor(factor);
    if (k == 1) {
        return source;
    }
    const std::uint32_t width = std::max<std::uint32_t>(1, source.width / k);
    const std::uint32_t height = std::max<std::uint32_t>(1, source.height / k);
    Raster out;
    out.width = width;
    out.height = height;
    out.pixels.resize(std::size_t{width} * height * 4);
    for (std::uint32_t j = 0; j < height; ++j) {
        const std::uint32_t y0 = j * k;
        const std::uint32_t y1 = std::min(y0 + k, source.height);
        for (std::uint32_t i = 0; i < width; ++i) {
            const std::uint32_t x0 = i * k;
            const std::uint32_t x1 = std::min(x0 + k, source.width);
            std::array<std::uint32_t, 4> sum{};
            for (std::uint32_t y = y0; y < y1; ++y) {
                const auto* row = source.pixels.data() + std::size_t{y} * source.width * 4;
                for (std::uint32_t x = x0; x < x1; ++x) {
                    for (std::size_t c = 0; c < 4; ++c) {
                        sum[c] += row[std::size_t{x} * 4 + c];
                    }
                }
            }
            const std::uint32_t count = (y1 - y0) * (x1 - x0);
            auto* dst = out.pixels.data() + (std::size_t{j} * width + i) * 4;
            for (std::size_t c = 0; c < 4; ++c) {
                dst[c] = static_cast<std::uint8_t>((sum[c] + count / 2) / count);
            }
        }
    }
    return out;
}

Raster make_thumbnail(const Raster& source) {
    const std::uint32_t longest = std::max(source.width, source.height);
    if (longest <= kThumbnailSide) {
        return source;
    }
    auto fit = [&](std::uint32_t side) {
        const std::uint64_t scaled = (std::uint64_t{side} * kThumbnailSide + longest / 2) / longest;
        return static_cast<std::uint32_t>(std::clamp<std::uint64_t>(scaled, 1, kThumbnailSide));
    };
    return resample(source, fit(source.width), fit(source.height));
}

ImageRecord make_image_record(std::string name, std::string notes, const Raster& full) {
    const Raster thumb = make_thumbnail(full);
    ImageRecord record;
    record.name = std::move(name);
    record.notes = std::move(notes);
    record.full = MediaBlob{"image/png", encode_raster(full)};
    record.thumbnail = MediaBlob{"image/png", encode_raster(thumb)};
    record.full_width = full.width;
    record.full_height = full.height;
    record.thumb_width = thumb.width;
    record.thumb_height = thumb.height;
    return record;
}

} // namespace sln::media
