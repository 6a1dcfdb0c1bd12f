#include "sln/media.hpp"

#include <png.h>

namespace sln::media {

Raster decode_raster(ByteView bytes) {
    const ImageFormat format = sniff_format(bytes);
    if (format != ImageFormat::Png) {
        throw UnsupportedFormat("pixel operations need PNG input, got " + std::string(format_name(format)));
    }
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
        throw CorruptImage(std::string("cannot read PNG: ") + image.message);
    }
    image.format = PNG_FORMAT_RGBA;
    Raster raster;
    raster.width = image.width;
    raster.height = image.height;
    raster.pixels.resize(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, raster.pixels.data(), 0, nullptr) == 0) {
        const std::string message = image.message;
        png_image_free(&image);
        throw CorruptImage("cannot decode PNG: " + message);
    }
    return raster;
}

Bytes encode_raster(const Raster& raster) {
    if (raster.width == 0 || raster.height == 0 ||
        raster.pixels.size() != std::size_t{raster.width} * raster.height * 4) {
        throw std::invalid_argument("raster size does not match its pixel buffer");
    }
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = raster.width;
    image.height = raster.height;
    image.format = PNG_FORMAT_RGBA;
    png_alloc_size_t size = 0;
    if (png_image_write_to_memory(&image, nullptr, &size, 0, raster.pixels.data(), 0, nullptr) == 0) {
        throw std::runtime_error(std::string("cannot encode PNG: ") + image.message);
    }
    Bytes out(size);
    if (png_image_write_to_memory(&image, out.data(), &size, 0, raster.pixels.data(), 0, nullptr) == 0) {
        throw std::runtime_error(std::string("cannot encode PNG: ") + image.message);
    }
    out.resize(size);
    return out;
}

} // namespace sln::media
