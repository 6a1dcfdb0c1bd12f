#include "sln/media.hpp"

#include <algorithm>
#include <cctype>

namespace sln::media {

namespace {

constexpr std::string_view kScheme = "data:";
constexpr std::string_view kMarker = ";base64";
constexpr std::size_t kMaxHeader = 512;

// Returns the media type of a "data:<type>;base64" header, or an error text.
bool split_header(std::string_view header, std::string& media_type, std::string& error) {
    if (header.substr(0, kScheme.size()) != kScheme) {
        error = "missing 'data:' prefix";
        return false;
    }
    if (header.size() < kScheme.size() + kMarker.size() ||
        header.substr(header.size() - kMarker.size()) != kMarker) {
        error = "missing ';base64' marker";
        return false;
    }
    media_type = std::string(header.substr(kScheme.size(), header.size() - kScheme.size() - kMarker.size()));
    if (!is_valid_media_type(media_type)) {
        error = "malformed media type '" + media_type + "'";
        return false;
    }
    return true;
}

bool is_xml_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

} // namespace

std::string encode_data_uri(std::string_view media_type, ByteView bytes) {
    if (!is_valid_media_type(media_type)) {
        throw BadMediaType("malformed media type '" + std::string(media_type) + "'");
    }
    std::string out;
    out.reserve(kScheme.size() + media_type.size() + kMarker.size() + 1 + (bytes.size() + 2) / 3 * 4);
    out.append(kScheme).append(media_type).append(kMarker).push_back(',');
    out.append(base64_encode(bytes));
    return out;
}

std::string encode_data_uri(const MediaBlob& blob) { return encode_data_uri(blob.media_type, blob.payload); }

MediaBlob decode_data_uri(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw MalformedDataUri("data URI has no ',' separator");
    }
    MediaBlob blob;
    std::string error;
    if (!split_header(text.substr(0, comma), blob.media_type, error)) {
        throw MalformedDataUri(error);
    }
    auto payload = base64_decode(text.substr(comma + 1));
    if (!payload) {
        Base64Checker checker;
        checker.feed(text.substr(comma + 1));
        throw MalformedDataUri("bad base64 payload: " + checker.finish());
    }
    blob.payload = std::move(*payload);
    return blob;
}

void DataUriChecker::feed(std::string_view chunk) {
    if (!error_.empty()) {
        return;
    }
    if (!in_payload_) {
        const auto comma = chunk.find(',');
        header_.append(chunk.substr(0, comma));
        if (header_.size() > kMaxHeader) {
            error_ = "data URI header is too long";
            return;
        }
        if (comma == std::string_view::npos) {
            return;
        }
        in_payload_ = true;
        parse_header();
        chunk.remove_prefix(comma + 1);
    }
    payload_.feed(chunk);
}

void DataUriChecker::parse_header() {
    split_header(header_, media_type_, error_);
}

std::string DataUriChecker::finish() const {
    if (!error_.empty()) {
        return error_;
    }
    if (!in_payload_) {
        return header_.empty() ? "empty data URI" : "data URI has no ',' separator";
    }
    const std::string payload_error = payload_.finish();
    return payload_error.empty() ? std::string() : "bad base64 payload: " + payload_error;
}

ImageFormat sniff_format(ByteView bytes) {
    auto has_prefix = [&](std::initializer_list<std::uint8_t> magic) {
        return bytes.size() >= magic.size() && std::equal(magic.begin(), magic.end(), bytes.begin());
    };
    if (has_prefix({0x89, 'P', 'N', 'G'})) {
        return ImageFormat::Png;
    }
    if (has_prefix({0xFF, 0xD8, 0xFF})) {
        return ImageFormat::Jpeg;
    }
    if (has_prefix({'G', 'I', 'F', '8', '7', 'a'}) || has_prefix({'G', 'I', 'F', '8', '9', 'a'})) {
        return ImageFormat::Gif;
    }
    if (has_prefix({'B', 'M'})) {
        return ImageFormat::Bmp;
    }

    // SVG: skip prolog (BOM, declaration, comments, doctype) within a bounded
    // window and look at the first element name.
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), std::min<std::size_t>(bytes.size(), 4096));
    std::size_t i = text.substr(0, 3) == "\xEF\xBB\xBF" ? 3 : 0;
    while (i < text.size()) {
        if (is_xml_space(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '<') {
            return ImageFormat::Unknown;
        }
        std::string_view close;
        if (text.substr(i, 4) == "<!--") {
            close = "-->";
        } else if (text.substr(i, 2) == "<?") {
            close = "?>";
        } else if (text.substr(i, 2) == "<!") {
            close = ">";
        } else {
            std::size_t end = i + 1;
            while (end < text.size() && !is_xml_space(static_cast<unsigned char>(text[end])) && text[end] != '>' &&
                   text[end] != '/') {
                ++end;
            }
            std::string_view name = text.substr(i + 1, end - i - 1);
            if (const auto colon = name.find(':'); colon != std::string_view::npos) {
                name.remove_prefix(colon + 1);
            }
            return name == "svg" ? ImageFormat::Svg : ImageFormat::Unknown;
        }
        const auto found = text.find(close, i + 2);
        if (found == std::string_view::npos) {
            return ImageFormat::Unknown;
        }
        i = found + close.size();
    }
    return ImageFormat::Unknown;
}

std::string_view format_name(ImageFormat format) {
    switch (format) {
    case ImageFormat::Png:
        return "PNG";
    case ImageFormat::Jpeg:
        return "JPEG";
    case ImageFormat::Gif:
        return "GIF";
    case ImageFormat::Bmp:
        return "BMP";
    case ImageFormat::Svg:
        return "SVG";
    case ImageFormat::Unknown:
        break;
    }
    return "Unknown";
}

std::string_view file_extension(ImageFormat format) {
    switch (format) {
    case ImageFormat::Png:
        return "png";
    case ImageFormat::Jpeg:
        return "jpg";
    case ImageFormat::Gif:
        return "gif";
    case ImageFormat::Bmp:
        return "bmp";
    case ImageFormat::Svg:
        return "svg";
    case ImageFormat::Unknown:
        break;
    }
    return "bin";
}

std::string_view media_type_of(ImageFormat format) {
    switch (format) {
    case ImageFormat::Png:
        return "image/png";
    case ImageFormat::Jpeg:
        return "image/jpeg";
    case ImageFormat::Gif:
        return "image/gif";
    case ImageFormat::Bmp:
        return "image/bmp";
    case ImageFormat::Svg:
        return "image/svg+xml";
    case ImageFormat::Unknown:
        break;
    }
    return "application/octet-stream";
}

} // namespace sln::media
