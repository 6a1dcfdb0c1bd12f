#include "sln/codec.hpp"

#include "../detail.hpp"
#include "sln/media.hpp"
#include "sln/xml/pull_parser.hpp"

namespace sln {

namespace {

// Only the elements the counters care about. Resolving by parent keeps
// image `data` and video `data` apart.
enum class Kind { Other, Root, Website, Datasets, Dataset, Content, Images, Image, ImageMedia, Videos, Video, VideoMedia };

Kind classify(Kind parent, std::string_view local) {
    switch (parent) {
    case Kind::Root:
        return local == "website" ? Kind::Website : Kind::Other;
    case Kind::Website:
        if (local == "datasets") {
            return Kind::Datasets;
        }
        if (local == "images") {
            return Kind::Images;
        }
        return local == "videos" ? Kind::Videos : Kind::Other;
    case Kind::Datasets:
        return local == "dataset" ? Kind::Dataset : Kind::Other;
    case Kind::Dataset:
        return local == "content" ? Kind::Content : Kind::Other;
    case Kind::Images:
        return local == "image" ? Kind::Image : Kind::Other;
    case Kind::Image:
        return local == "data" || local == "thumbnail" ? Kind::ImageMedia : Kind::Other;
    case Kind::Videos:
        return local == "video" ? Kind::Video : Kind::Other;
    case Kind::Video:
        return local == "data" ? Kind::VideoMedia : Kind::Other;
    default:
        return Kind::Other;
    }
}

} // namespace

StreamStats stream_stats(std::istream& source) {
    StreamStats stats;
    xml::PullParser parser(source);
    std::vector<Kind> stack;
    std::optional<media::DataUriChecker> media;
    try {
        while (true) {
            switch (parser.next()) {
            case xml::Event::StartElement: {
                Kind kind = Kind::Other;
                if (stack.empty()) {
                    if (parser.ns() != kNamespace || parser.local_name() != "sln") {
                        const xml::Position at = parser.position();
                        throw ParseError(ParseError::Kind::WrongRootNamespace, at.line, at.column,
                                         "root element <" + std::string(parser.qname()) + "> is not <sln> in '" +
                                             std::string(kNamespace) + "'");
                    }
                    kind = Kind::Root;
                } else if (parser.ns() == kNamespace) {
                    kind = classify(stack.back(), parser.local_name());
                }
                if (kind == Kind::Website) {
                    ++stats.website_count;
                } else if (kind == Kind::Image) {
                    ++stats.image_count;
                } else if (kind == Kind::ImageMedia || kind == Kind::VideoMedia) {
                    media.emplace();
                }
                stack.push_back(kind);
                break;
            }
            case xml::Event::Text:
                if (stack.empty()) {
                    break;
                }
                if (stack.back() == Kind::Content) {
                    stats.dataset_bytes += parser.text().size();
                } else if (stack.back() == Kind::ImageMedia || stack.back() == Kind::VideoMedia) {
                    media->feed(parser.text());
                }
                break;
            case xml::Event::EndElement:
                if (stack.back() == Kind::ImageMedia || stack.back() == Kind::VideoMedia) {
                    // Malformed payloads are a validation matter; they count as zero here.
                    if (media->finish().empty()) {
                        stats.total_media_bytes += media->decoded_size();
                    }
                    media.reset();
                }
                stack.pop_back();
                break;
            case xml::Event::EndDocument:
                return stats;
            }
        }
    } catch (const xml::XmlError& error) {
        throw detail::to_parse_error(error);
    }
}

} // namespace sln
