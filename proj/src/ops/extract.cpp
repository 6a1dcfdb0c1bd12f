#include "sln/ops.hpp"

#include "sln/media.hpp"

#include <json.hpp>

#include <fstream>
#include <map>

namespace sln::ops {

namespace {

namespace fs = std::filesystem;

struct Pending {
    std::string stem;
    std::string extension;
    std::size_t website;
    std::string record;
    std::string media_type;
    std::string_view bytes;
};

bool looks_like_xml(std::string_view text) {
    std::size_t i = text.starts_with("\xEF\xBB\xBF") ? 3 : 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\n')) {
        ++i;
    }
    if (text.substr(i).starts_with("<?xml")) {
        return true;
    }
    std::size_t end = text.size();
    while (end > i && (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r' ||
                       text[end - 1] == '\n')) {
        --end;
    }
    return end - i >= 3 && text[i] == '<' && text[end - 1] == '>';
}

void write_file(const fs::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

Manifest write_all(const std::vector<Pending>& pending, const fs::path& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (!fs::is_directory(directory)) {
        throw IoError("cannot create directory '" + directory.string() + "'");
    }

    std::map<std::string, std::size_t> totals;
    for (const auto& p : pending) {
        ++totals[p.stem + "." + p.extension];
    }
    std::map<std::string, std::size_t> used;
    Manifest manifest;
    for (const auto& p : pending) {
        const std::string plain = p.stem + "." + p.extension;
        const bool shared = totals[plain] > 1;
        std::size_t& suffix = used[plain];
        std::string name = plain;
        if (shared) {
            name = p.stem + "-" + std::to_string(++suffix) + "." + p.extension;
        }
        while (fs::exists(directory / name)) {
            name = p.stem + "-" + std::to_string(++suffix) + "." + p.extension;
        }
        write_file(directory / name, p.bytes);
        manifest.push_back({name, p.website, p.record, p.media_type, p.bytes.size()});
    }
    return manifest;
}

std::string_view as_chars(const std::vector<std::uint8_t>& bytes) {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

} // namespace

std::string sanitize_file_name(std::string_view name) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const auto c = static_cast<unsigned char>(name[i]);
        const bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                           c == '_' || (c == '.' && i > 0);
        if (plain) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 0xF]);
        }
    }
    return out;
}

Manifest extract_media(const Notebook& nb, const fs::path& directory) {
    std::vector<Pending> pending;
    for (std::size_t w = 0; w < nb.websites.size(); ++w) {
        for (const auto& img : nb.websites[w].images) {
            const media::ImageFormat format = media::sniff_format(img.full.payload);
            pending.push_back({std::to_string(w + 1) + "-" + sanitize_file_name(img.name),
                               std::string(media::file_extension(format)), w + 1, img.name, img.full.media_type,
                               as_chars(img.full.payload)});
        }
    }
    return write_all(pending, directory);
}

Manifest extract_datasets(const Notebook& nb, const fs::path& directory) {
    std::vector<Pending> pending;
    for (std::size_t w = 0; w < nb.websites.size(); ++w) {
        for (const auto& d : nb.websites[w].datasets) {
            const bool xml = looks_like_xml(d.content);
            pending.push_back({std::to_string(w + 1) + "-" + sanitize_file_name(d.name), xml ? "xml" : "txt", w + 1,
                               d.name, xml ? "application/xml" : "text/plain", d.content});
        }
    }
    return write_all(pending, directory);
}

std::string to_json(const Manifest& manifest) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& f : manifest) {
        nlohmann::ordered_json item;
        item["file"] = f.file;
        item["website"] = f.website;
        item["record"] = f.record;
        item["media_type"] = f.media_type;
        item["bytes"] = f.bytes;
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

} // namespace sln::ops
