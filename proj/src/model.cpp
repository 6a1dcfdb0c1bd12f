#include "sln/model.hpp"

#include "sln/utf8.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace sln {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int read_int(std::string_view text) {
    int value = 0;
    std::from_chars(text.data(), text.data() + text.size(), value);
    return value;
}

void require_text(std::string_view what, std::string_view value) {
    if (const auto at = utf8::first_non_xml_char(value)) {
        throw InvalidEntry(std::string(what) + ": invalid character at byte " + std::to_string(*at));
    }
}

void require_name(std::string_view what, std::string_view value) {
    if (value.empty()) {
        throw InvalidEntry(std::string(what) + " must not be empty");
    }
    require_text(what, value);
}

void require_blob(std::string_view what, const MediaBlob& blob) {
    if (!is_valid_media_type(blob.media_type)) {
        throw InvalidEntry(std::string(what) + ": malformed media type '" + blob.media_type + "'");
    }
}

void require_side(std::string_view what, std::uint32_t value) {
    if (value < 1 || value > kMaxImageSide) {
        throw InvalidEntry(std::string(what) + " must be within 1.." + std::to_string(kMaxImageSide));
    }
}

// RFC 2045 token characters.
bool is_token_char(char c) {
    if (c <= 0x20 || c >= 0x7F) {
        return false;
    }
    constexpr std::string_view tspecials = "()<>@,;:\\\"/[]?=";
    return tspecials.find(c) == std::string_view::npos;
}

bool is_token(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!is_token_char(c)) {
            return false;
        }
    }
    return true;
}

} // namespace

bool Date::is_valid(int year, int month, int day) {
    if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1) {
        return false;
    }
    static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const int limit = (month == 2 && leap) ? 29 : days[static_cast<std::size_t>(month - 1)];
    return day <= limit;
}

std::optional<Date> Date::try_parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!is_digit(text[i])) {
            return std::nullopt;
        }
    }
    const int y = read_int(text.substr(0, 4));
    const int m = read_int(text.substr(5, 2));
    const int d = read_int(text.substr(8, 2));
    if (!is_valid(y, m, d)) {
        return std::nullopt;
    }
    return Date(y, m, d);
}

Date Date::parse(std::string_view text) {
    if (auto date = try_parse(text)) {
        return *date;
    }
    throw InvalidEntry("not a YYYY-MM-DD calendar date: '" + std::string(text) + "'");
}

std::string Date::to_string() const {
    std::array<char, 16> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02d", year_, month_, day_);
    return buf.data();
}

bool is_valid_media_type(std::string_view text) {
    const auto semi = text.find(';');
    const auto essence = text.substr(0, semi);
    const auto slash = essence.find('/');
    if (slash == std::string_view::npos || !is_token(essence.substr(0, slash)) ||
        !is_token(essence.substr(slash + 1))) {
        return false;
    }
    if (semi == std::string_view::npos) {
        return true;
    }
    auto rest = text.substr(semi + 1);
    while (true) {
        const auto next = rest.find(';');
        const auto param = rest.substr(0, next);
        const auto eq = param.find('=');
        if (eq == std::string_view::npos || !is_token(param.substr(0, eq)) ||
            !is_token(param.substr(eq + 1))) {
            return false;
        }
        if (next == std::string_view::npos) {
            return true;
        }
        rest = rest.substr(next + 1);
    }
}

void check_entry(const WebsiteEntry& entry) {
    require_name("website name", entry.name);
    require_text("website location", entry.location);
    require_text("website purpose", entry.purpose);
    for (const auto& url : entry.related) {
        require_name("related url", url.value);
        require_text("related url notes", url.notes);
    }
    for (const auto& contact : entry.contacts) {
        require_name("contact name", contact.name);
        require_name("contact surname", contact.surname);
        require_text("contact email", contact.email);
        require_text("contact webpage", contact.webpage);
        require_text("contact notes", contact.notes);
    }
    for (const auto& dataset : entry.datasets) {
        require_name("dataset name", dataset.name);
        require_text("dataset notes", dataset.notes);
        require_text("dataset content", dataset.content);
    }
    for (const auto& image : entry.images) {
        require_name("image name", image.name);
        require_text("image notes", image.notes);
        if (image.related_url) {
            require_text("image related url", *image.related_url);
        }
        require_blob("image", image.full);
        require_blob("image thumbnail", image.thumbnail);
        require_side("image width", image.full_width);
        require_side("image height", image.full_height);
        require_side("thumbnail width", image.thumb_width);
        require_side("thumbnail height", image.thumb_height);
        if (image.thumb_width > image.full_width || image.thumb_height > image.full_height) {
            throw InvalidEntry("thumbnail of image '" + image.name + "' is larger than the image");
        }
    }
    for (const auto& video : entry.videos) {
        require_name("video name", video.name);
        require_text("video notes", video.notes);
        if (video.media) {
            require_blob("video", *video.media);
        }
    }
    for (const auto& todo : entry.todos) {
        require_name("todo text", todo.text);
    }
    for (const auto& note : entry.other_notes) {
        require_text("note", note.text);
    }
}

void check_notebook(const Notebook& nb) {
    if (nb.schema_location) {
        require_text("schema location", *nb.schema_location);
    }
    for (const auto& entry : nb.websites) {
        check_entry(entry);
    }
}

Notebook new_notebook() {
    Notebook nb;
    nb.schema_location = std::string(kSchemaLocationHint);
    return nb;
}

Notebook add_website(Notebook nb, WebsiteEntry entry) {
    check_entry(entry);
    nb.websites.push_back(std::move(entry));
    return nb;
}

} // namespace sln
