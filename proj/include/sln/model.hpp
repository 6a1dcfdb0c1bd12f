#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sln {

inline constexpr std::string_view kNamespace = "http://umbra.nascom.nasa.gov/";
inline constexpr std::string_view kSchemaLocationHint =
    "http://umbra.nascom.nasa.gov/ http://umbra.nascom.nasa.gov/sln/schema/sln.xsd";
inline constexpr std::uint32_t kMaxImageSide = 2048;

/// Thrown when a value violates a model invariant.
class InvalidEntry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A proleptic Gregorian calendar date with the lexical form YYYY-MM-DD.
class Date {
public:
    Date() = default;

    /// Throws InvalidEntry unless `text` is exactly YYYY-MM-DD and names a real day.
    static Date parse(std::string_view text);
    static std::optional<Date> try_parse(std::string_view text);
    static bool is_valid(int year, int month, int day);

    int year() const { return year_; }
    int month() const { return month_; }
    int day() const { return day_; }
    std::string to_string() const;

    auto operator<=>(const Date&) const = default;

private:
    Date(int y, int m, int d) : year_(y), month_(m), day_(d) {}

    int year_ = 1970;
    int month_ = 1;
    int day_ = 1;
};

/// Embedded media: a MIME type and the decoded payload bytes.
struct MediaBlob {
    std::string media_type;
    std::vector<std::uint8_t> payload;

    std::size_t encoded_length() const { return (payload.size() + 2) / 3 * 4; }
    bool operator==(const MediaBlob&) const = default;
};

struct RelatedUrl {
    std::string value;
    std::string notes;
    bool operator==(const RelatedUrl&) const = default;
};

struct Contact {
    std::string name;
    std::string surname;
    std::string email;
    std::string webpage;
    std::string notes;
    bool operator==(const Contact&) const = default;
};

struct Dataset {
    std::string name;
    std::string notes;
    std::string content;
    bool operator==(const Dataset&) const = default;
};

struct ImageRecord {
    std::string name;
    std::string notes;
    std::optional<std::string> related_url;
    MediaBlob full;
    MediaBlob thumbnail;
    std::uint32_t full_width = 0;
    std::uint32_t full_height = 0;
    std::uint32_t thumb_width = 0;
    std::uint32_t thumb_height = 0;
    bool operator==(const ImageRecord&) const = default;
};

// Placeholder until browsers can edit video natively; no decode obligations.
struct VideoRecord {
    std::string name;
    std::string notes;
    std::optional<MediaBlob> media;
    bool operator==(const VideoRecord&) const = default;
};

struct TodoItem {
    std::string text;
    std::optional<Date> due_date;
    bool done = false;
    bool operator==(const TodoItem&) const = default;
};

struct Note {
    std::string text;
    bool operator==(const Note&) const = default;
};

/// One "website" gateway group: the unit every tab of the notebook hangs off.
struct WebsiteEntry {
    std::string name;
    std::string location;
    std::string purpose;
    Date date;
    std::vector<RelatedUrl> related;
    std::vector<Contact> contacts;
    std::vector<Dataset> datasets;
    std::vector<ImageRecord> images;
    std::vector<VideoRecord> videos;
    std::vector<TodoItem> todos;
    std::vector<Note> other_notes;
    bool operator==(const WebsiteEntry&) const = default;
};

struct Notebook {
    std::vector<WebsiteEntry> websites;
    std::optional<std::string> schema_location;
    bool operator==(const Notebook&) const = default;
};

/// A notebook with no websites that carries the default schema location hint.
Notebook new_notebook();

/// Returns `nb` with `entry` appended. Throws InvalidEntry if `entry` breaks an invariant.
Notebook add_website(Notebook nb, WebsiteEntry entry);

/// Throws InvalidEntry describing the first broken invariant.
void check_entry(const WebsiteEntry& entry);
void check_notebook(const Notebook& nb);

/// True when `text` is a syntactically valid `type "/" subtype` MIME type,
/// optionally followed by `;attribute=value` parameters.
bool is_valid_media_type(std::string_view text);

} // namespace sln
