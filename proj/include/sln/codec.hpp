#pragma once

#include "sln/model.hpp"
#include "sln/parse_error.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sln {

/// The output stream failed while serializing.
class SinkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseOptions {
    /// Skip unknown elements, attributes and stray text instead of failing.
    bool lenient = false;
};

/// Single forward pass over `source`. Throws ParseError on the first problem.
Notebook parse_notebook(std::istream& source, ParseOptions options = {});
Notebook parse_notebook(std::string_view document, ParseOptions options = {});
/// Throws IoError when the file cannot be opened.
Notebook read_notebook_file(const std::filesystem::path& path, ParseOptions options = {});

/// Incremental canonical serializer: begin, any number of write calls, finish.
/// Each entry is checked with check_entry before anything is emitted for it.
class NotebookWriter {
public:
    explicit NotebookWriter(std::ostream& sink);

    void begin(const std::optional<std::string>& schema_location);
    void write(const WebsiteEntry& entry);
    void finish();

private:
    void check_sink();

    std::ostream& out_;
    bool begun_ = false;
    bool finished_ = false;
    bool has_entries_ = false;
};

/// Throws SinkError when the stream fails and InvalidEntry for a broken entry.
void serialize_notebook(const Notebook& nb, std::ostream& sink);
std::string serialize_notebook(const Notebook& nb);
void write_notebook_file(const Notebook& nb, const std::filesystem::path& path);

/// Escaping used by the serializer, exposed for tests.
std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

struct StreamStats {
    std::uint64_t website_count = 0;
    /// UTF-8 bytes of dataset content after entity expansion.
    std::uint64_t dataset_bytes = 0;
    std::uint64_t image_count = 0;
    /// Decoded payload bytes of every image, thumbnail and video data URI.
    std::uint64_t total_media_bytes = 0;

    bool operator==(const StreamStats&) const = default;
};

/// Counts in one pass without buffering character data. Structure is not
/// checked beyond the root element; use schema::validate for that.
StreamStats stream_stats(std::istream& source);

} // namespace sln
