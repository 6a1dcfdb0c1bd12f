#pragma once

#include "sln/model.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sln::search {

enum class Field { Name, Location, Purpose };

std::string_view field_name(Field field);

struct Match {
    std::size_t entry = 0; // index into Notebook::websites
    Field field = Field::Name;
    std::size_t offset = 0; // code points into the field
    bool operator==(const Match&) const = default;
};

/// Ordered by entry, then name, location, purpose.
using QueryResult = std::vector<Match>;

/// Unicode simple case folding of UTF-8 text, one code point per code point.
std::u32string fold(std::string_view utf8);

/// Case-insensitive substring test on UTF-8 text.
bool contains(std::string_view haystack, std::string_view needle);

class SearchIndex {
public:
    SearchIndex() = default;
    explicit SearchIndex(const Notebook& nb);

    std::size_t size() const { return entries_.size(); }
    QueryResult query(std::string_view text) const;
    /// Like query, restricted to the listed entries (ascending).
    QueryResult query_within(std::string_view text, const std::vector<std::size_t>& entries) const;

private:
    void match_entry(std::size_t entry, const std::u32string& needle, QueryResult& out) const;

    std::vector<std::array<std::u32string, 3>> entries_;
};

SearchIndex build_index(const Notebook& nb);
QueryResult query(const SearchIndex& index, std::string_view text);

/// Per-keystroke search. When the new text extends the previous one only the
/// previous hits are rescanned.
class SearchSession {
public:
    explicit SearchSession(const SearchIndex& index) : index_(&index) {}

    const QueryResult& update(std::string_view text);
    const QueryResult& result() const { return result_; }

private:
    const SearchIndex* index_;
    std::string text_;
    bool primed_ = false;
    QueryResult result_;
};

using Row = std::vector<std::string>;

/// Keeps rows where any field contains `keyword`, in their original order.
std::vector<Row> filter_rows(const std::vector<Row>& rows, std::string_view keyword);

// Table rows as each tab shows them.
std::vector<Row> website_rows(const Notebook& nb);
std::vector<Row> related_rows(const WebsiteEntry& entry);
std::vector<Row> contact_rows(const WebsiteEntry& entry);
std::vector<Row> dataset_rows(const WebsiteEntry& entry);
std::vector<Row> image_rows(const WebsiteEntry& entry);
std::vector<Row> video_rows(const WebsiteEntry& entry);
std::vector<Row> todo_rows(const WebsiteEntry& entry);
std::vector<Row> note_rows(const WebsiteEntry& entry);

} // namespace sln::search
