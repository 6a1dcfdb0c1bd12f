#include "sln/search.hpp"

#include "sln/utf8.hpp"

#include <unicode/uchar.h>

namespace sln::search {

std::string_view field_name(Field field) {
    switch (field) {
    case Field::Name:
        return "name";
    case Field::Location:
        return "location";
    case Field::Purpose:
        return "purpose";
    }
    return "?";
}

std::u32string fold(std::string_view utf8) {
    std::u32string out = utf8::to_u32(utf8);
    for (char32_t& cp : out) {
        cp = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT));
    }
    return out;
}

bool contains(std::string_view haystack, std::string_view needle) {
    return fold(haystack).find(fold(needle)) != std::u32string::npos;
}

SearchIndex::SearchIndex(const Notebook& nb) {
    entries_.reserve(nb.websites.size());
    for (const auto& site : nb.websites) {
        entries_.push_back({fold(site.name), fold(site.location), fold(site.purpose)});
    }
}

void SearchIndex::match_entry(std::size_t entry, const std::u32string& needle, QueryResult& out) const {
    for (std::size_t f = 0; f < 3; ++f) {
        const std::size_t at = entries_[entry][f].find(needle);
        if (at != std::u32string::npos) {
            out.push_back({entry, static_cast<Field>(f), at});
        }
    }
}

QueryResult SearchIndex::query(std::string_view text) const {
    const std::u32string needle = fold(text);
    QueryResult out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        match_entry(i, needle, out);
    }
    return out;
}

QueryResult SearchIndex::query_within(std::string_view text, const std::vector<std::size_t>& entries) const {
    const std::u32string needle = fold(text);
    QueryResult out;
    for (std::size_t i : entries) {
        match_entry(i, needle, out);
    }
    return out;
}

SearchIndex build_index(const Notebook& nb) { return SearchIndex(nb); }

QueryResult query(const SearchIndex& index, std::string_view text) { return index.query(text); }

const QueryResult& SearchSession::update(std::string_view text) {
    if (primed_ && text.starts_with(text_)) {
        // A field that contains the longer text contains the shorter one too.
        std::vector<std::size_t> entries;
        for (const Match& m : result_) {
            if (entries.empty() || entries.back() != m.entry) {
                entries.push_back(m.entry);
            }
        }
        result_ = index_->query_within(text, entries);
    } else {
        result_ = index_->query(text);
    }
    text_ = std::string(text);
    primed_ = true;
    return result_;
}

std::vector<Row> filter_rows(const std::vector<Row>& rows, std::string_view keyword) {
    const std::u32string needle = fold(keyword);
    std::vector<Row> out;
    for (const Row& row : rows) {
        for (const std::string& field : row) {
            if (fold(field).find(needle) != std::u32string::npos) {
                out.push_back(row);
                break;
            }
        }
    }
    return out;
}

std::vector<Row> website_rows(const Notebook& nb) {
    std::vector<Row> rows;
    for (const auto& w : nb.websites) {
        rows.push_back({w.name, w.location, w.purpose, w.date.to_string()});
    }
    return rows;
}

std::vector<Row> related_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& r : entry.related) {
        rows.push_back({r.value, r.notes});
    }
    return rows;
}

std::vector<Row> contact_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& c : entry.contacts) {
        rows.push_back({c.name, c.surname, c.email, c.webpage, c.notes});
    }
    return rows;
}

// Content is left out: the table shows names and notes, not dataset bodies.
std::vector<Row> dataset_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& d : entry.datasets) {
        rows.push_back({d.name, d.notes});
    }
    return rows;
}

std::vector<Row> image_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& img : entry.images) {
        rows.push_back({img.name, img.notes, img.related_url.value_or(""),
                        std::to_string(img.full_width) + "x" + std::to_string(img.full_height)});
    }
    return rows;
}

std::vector<Row> video_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& v : entry.videos) {
        rows.push_back({v.name, v.notes});
    }
    return rows;
}

std::vector<Row> todo_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& t : entry.todos) {
        rows.push_back({t.text, t.due_date ? t.due_date->to_string() : "", t.done ? "done" : "open"});
    }
    return rows;
}

std::vector<Row> note_rows(const WebsiteEntry& entry) {
    std::vector<Row> rows;
    for (const auto& n : entry.other_notes) {
        rows.push_back({n.text});
    }
    return rows;
}

} // namespace sln::search
