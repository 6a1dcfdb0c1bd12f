#include "sln/codec.hpp"

#include "sln/media.hpp"
#include "sln/xml/pull_parser.hpp"

#include <fstream>
#include <sstream>

namespace sln {

namespace {

constexpr std::string_view kIndent = "                ";

// Writes `text` with the characters in `special` replaced. Runs of plain
// bytes go out in one call so large dataset bodies stay cheap.
template <typename Replace>
void write_escaped(std::ostream& out, std::string_view text, Replace replace) {
    std::size_t run = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const std::string_view rep = replace(text[i]);
        if (rep.empty()) {
            continue;
        }
        out.write(text.data() + run, static_cast<std::streamsize>(i - run));
        out.write(rep.data(), static_cast<std::streamsize>(rep.size()));
        run = i + 1;
    }
    out.write(text.data() + run, static_cast<std::streamsize>(text.size() - run));
}

std::string_view text_replacement(char c) {
    switch (c) {
    case '&':
        return "&amp;";
    case '<':
        return "&lt;";
    case '>':
        return "&gt;";
    case '\r':
        return "&#13;";
    default:
        return {};
    }
}

std::string_view attribute_replacement(char c) {
    switch (c) {
    case '"':
        return "&quot;";
    case '\t':
        return "&#9;";
    case '\n':
        return "&#10;";
    default:
        return text_replacement(c);
    }
}

class EntryWriter {
public:
    explicit EntryWriter(std::ostream& out) : out_(out) {}

    void open(std::size_t depth, std::string_view name) {
        indent(depth);
        out_ << '<' << name << ">\n";
    }

    void open_start(std::size_t depth, std::string_view name) {
        indent(depth);
        out_ << '<' << name;
    }

    void attribute(std::string_view name, std::string_view value) {
        out_ << ' ' << name << "=\"";
        write_escaped(out_, value, attribute_replacement);
        out_ << '"';
    }

    void open_end() { out_ << ">\n"; }

    void close(std::size_t depth, std::string_view name) {
        indent(depth);
        out_ << "</" << name << ">\n";
    }

    void text_element(std::size_t depth, std::string_view name, std::string_view text) {
        open_start(depth, name);
        text_body(name, text);
    }

    // Finishes an element whose start tag is open: `>text</name>` or `/>`.
    void text_body(std::string_view name, std::string_view text) {
        if (text.empty()) {
            out_ << "/>\n";
            return;
        }
        out_ << '>';
        write_escaped(out_, text, text_replacement);
        out_ << "</" << name << ">\n";
    }

    void media_element(std::size_t depth, std::string_view name, const MediaBlob& blob,
                       std::optional<std::pair<std::uint32_t, std::uint32_t>> size) {
        open_start(depth, name);
        if (size) {
            attribute("width", std::to_string(size->first));
            attribute("height", std::to_string(size->second));
        }
        text_body(name, media::encode_data_uri(blob));
    }

    void entry(const WebsiteEntry& e) {
        open_start(1, "website");
        attribute("name", e.name);
        attribute("location", e.location);
        open_end();
        text_element(2, "purpose", e.purpose);
        text_element(2, "date", e.date.to_string());

        if (!e.related.empty()) {
            open(2, "related");
            for (const auto& r : e.related) {
                open_start(3, "reluri");
                attribute("value", r.value);
                open_end();
                text_element(4, "notes", r.notes);
                close(3, "reluri");
            }
            close(2, "related");
        }
        if (!e.contacts.empty()) {
            open(2, "contacts");
            for (const auto& c : e.contacts) {
                open_start(3, "contact");
                attribute("name", c.name);
                attribute("surname", c.surname);
                open_end();
                text_element(4, "email", c.email);
                text_element(4, "webpage", c.webpage);
                text_element(4, "notes", c.notes);
                close(3, "contact");
            }
            close(2, "contacts");
        }
        if (!e.datasets.empty()) {
            open(2, "datasets");
            for (const auto& d : e.datasets) {
                open_start(3, "dataset");
                attribute("name", d.name);
                open_end();
                text_element(4, "notes", d.notes);
                text_element(4, "content", d.content);
                close(3, "dataset");
            }
            close(2, "datasets");
        }
        if (!e.images.empty()) {
            open(2, "images");
            for (const auto& img : e.images) {
                open_start(3, "image");
                attribute("name", img.name);
                open_end();
                text_element(4, "notes", img.notes);
                if (img.related_url) {
                    text_element(4, "url", *img.related_url);
                }
                media_element(4, "data", img.full, std::pair{img.full_width, img.full_height});
                media_element(4, "thumbnail", img.thumbnail, std::pair{img.thumb_width, img.thumb_height});
                close(3, "image");
            }
            close(2, "images");
        }
        if (!e.videos.empty()) {
            open(2, "videos");
            for (const auto& v : e.videos) {
                open_start(3, "video");
                attribute("name", v.name);
                open_end();
                text_element(4, "notes", v.notes);
                if (v.media) {
                    media_element(4, "data", *v.media, std::nullopt);
                }
                close(3, "video");
            }
            close(2, "videos");
        }
        if (!e.todos.empty()) {
            open(2, "todos");
            for (const auto& t : e.todos) {
                open_start(3, "todo");
                attribute("done", t.done ? "true" : "false");
                if (t.due_date) {
                    attribute("due", t.due_date->to_string());
                }
                text_body("todo", t.text);
            }
            close(2, "todos");
        }
        if (!e.other_notes.empty()) {
            open(2, "othernotes");
            for (const auto& n : e.other_notes) {
                text_element(3, "note", n.text);
            }
            close(2, "othernotes");
        }
        close(1, "website");
    }

private:
    void indent(std::size_t depth) { out_ << kIndent.substr(0, depth * 2); }

    std::ostream& out_;
};

} // namespace

std::string escape_text(std::string_view text) {
    std::ostringstream out;
    write_escaped(out, text, text_replacement);
    return std::move(out).str();
}

std::string escape_attribute(std::string_view text) {
    std::ostringstream out;
    write_escaped(out, text, attribute_replacement);
    return std::move(out).str();
}

NotebookWriter::NotebookWriter(std::ostream& sink) : out_(sink) {}

void NotebookWriter::check_sink() {
    if (!out_) {
        throw SinkError("write to output stream failed");
    }
}

void NotebookWriter::begin(const std::optional<std::string>& schema_location) {
    if (begun_) {
        throw std::logic_error("NotebookWriter::begin called twice");
    }
    begun_ = true;
    out_ << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
    out_ << "<sln xmlns=\"" << kNamespace << '"';
    if (schema_location) {
        out_ << " xmlns:xsi=\"" << xml::kXsiNamespace << "\" xsi:schemaLocation=\""
             << escape_attribute(*schema_location) << '"';
    }
    check_sink();
}

void NotebookWriter::write(const WebsiteEntry& entry) {
    if (!begun_ || finished_) {
        throw std::logic_error("NotebookWriter::write outside begin/finish");
    }
    check_entry(entry);
    if (!has_entries_) {
        out_ << ">\n";
        has_entries_ = true;
    }
    EntryWriter(out_).entry(entry);
    check_sink();
}

void NotebookWriter::finish() {
    if (!begun_ || finished_) {
        throw std::logic_error("NotebookWriter::finish outside begin");
    }
    finished_ = true;
    out_ << (has_entries_ ? "</sln>\n" : "/>\n");
    out_.flush();
    check_sink();
}

void serialize_notebook(const Notebook& nb, std::ostream& sink) {
    NotebookWriter writer(sink);
    writer.begin(nb.schema_location);
    for (const auto& entry : nb.websites) {
        writer.write(entry);
    }
    writer.finish();
}

std::string serialize_notebook(const Notebook& nb) {
    std::ostringstream out;
    serialize_notebook(nb, out);
    return std::move(out).str();
}

void write_notebook_file(const Notebook& nb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    serialize_notebook(nb, out);
}

} // namespace sln
