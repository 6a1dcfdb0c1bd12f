#include "sln/codec.hpp"

#include "../detail.hpp"
#include "sln/media.hpp"
#include "sln/schema.hpp"

#include <charconv>
#include <fstream>

namespace sln {

namespace {

std::string format_what(ParseError::Kind kind, std::uint64_t line, std::uint64_t column, const std::string& detail) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + std::string(kind_name(kind)) + ": " + detail;
}

ParseError::Kind kind_for_rule(std::string_view rule_id, std::string_view message) {
    const schema::Rule* rule = schema::find_rule(rule_id);
    if (rule_id == "SLN-NS-001") {
        return ParseError::Kind::WrongRootNamespace;
    }
    if (rule_id == "SLN-UNK-002") {
        return ParseError::Kind::BadAttribute;
    }
    switch (rule->construct) {
    case schema::Construct::NamespaceQualified:
    case schema::Construct::UnknownContent:
        return ParseError::Kind::UnknownElement;
    case schema::Construct::RequiredAttribute:
        return ParseError::Kind::BadAttribute;
    case schema::Construct::SimpleTypeLexical:
        if (rule_id == "SLN-LEX-002" || rule_id == "SLN-LEX-004" || rule_id == "SLN-LEX-006") {
            return ParseError::Kind::BadAttribute;
        }
        // Dates appear both as element text and as the todo `due` attribute.
        if (rule_id == "SLN-LEX-001" && message.starts_with("attribute ")) {
            return ParseError::Kind::BadAttribute;
        }
        return ParseError::Kind::InvalidContent;
    case schema::Construct::SequenceOrder:
    case schema::Construct::Occurrence:
        return ParseError::Kind::InvalidContent;
    }
    return ParseError::Kind::InvalidContent;
}

std::uint32_t dimension_attribute(const xml::PullParser& p, std::string_view name) {
    const xml::Attribute* attr = p.find_attribute("", name);
    std::uint32_t value = 0;
    if (attr != nullptr) {
        std::from_chars(attr->value.data(), attr->value.data() + attr->value.size(), value);
    }
    return value;
}

std::string string_attribute(const xml::PullParser& p, std::string_view name) {
    const xml::Attribute* attr = p.find_attribute("", name);
    return attr != nullptr ? attr->value : std::string();
}

// Builds the model from events the validator has already accepted.
class Builder {
public:
    using Element = schema::Element;

    void start(const xml::PullParser& p, std::optional<Element> element) {
        stack_.push_back(element);
        target_ = nullptr;
        if (!element) {
            return;
        }
        switch (*element) {
        case Element::Sln:
            if (const auto* loc = p.find_attribute(xml::kXsiNamespace, "schemaLocation")) {
                nb_.schema_location = loc->value;
            }
            break;
        case Element::Website:
            nb_.websites.push_back({});
            site().name = string_attribute(p, "name");
            site().location = string_attribute(p, "location");
            break;
        case Element::Purpose:
            target_ = &site().purpose;
            break;
        case Element::Date:
        case Element::ImageData:
        case Element::Thumbnail:
        case Element::VideoData:
            buffer_.clear();
            target_ = &buffer_;
            if (*element == Element::ImageData) {
                site().images.back().full_width = dimension_attribute(p, "width");
                site().images.back().full_height = dimension_attribute(p, "height");
            } else if (*element == Element::Thumbnail) {
                site().images.back().thumb_width = dimension_attribute(p, "width");
                site().images.back().thumb_height = dimension_attribute(p, "height");
            }
            break;
        case Element::RelUri:
            site().related.push_back({string_attribute(p, "value"), {}});
            break;
        case Element::Notes:
            target_ = notes_target();
            break;
        case Element::Contact:
            site().contacts.push_back({});
            site().contacts.back().name = string_attribute(p, "name");
            site().contacts.back().surname = string_attribute(p, "surname");
            break;
        case Element::Email:
            target_ = &site().contacts.back().email;
            break;
        case Element::Webpage:
            target_ = &site().contacts.back().webpage;
            break;
        case Element::Dataset:
            site().datasets.push_back({string_attribute(p, "name"), {}, {}});
            break;
        case Element::Content:
            target_ = &site().datasets.back().content;
            break;
        case Element::Image:
            site().images.push_back({});
            site().images.back().name = string_attribute(p, "name");
            break;
        case Element::Url:
            target_ = &site().images.back().related_url.emplace();
            break;
        case Element::Video:
            site().videos.push_back({});
            site().videos.back().name = string_attribute(p, "name");
            break;
        case Element::Todo: {
            TodoItem item;
            const std::string done = string_attribute(p, "done");
            item.done = done == "true" || done == "1";
            if (const auto* due = p.find_attribute("", "due")) {
                item.due_date = Date::parse(due->value);
            }
            site().todos.push_back(std::move(item));
            target_ = &site().todos.back().text;
            break;
        }
        case Element::Note:
            site().other_notes.push_back({});
            target_ = &site().other_notes.back().text;
            break;
        case Element::Related:
        case Element::Contacts:
        case Element::Datasets:
        case Element::Images:
        case Element::Videos:
        case Element::Todos:
        case Element::OtherNotes:
            break;
        }
    }

    void text(const xml::PullParser& p) {
        if (target_ != nullptr) {
            target_->append(p.text());
        }
    }

    void end() {
        const std::optional<Element> element = stack_.back();
        stack_.pop_back();
        target_ = nullptr;
        if (!element) {
            return;
        }
        switch (*element) {
        case Element::Date:
            site().date = Date::parse(buffer_);
            break;
        case Element::ImageData:
            site().images.back().full = media::decode_data_uri(buffer_);
            break;
        case Element::Thumbnail:
            site().images.back().thumbnail = media::decode_data_uri(buffer_);
            break;
        case Element::VideoData:
            site().videos.back().media = media::decode_data_uri(buffer_);
            break;
        default:
            break;
        }
    }

    Notebook take() { return std::move(nb_); }

private:
    WebsiteEntry& site() { return nb_.websites.back(); }

    std::string* notes_target() {
        const std::optional<Element> parent = stack_.size() >= 2 ? stack_[stack_.size() - 2] : std::nullopt;
        switch (parent.value_or(Element::Sln)) {
        case Element::RelUri:
            return &site().related.back().notes;
        case Element::Contact:
            return &site().contacts.back().notes;
        case Element::Dataset:
            return &site().datasets.back().notes;
        case Element::Image:
            return &site().images.back().notes;
        case Element::Video:
            return &site().videos.back().notes;
        default:
            return nullptr;
        }
    }

    Notebook nb_;
    std::vector<std::optional<Element>> stack_;
    std::string* target_ = nullptr;
    std::string buffer_;
};

} // namespace

ParseError::ParseError(Kind kind, std::uint64_t line, std::uint64_t column, std::string detail)
    : std::runtime_error(format_what(kind, line, column, detail)), kind_(kind), line_(line), column_(column),
      detail_(std::move(detail)) {}

std::string_view kind_name(ParseError::Kind kind) {
    switch (kind) {
    case ParseError::Kind::NotWellFormed:
        return "NotWellFormed";
    case ParseError::Kind::WrongRootNamespace:
        return "WrongRootNamespace";
    case ParseError::Kind::UnknownElement:
        return "UnknownElement";
    case ParseError::Kind::BadAttribute:
        return "BadAttribute";
    case ParseError::Kind::BadEncoding:
        return "BadEncoding";
    case ParseError::Kind::InvalidContent:
        return "InvalidContent";
    }
    return "?";
}

namespace detail {

ParseError to_parse_error(const xml::XmlError& error) {
    const auto kind = error.kind() == xml::ErrorKind::BadEncoding ? ParseError::Kind::BadEncoding
                                                                  : ParseError::Kind::NotWellFormed;
    return ParseError(kind, error.where().line, error.where().column, error.detail());
}

} // namespace detail

Notebook parse_notebook(std::istream& source, ParseOptions options) {
    xml::PullParser parser(source);
    schema::DocumentValidator validator({options.lenient});
    Builder builder;
    std::size_t seen = 0;
    try {
        while (true) {
            const xml::Event event = parser.next();
            validator.consume(parser, event);
            const auto& findings = validator.findings();
            for (; seen < findings.size(); ++seen) {
                const schema::Finding& f = findings[seen];
                if (f.severity == schema::Severity::Error) {
                    throw ParseError(kind_for_rule(f.rule_id, f.message), f.line, f.column,
                                     f.rule_id + " " + f.path + ": " + f.message);
                }
            }
            switch (event) {
            case xml::Event::StartElement:
                builder.start(parser, validator.current());
                break;
            case xml::Event::Text:
                builder.text(parser);
                break;
            case xml::Event::EndElement:
                builder.end();
                break;
            case xml::Event::EndDocument:
                return builder.take();
            }
        }
    } catch (const xml::XmlError& error) {
        throw detail::to_parse_error(error);
    }
}

Notebook parse_notebook(std::string_view document, ParseOptions options) {
    detail::ViewStream in(document);
    return parse_notebook(in, options);
}

Notebook read_notebook_file(const std::filesystem::path& path, ParseOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return parse_notebook(in, options);
}

} // namespace sln
