#include "sln/schema.hpp"

#include "../detail.hpp"
#include "sln/codec.hpp"
#include "sln/media.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>

namespace sln::schema {

namespace {

enum class TextType { None, String, NonEmpty, Date, DataUri };
enum class AttrType { String, NonEmpty, Date, Dimension, Boolean };

struct AttributeDecl {
    std::string_view name;
    AttrType type;
    bool required;
};

struct Particle {
    Element element;
    std::uint32_t min;
    std::uint32_t max; // 0 = unbounded
};

struct ElementDecl {
    Element id;
    std::string_view name;
    TextType text;
    std::span<const AttributeDecl> attributes;
    std::span<const Particle> children;
    std::string_view sequence_rule;
    std::string_view attribute_rule;
    std::string_view occurrence_rule;
};

constexpr std::uint32_t kUnbounded = 0;

constexpr AttributeDecl kWebsiteAttrs[] = {{"name", AttrType::NonEmpty, true}, {"location", AttrType::String, true}};
constexpr AttributeDecl kRelUriAttrs[] = {{"value", AttrType::NonEmpty, true}};
constexpr AttributeDecl kContactAttrs[] = {{"name", AttrType::NonEmpty, true},
                                           {"surname", AttrType::NonEmpty, true}};
constexpr AttributeDecl kNamedAttrs[] = {{"name", AttrType::NonEmpty, true}};
constexpr AttributeDecl kDimensionAttrs[] = {{"width", AttrType::Dimension, true},
                                             {"height", AttrType::Dimension, true}};
constexpr AttributeDecl kTodoAttrs[] = {{"done", AttrType::Boolean, false}, {"due", AttrType::Date, false}};

constexpr Particle kSlnChildren[] = {{Element::Website, 0, kUnbounded}};
constexpr Particle kWebsiteChildren[] = {
    {Element::Purpose, 1, 1},  {Element::Date, 1, 1},   {Element::Related, 0, 1},
    {Element::Contacts, 0, 1}, {Element::Datasets, 0, 1}, {Element::Images, 0, 1},
    {Element::Videos, 0, 1},   {Element::Todos, 0, 1},  {Element::OtherNotes, 0, 1},
};
constexpr Particle kRelatedChildren[] = {{Element::RelUri, 1, kUnbounded}};
constexpr Particle kRelUriChildren[] = {{Element::Notes, 1, 1}};
constexpr Particle kContactsChildren[] = {{Element::Contact, 1, kUnbounded}};
constexpr Particle kContactChildren[] = {{Element::Email, 1, 1}, {Element::Webpage, 1, 1}, {Element::Notes, 1, 1}};
constexpr Particle kDatasetsChildren[] = {{Element::Dataset, 1, kUnbounded}};
constexpr Particle kDatasetChildren[] = {{Element::Notes, 1, 1}, {Element::Content, 1, 1}};
constexpr Particle kImagesChildren[] = {{Element::Image, 1, kUnbounded}};
constexpr Particle kImageChildren[] = {
    {Element::Notes, 1, 1}, {Element::Url, 0, 1}, {Element::ImageData, 1, 1}, {Element::Thumbnail, 1, 1}};
constexpr Particle kVideosChildren[] = {{Element::Video, 1, kUnbounded}};
constexpr Particle kVideoChildren[] = {{Element::Notes, 1, 1}, {Element::VideoData, 0, 1}};
constexpr Particle kTodosChildren[] = {{Element::Todo, 1, kUnbounded}};
constexpr Particle kOtherNotesChildren[] = {{Element::Note, 1, kUnbounded}};

constexpr std::span<const AttributeDecl> kNoAttrs{};
constexpr std::span<const Particle> kNoChildren{};

// Indexed by Element.
constexpr std::array kDecls = {
    ElementDecl{Element::Sln, "sln", TextType::None, kNoAttrs, kSlnChildren, "", "", ""},
    ElementDecl{Element::Website, "website", TextType::None, kWebsiteAttrs, kWebsiteChildren, "SLN-SEQ-001",
                "SLN-ATT-001", "SLN-OCC-001"},
    ElementDecl{Element::Purpose, "purpose", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Date, "date", TextType::Date, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Related, "related", TextType::None, kNoAttrs, kRelatedChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::RelUri, "reluri", TextType::None, kRelUriAttrs, kRelUriChildren, "", "SLN-ATT-002",
                "SLN-OCC-002"},
    ElementDecl{Element::Notes, "notes", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Contacts, "contacts", TextType::None, kNoAttrs, kContactsChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::Contact, "contact", TextType::None, kContactAttrs, kContactChildren, "SLN-SEQ-002",
                "SLN-ATT-003", "SLN-OCC-003"},
    ElementDecl{Element::Email, "email", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Webpage, "webpage", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Datasets, "datasets", TextType::None, kNoAttrs, kDatasetsChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::Dataset, "dataset", TextType::None, kNamedAttrs, kDatasetChildren, "SLN-SEQ-003",
                "SLN-ATT-004", "SLN-OCC-004"},
    ElementDecl{Element::Content, "content", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Images, "images", TextType::None, kNoAttrs, kImagesChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::Image, "image", TextType::None, kNamedAttrs, kImageChildren, "SLN-SEQ-004", "SLN-ATT-005",
                "SLN-OCC-005"},
    ElementDecl{Element::Url, "url", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::ImageData, "data", TextType::DataUri, kDimensionAttrs, kNoChildren, "", "SLN-ATT-006", ""},
    ElementDecl{Element::Thumbnail, "thumbnail", TextType::DataUri, kDimensionAttrs, kNoChildren, "",
                "SLN-ATT-006", ""},
    ElementDecl{Element::Videos, "videos", TextType::None, kNoAttrs, kVideosChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::Video, "video", TextType::None, kNamedAttrs, kVideoChildren, "SLN-SEQ-005", "SLN-ATT-007",
                "SLN-OCC-006"},
    ElementDecl{Element::VideoData, "data", TextType::DataUri, kNoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::Todos, "todos", TextType::None, kNoAttrs, kTodosChildren, "", "", "SLN-OCC-007"},
    ElementDecl{Element::Todo, "todo", TextType::NonEmpty, kTodoAttrs, kNoChildren, "", "", ""},
    ElementDecl{Element::OtherNotes, "othernotes", TextType::None, kNoAttrs, kOtherNotesChildren, "", "",
                "SLN-OCC-007"},
    ElementDecl{Element::Note, "note", TextType::String, kNoAttrs, kNoChildren, "", "", ""},
};

constexpr bool decls_are_indexed() {
    for (std::size_t i = 0; i < kDecls.size(); ++i) {
        if (static_cast<std::size_t>(kDecls[i].id) != i) {
            return false;
        }
    }
    return true;
}
static_assert(decls_are_indexed());

const ElementDecl& decl(Element e) { return kDecls[static_cast<std::size_t>(e)]; }

std::string_view lexical_rule(AttrType type) {
    switch (type) {
    case AttrType::NonEmpty:
        return "SLN-LEX-002";
    case AttrType::Date:
        return "SLN-LEX-001";
    case AttrType::Dimension:
        return "SLN-LEX-004";
    case AttrType::Boolean:
        return "SLN-LEX-006";
    case AttrType::String:
        break;
    }
    return "";
}

// 0 when the text is not a dimension.
std::uint32_t parse_dimension(std::string_view text) {
    if (text.empty() || text.size() > 4 || text[0] < '1' || text[0] > '9') {
        return 0;
    }
    std::uint32_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            return 0;
        }
        value = value * 10 + static_cast<std::uint32_t>(c - '0');
    }
    return value <= kMaxImageSide ? value : 0;
}

bool lexically_valid(AttrType type, std::string_view value) {
    switch (type) {
    case AttrType::String:
        return true;
    case AttrType::NonEmpty:
        return !value.empty();
    case AttrType::Date:
        return Date::try_parse(value).has_value();
    case AttrType::Dimension:
        return parse_dimension(value) != 0;
    case AttrType::Boolean:
        return value == "true" || value == "false" || value == "1" || value == "0";
    }
    return false;
}

std::string quote_value(std::string_view text, std::size_t limit = 40) {
    if (text.size() <= limit) {
        return "'" + std::string(text) + "'";
    }
    return "'" + std::string(text.substr(0, limit)) + "...'";
}

constexpr std::size_t kMaxParticles = 9;
constexpr std::size_t kMaxDateText = 64;

struct Frame {
    const ElementDecl* decl = nullptr;
    std::string path;
    std::array<std::uint32_t, kMaxParticles> counts{};
    std::size_t cursor = 0;
    std::vector<std::pair<std::string, std::uint32_t>> siblings;
    bool has_text = false;
    bool stray_text_reported = false;
    std::string small_text;
    bool text_overflow = false;
    std::optional<media::DataUriChecker> data_uri;
    std::uint32_t data_width = 0;
    std::uint32_t data_height = 0;
    std::uint32_t thumb_width = 0;
    std::uint32_t thumb_height = 0;
};

} // namespace

struct DocumentValidator::State {
    ValidatorOptions options;
    std::vector<Frame> frames;
    std::vector<Finding> findings;

    void report(std::string_view rule_id, const std::string& path, std::string message, xml::Position where) {
        const Rule* rule = find_rule(rule_id);
        assert(rule != nullptr);
        Severity severity = rule->severity;
        if (options.lenient && rule->construct == Construct::UnknownContent) {
            severity = Severity::Warning;
        }
        findings.push_back({std::string(rule_id), path, severity, std::move(message), where.line, where.column});
    }

    static std::string child_path(Frame& parent, std::string_view local) {
        std::uint32_t position = 1;
        auto it = std::find_if(parent.siblings.begin(), parent.siblings.end(),
                               [&](const auto& s) { return s.first == local; });
        if (it == parent.siblings.end()) {
            parent.siblings.emplace_back(std::string(local), 1);
        } else {
            position = ++it->second;
        }
        std::string path = parent.path + "/" + std::string(local);
        if (position > 1) {
            path += "[" + std::to_string(position) + "]";
        }
        return path;
    }

    void check_attributes(const xml::PullParser& p, Frame& frame, bool root) {
        const ElementDecl& d = *frame.decl;
        std::uint32_t width = 0;
        std::uint32_t height = 0;
        for (const auto& attr : p.attributes()) {
            if (!attr.ns.empty()) {
                if (root && attr.ns == xml::kXsiNamespace && attr.local == "schemaLocation") {
                    continue;
                }
                report("SLN-UNK-002", frame.path,
                       "attribute '" + attr.prefix + ":" + attr.local + "' is not declared for <" +
                           std::string(d.name) + ">",
                       p.position());
                continue;
            }
            const auto ad = std::find_if(d.attributes.begin(), d.attributes.end(),
                                         [&](const AttributeDecl& a) { return a.name == attr.local; });
            if (ad == d.attributes.end()) {
                report("SLN-UNK-002", frame.path,
                       "attribute '" + attr.local + "' is not declared for <" + std::string(d.name) + ">",
                       p.position());
                continue;
            }
            if (!lexically_valid(ad->type, attr.value)) {
                report(lexical_rule(ad->type), frame.path,
                       "attribute '" + attr.local + "' has invalid value " + quote_value(attr.value), p.position());
                continue;
            }
            if (ad->type == AttrType::Dimension) {
                (attr.local == "width" ? width : height) = parse_dimension(attr.value);
            }
        }
        for (const auto& ad : d.attributes) {
            if (ad.required && p.find_attribute("", ad.name) == nullptr) {
                report(d.attribute_rule, frame.path, "missing required attribute '" + std::string(ad.name) + "'",
                       p.position());
            }
        }
        if (d.id == Element::ImageData || d.id == Element::Thumbnail) {
            Frame& image = frames.back();
            if (d.id == Element::ImageData) {
                image.data_width = width;
                image.data_height = height;
            } else {
                image.thumb_width = width;
                image.thumb_height = height;
            }
        }
    }

    void start(const xml::PullParser& p) {
        Frame frame;
        const std::string_view local = p.local_name();
        if (frames.empty()) {
            frame.path = "/" + std::string(local);
            if (p.ns() != kNamespace || local != "sln") {
                report("SLN-NS-001", frame.path,
                       "root element <" + std::string(p.qname()) + "> in namespace '" + std::string(p.ns()) +
                           "' is not <sln> in '" + std::string(kNamespace) + "'",
                       p.position());
            } else {
                frame.decl = &decl(Element::Sln);
                check_attributes(p, frame, true);
            }
            frames.push_back(std::move(frame));
            return;
        }

        Frame& parent = frames.back();
        if (parent.decl == nullptr) {
            frame.path = parent.path + "/" + std::string(local);
            frames.push_back(std::move(frame));
            return;
        }
        frame.path = child_path(parent, local);
        const ElementDecl& pd = *parent.decl;
        if (pd.text != TextType::None) {
            report("SLN-UNK-001", frame.path,
                   "element <" + std::string(local) + "> is not allowed inside text-only <" + std::string(pd.name) +
                       ">",
                   p.position());
            frames.push_back(std::move(frame));
            return;
        }

        std::size_t index = 0;
        while (index < pd.children.size() && decl(pd.children[index].element).name != local) {
            ++index;
        }
        const bool known = index < pd.children.size();
        if (p.ns() != kNamespace) {
            report("SLN-NS-002", frame.path,
                   "element <" + std::string(p.qname()) + "> is not qualified with the SLN namespace", p.position());
        } else if (!known) {
            report("SLN-UNK-001", frame.path,
                   "element <" + std::string(local) + "> is not allowed in <" + std::string(pd.name) + ">",
                   p.position());
        }
        if (!known) {
            frames.push_back(std::move(frame));
            return;
        }

        const Particle& particle = pd.children[index];
        std::uint32_t& count = parent.counts[index];
        const bool full = particle.max != kUnbounded && count >= particle.max;
        if (full) {
            report(pd.occurrence_rule, frame.path,
                   "<" + std::string(local) + "> may appear at most " + std::to_string(particle.max) +
                       " time(s) in <" + std::string(pd.name) + ">",
                   p.position());
        } else if (index < parent.cursor) {
            report(pd.sequence_rule, frame.path,
                   "<" + std::string(local) + "> must come before <" +
                       std::string(decl(pd.children[parent.cursor].element).name) + "> in <" +
                       std::string(pd.name) + ">",
                   p.position());
        }
        parent.cursor = std::max(parent.cursor, index);
        ++count;

        frame.decl = &decl(particle.element);
        if (frame.decl->text == TextType::DataUri) {
            frame.data_uri.emplace();
        }
        check_attributes(p, frame, false);
        frames.push_back(std::move(frame));
    }

    void text(const xml::PullParser& p) {
        if (frames.empty() || frames.back().decl == nullptr) {
            return;
        }
        Frame& f = frames.back();
        const std::string_view chunk = p.text();
        switch (f.decl->text) {
        case TextType::None:
            if (!f.stray_text_reported && !p.text_is_whitespace()) {
                f.stray_text_reported = true;
                report("SLN-UNK-003", f.path,
                       "character data is not allowed in <" + std::string(f.decl->name) + ">", p.position());
            }
            break;
        case TextType::String:
        case TextType::NonEmpty:
            f.has_text = f.has_text || !chunk.empty();
            break;
        case TextType::Date:
            f.has_text = true;
            if (f.small_text.size() + chunk.size() > kMaxDateText) {
                f.text_overflow = true;
            } else {
                f.small_text.append(chunk);
            }
            break;
        case TextType::DataUri:
            f.data_uri->feed(chunk);
            break;
        }
    }

    void end(const xml::PullParser& p) {
        Frame f = std::move(frames.back());
        frames.pop_back();
        if (f.decl == nullptr) {
            return;
        }
        const ElementDecl& d = *f.decl;
        const xml::Position where = p.position();
        switch (d.text) {
        case TextType::None:
            for (std::size_t i = 0; i < d.children.size(); ++i) {
                const Particle& particle = d.children[i];
                if (f.counts[i] < particle.min) {
                    report(d.occurrence_rule, f.path,
                           "<" + std::string(d.name) + "> is missing <" + std::string(decl(particle.element).name) +
                               ">",
                           where);
                }
            }
            break;
        case TextType::String:
            break;
        case TextType::NonEmpty:
            if (!f.has_text) {
                report("SLN-LEX-007", f.path, "<" + std::string(d.name) + "> must not be empty", where);
            }
            break;
        case TextType::Date:
            if (f.text_overflow || !Date::try_parse(f.small_text)) {
                report("SLN-LEX-001", f.path, quote_value(f.small_text) + " is not a YYYY-MM-DD calendar date", where);
            }
            break;
        case TextType::DataUri:
            if (const std::string error = f.data_uri->finish(); !error.empty()) {
                report("SLN-LEX-003", f.path, error, where);
            }
            break;
        }
        if (d.id == Element::Purpose && !f.has_text) {
            report("SLN-ADV-001", f.path, "purpose is empty", where);
        }
        if (d.id == Element::Image && f.data_width != 0 && f.data_height != 0 && f.thumb_width != 0 &&
            f.thumb_height != 0 && (f.thumb_width > f.data_width || f.thumb_height > f.data_height)) {
            report("SLN-LEX-005", f.path,
                   "thumbnail " + std::to_string(f.thumb_width) + "x" + std::to_string(f.thumb_height) +
                       " exceeds image " + std::to_string(f.data_width) + "x" + std::to_string(f.data_height),
                   where);
        }
    }
};

DocumentValidator::DocumentValidator(ValidatorOptions options) : state_(std::make_unique<State>()) {
    state_->options = options;
}

DocumentValidator::~DocumentValidator() = default;
DocumentValidator::DocumentValidator(DocumentValidator&&) noexcept = default;
DocumentValidator& DocumentValidator::operator=(DocumentValidator&&) noexcept = default;

void DocumentValidator::consume(const xml::PullParser& parser, xml::Event event) {
    switch (event) {
    case xml::Event::StartElement:
        state_->start(parser);
        break;
    case xml::Event::Text:
        state_->text(parser);
        break;
    case xml::Event::EndElement:
        state_->end(parser);
        break;
    case xml::Event::EndDocument:
        break;
    }
}

const std::vector<Finding>& DocumentValidator::findings() const { return state_->findings; }

std::optional<Element> DocumentValidator::current() const {
    if (state_->frames.empty() || state_->frames.back().decl == nullptr) {
        return std::nullopt;
    }
    return state_->frames.back().decl->id;
}

ValidationReport validate(std::istream& source, ValidatorOptions options) {
    xml::PullParser parser(source);
    DocumentValidator validator(options);
    try {
        while (true) {
            const xml::Event event = parser.next();
            validator.consume(parser, event);
            if (event == xml::Event::EndDocument) {
                break;
            }
        }
    } catch (const xml::XmlError& error) {
        throw detail::to_parse_error(error);
    }
    return ValidationReport{validator.findings()};
}

ValidationReport validate(std::string_view document, ValidatorOptions options) {
    detail::ViewStream in(document);
    return validate(in, options);
}

ValidationReport validate(const Notebook& nb, ValidatorOptions options) {
    const std::string text = serialize_notebook(nb);
    return validate(std::string_view(text), options);
}

} // namespace sln::schema
