#include "sln/xml/pull_parser.hpp"

#include "sln/utf8.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

namespace sln::xml {

namespace {

constexpr char32_t kEof = 0xFFFFFFFF;

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char32_t c) {
    if (c < 0x80) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
    }
    return (c >= 0xC0 && c <= 0xD6) || (c >= 0xD8 && c <= 0xF6) || (c >= 0xF8 && c <= 0x2FF) ||
           (c >= 0x370 && c <= 0x37D) || (c >= 0x37F && c <= 0x1FFF) || (c >= 0x200C && c <= 0x200D) ||
           (c >= 0x2070 && c <= 0x218F) || (c >= 0x2C00 && c <= 0x2FEF) || (c >= 0x3001 && c <= 0xD7FF) ||
           (c >= 0xF900 && c <= 0xFDCF) || (c >= 0xFDF0 && c <= 0xFFFD) || (c >= 0x10000 && c <= 0xEFFFF);
}

bool is_name_char(char32_t c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.' || c == 0xB7 ||
           (c >= 0x300 && c <= 0x36F) || (c >= 0x203F && c <= 0x2040);
}

// Bytes that can be copied straight into character data.
constexpr std::array<bool, 256> make_plain(bool cdata) {
    std::array<bool, 256> table{};
    for (int c = 0x20; c < 0x80; ++c) {
        table[static_cast<std::size_t>(c)] = true;
    }
    table['\t'] = true;
    table[']'] = false;
    if (!cdata) {
        table['<'] = false;
        table['&'] = false;
    }
    return table;
}

constexpr auto kPlainText = make_plain(false);
constexpr auto kPlainCdata = make_plain(true);

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

const std::string kXmlNs(kXmlNamespace);

std::string format_error(Position where, const std::string& detail) {
    return std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + detail;
}

} // namespace

XmlError::XmlError(ErrorKind kind, Position where, std::string detail)
    : std::runtime_error(format_error(where, detail)), kind_(kind), where_(where), detail_(std::move(detail)) {}

PullParser::PullParser(std::istream& in, ParserOptions options)
    : in_(in), options_(options), buf_(std::max<std::size_t>(options.buffer_size, 64)) {
    options_.text_chunk = std::max<std::size_t>(options_.text_chunk, 16);
}

void PullParser::fail(std::string detail) const {
    throw XmlError(ErrorKind::NotWellFormed, here_, std::move(detail));
}

void PullParser::fail_encoding(std::string detail) const {
    throw XmlError(ErrorKind::BadEncoding, here_, std::move(detail));
}

bool PullParser::fill() {
    if (eof_) {
        return false;
    }
    if (pos_ > 0) {
        std::memmove(buf_.data(), buf_.data() + pos_, end_ - pos_);
        consumed_ += pos_;
        end_ -= pos_;
        pos_ = 0;
    }
    if (end_ == buf_.size()) {
        buf_.resize(buf_.size() * 2);
    }
    in_.read(buf_.data() + end_, static_cast<std::streamsize>(buf_.size() - end_));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (in_.bad()) {
        throw XmlError(ErrorKind::Io, here_, "read failed");
    }
    if (got == 0) {
        eof_ = true;
        return false;
    }
    end_ += got;
    return true;
}

bool PullParser::ensure(std::size_t n) {
    while (end_ - pos_ < n) {
        if (!fill()) {
            return false;
        }
    }
    return true;
}

bool PullParser::at_end() { return pos_ == end_ && !fill(); }

int PullParser::peek() {
    if (pos_ == end_ && !fill()) {
        return -1;
    }
    return static_cast<unsigned char>(buf_[pos_]);
}

int PullParser::get() {
    int c = peek();
    if (c < 0) {
        return c;
    }
    ++pos_;
    if (c == '\r') {
        if (peek() == '\n') {
            ++pos_;
        }
        c = '\n';
    }
    if (c == '\n') {
        ++here_.line;
        here_.column = 1;
    } else if ((c & 0xC0) != 0x80) {
        ++here_.column;
    }
    return c;
}

char32_t PullParser::get_char() {
    const int c = get();
    if (c < 0) {
        return kEof;
    }
    char32_t cp = static_cast<char32_t>(c);
    if (c >= 0x80) {
        std::array<char, 4> seq{static_cast<char>(c)};
        std::size_t len = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
        } else {
            fail_encoding("malformed UTF-8 sequence");
        }
        for (std::size_t i = 1; i < len; ++i) {
            const int d = peek();
            if (d < 0 || (d & 0xC0) != 0x80) {
                fail_encoding("malformed UTF-8 sequence");
            }
            seq[i] = static_cast<char>(get());
        }
        std::size_t p = 0;
        const auto decoded = utf8::decode_one(std::string_view(seq.data(), len), p);
        if (!decoded) {
            fail_encoding("malformed UTF-8 sequence");
        }
        cp = *decoded;
    }
    if (!utf8::is_xml_char(cp)) {
        fail("character U+" + std::to_string(static_cast<std::uint32_t>(cp)) + " is not allowed in XML");
    }
    return cp;
}

bool PullParser::starts_with(std::string_view s) {
    return ensure(s.size()) && std::memcmp(buf_.data() + pos_, s.data(), s.size()) == 0;
}

void PullParser::expect(std::string_view s) {
    if (!starts_with(s)) {
        fail("expected '" + std::string(s) + "'");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        get();
    }
}

bool PullParser::skip_space() {
    bool any = false;
    while (is_space(peek())) {
        get();
        any = true;
    }
    return any;
}

void PullParser::read_declaration() {
    if (ensure(2)) {
        const auto b0 = static_cast<unsigned char>(buf_[pos_]);
        const auto b1 = static_cast<unsigned char>(buf_[pos_ + 1]);
        if ((b0 == 0xFE && b1 == 0xFF) || (b0 == 0xFF && b1 == 0xFE) || b0 == 0 || b1 == 0) {
            fail_encoding("only UTF-8 input is supported");
        }
    }
    if (starts_with("\xEF\xBB\xBF")) {
        pos_ += 3;
    }
    if (!starts_with("<?xml") || !ensure(6) || !is_space(buf_[pos_ + 5])) {
        return;
    }
    event_pos_ = here_;
    expect("<?xml");
    std::vector<std::pair<std::string, std::string>> fields;
    while (true) {
        const bool spaced = skip_space();
        if (starts_with("?>")) {
            expect("?>");
            break;
        }
        if (!spaced) {
            fail("malformed XML declaration");
        }
        std::string name = read_name();
        skip_space();
        expect("=");
        skip_space();
        const int quote = get();
        if (quote != '"' && quote != '\'') {
            fail("expected quoted value in XML declaration");
        }
        std::string value;
        for (int c = get(); c != quote; c = get()) {
            if (c < 0 || c == '<') {
                fail("malformed XML declaration");
            }
            value.push_back(static_cast<char>(c));
        }
        fields.emplace_back(std::move(name), std::move(value));
    }
    std::size_t i = 0;
    if (i >= fields.size() || fields[i].first != "version") {
        fail("XML declaration must start with a version");
    }
    if (fields[i++].second != "1.0") {
        fail("only XML 1.0 is supported");
    }
    if (i < fields.size() && fields[i].first == "encoding") {
        if (!iequals(fields[i].second, "utf-8")) {
            fail_encoding("unsupported encoding '" + fields[i].second + "'");
        }
        ++i;
    }
    if (i < fields.size() && fields[i].first == "standalone") {
        if (fields[i].second != "yes" && fields[i].second != "no") {
            fail("standalone must be 'yes' or 'no'");
        }
        ++i;
    }
    if (i != fields.size()) {
        fail("unexpected '" + fields[i].first + "' in XML declaration");
    }
}

std::string PullParser::read_name() {
    auto peek_cp = [this](std::size_t& len) -> char32_t {
        if (!ensure(1)) {
            len = 0;
            return kEof;
        }
        const auto c = static_cast<unsigned char>(buf_[pos_]);
        if (c < 0x80) {
            len = 1;
            return c;
        }
        ensure(4);
        std::size_t p = pos_;
        const auto cp = utf8::decode_one(std::string_view(buf_.data(), end_), p);
        if (!cp) {
            fail_encoding("malformed UTF-8 sequence");
        }
        len = p - pos_;
        return *cp;
    };
    std::string name;
    std::size_t len = 0;
    char32_t c = peek_cp(len);
    if (c == kEof || !is_name_start(c)) {
        fail("expected a name");
    }
    do {
        name.append(buf_.data() + pos_, len);
        for (std::size_t k = 0; k < len; ++k) {
            get();
        }
        c = peek_cp(len);
    } while (c != kEof && is_name_char(c));
    return name;
}

void PullParser::read_reference(std::string& out) {
    expect("&");
    if (peek() == '#') {
        get();
        const bool hex = peek() == 'x';
        if (hex) {
            get();
        }
        std::uint32_t value = 0;
        int digits = 0;
        for (int c = get();; c = get()) {
            if (c == ';') {
                break;
            }
            int d = -1;
            if (c >= '0' && c <= '9') {
                d = c - '0';
            } else if (hex && c >= 'a' && c <= 'f') {
                d = c - 'a' + 10;
            } else if (hex && c >= 'A' && c <= 'F') {
                d = c - 'A' + 10;
            }
            if (d < 0) {
                fail("malformed character reference");
            }
            value = value * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
            if (++digits > 8 || value > 0x10FFFF) {
                fail("character reference out of range");
            }
        }
        if (digits == 0 || !utf8::is_xml_char(value)) {
            fail("reference to a character that is not allowed in XML");
        }
        utf8::append(out, value);
        return;
    }
    const std::string name = read_name();
    expect(";");
    if (name == "lt") {
        out.push_back('<');
    } else if (name == "gt") {
        out.push_back('>');
    } else if (name == "amp") {
        out.push_back('&');
    } else if (name == "apos") {
        out.push_back('\'');
    } else if (name == "quot") {
        out.push_back('"');
    } else {
        fail("undefined entity '&" + name + ";'");
    }
}

void PullParser::read_attribute_value(std::string& out) {
    const int quote = get();
    if (quote != '"' && quote != '\'') {
        fail("expected quoted attribute value");
    }
    while (true) {
        const int c = peek();
        if (c < 0) {
            fail("unexpected end of document in attribute value");
        }
        if (c == quote) {
            get();
            return;
        }
        if (c == '<') {
            fail("'<' is not allowed in attribute values");
        }
        if (c == '&') {
            read_reference(out);
            continue;
        }
        char32_t cp = get_char();
        if (cp == '\t' || cp == '\n') {
            cp = ' ';
        }
        utf8::append(out, cp);
    }
}

const std::string* PullParser::resolve(std::string_view prefix) const {
    if (prefix == "xml") {
        return &kXmlNs;
    }
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
        if (it->prefix == prefix) {
            return &it->uri;
        }
    }
    return nullptr;
}

void PullParser::read_start_tag() {
    event_pos_ = here_;
    expect("<");
    Open open;
    open.qname = read_name();
    raw_attrs_.clear();
    bool empty = false;
    while (true) {
        const bool spaced = skip_space();
        const int c = peek();
        if (c == '/') {
            get();
            if (get() != '>') {
                fail("expected '>' after '/'");
            }
            empty = true;
            break;
        }
        if (c == '>') {
            get();
            break;
        }
        if (c < 0) {
            fail("unexpected end of document in start tag");
        }
        if (!spaced) {
            fail("expected whitespace before attribute");
        }
        std::string name = read_name();
        skip_space();
        if (get() != '=') {
            fail("expected '=' after attribute name '" + name + "'");
        }
        skip_space();
        std::string value;
        read_attribute_value(value);
        for (const auto& [existing, unused] : raw_attrs_) {
            if (existing == name) {
                fail("duplicate attribute '" + name + "'");
            }
        }
        raw_attrs_.emplace_back(std::move(name), std::move(value));
    }

    for (const auto& [name, value] : raw_attrs_) {
        if (name == "xmlns") {
            bindings_.push_back({"", value});
            ++open.bindings;
        } else if (name.rfind("xmlns:", 0) == 0) {
            std::string prefix = name.substr(6);
            if (value.empty()) {
                fail("namespace prefix '" + prefix + "' cannot be undeclared");
            }
            if (prefix == "xmlns" || (prefix == "xml") != (value == kXmlNamespace)) {
                fail("illegal binding for prefix '" + prefix + "'");
            }
            bindings_.push_back({std::move(prefix), value});
            ++open.bindings;
        }
    }

    auto split = [this](std::string_view qname, std::string_view& prefix, std::string_view& local) {
        const auto colon = qname.find(':');
        if (colon == std::string_view::npos) {
            prefix = {};
            local = qname;
            return;
        }
        prefix = qname.substr(0, colon);
        local = qname.substr(colon + 1);
        if (prefix.empty() || local.empty() || local.find(':') != std::string_view::npos) {
            fail("malformed qualified name '" + std::string(qname) + "'");
        }
    };

    std::string_view prefix;
    std::string_view local;
    split(open.qname, prefix, local);
    if (prefix == "xmlns") {
        fail("element names cannot use the xmlns prefix");
    }
    const std::string* uri = resolve(prefix);
    if (!prefix.empty() && uri == nullptr) {
        fail("unbound namespace prefix '" + std::string(prefix) + "'");
    }
    open.ns = uri ? *uri : std::string();
    open.local = std::string(local);

    attrs_.clear();
    for (auto& [name, value] : raw_attrs_) {
        if (name == "xmlns" || name.rfind("xmlns:", 0) == 0) {
            continue;
        }
        std::string_view attr_prefix;
        std::string_view attr_local;
        split(name, attr_prefix, attr_local);
        Attribute attr;
        if (!attr_prefix.empty()) {
            const std::string* attr_uri = resolve(attr_prefix);
            if (attr_uri == nullptr) {
                fail("unbound namespace prefix '" + std::string(attr_prefix) + "'");
            }
            attr.ns = *attr_uri;
            attr.prefix = std::string(attr_prefix);
        }
        attr.local = std::string(attr_local);
        for (const auto& seen : attrs_) {
            if (seen.ns == attr.ns && seen.local == attr.local) {
                fail("duplicate attribute '" + name + "'");
            }
        }
        attr.value = std::move(value);
        attrs_.push_back(std::move(attr));
    }

    cur_qname_ = open.qname;
    cur_ns_ = open.ns;
    cur_local_ = open.local;
    stack_.push_back(std::move(open));
    pending_end_ = empty;
}

void PullParser::read_end_tag() {
    expect("</");
    const std::string name = read_name();
    skip_space();
    if (get() != '>') {
        fail("expected '>' to close end tag");
    }
    if (name != stack_.back().qname) {
        fail("end tag </" + name + "> does not match <" + stack_.back().qname + ">");
    }
    Open& open = stack_.back();
    cur_qname_ = std::move(open.qname);
    cur_ns_ = std::move(open.ns);
    cur_local_ = std::move(open.local);
    attrs_.clear();
    bindings_.resize(bindings_.size() - open.bindings);
    stack_.pop_back();
}

void PullParser::skip_comment() {
    expect("<!--");
    while (true) {
        if (starts_with("--")) {
            if (starts_with("-->")) {
                expect("-->");
                return;
            }
            fail("'--' is not allowed inside comments");
        }
        if (get_char() == kEof) {
            fail("unterminated comment");
        }
    }
}

void PullParser::skip_pi() {
    expect("<?");
    const std::string target = read_name();
    if (iequals(target, "xml")) {
        fail("the XML declaration is only allowed at the start of the document");
    }
    while (!starts_with("?>")) {
        if (get_char() == kEof) {
            fail("unterminated processing instruction");
        }
    }
    expect("?>");
}

bool PullParser::read_text() {
    text_.clear();
    event_pos_ = here_;
    const std::size_t limit = options_.text_chunk;
    while (text_.size() < limit) {
        if (pos_ == end_ && !fill()) {
            break;
        }
        const char* data = buf_.data();
        const std::size_t stop = std::min(end_, pos_ + (limit - text_.size()));
        std::size_t i = pos_;
        while (i < stop && kPlainText[static_cast<unsigned char>(data[i])]) {
            ++i;
        }
        if (i > pos_) {
            text_.append(data + pos_, i - pos_);
            here_.column += i - pos_;
            pos_ = i;
            continue;
        }
        const char c = data[pos_];
        if (c == '<') {
            break;
        }
        if (c == '&') {
            read_reference(text_);
            continue;
        }
        if (c == ']') {
            if (starts_with("]]>")) {
                fail("']]>' is not allowed in character data");
            }
            get();
            text_.push_back(']');
            continue;
        }
        utf8::append(text_, get_char());
    }
    return !text_.empty();
}

bool PullParser::read_cdata() {
    text_.clear();
    event_pos_ = here_;
    const std::size_t limit = options_.text_chunk;
    while (text_.size() < limit) {
        if (at_end()) {
            fail("unterminated CDATA section");
        }
        const char* data = buf_.data();
        const std::size_t stop = std::min(end_, pos_ + (limit - text_.size()));
        std::size_t i = pos_;
        while (i < stop && kPlainCdata[static_cast<unsigned char>(data[i])]) {
            ++i;
        }
        if (i > pos_) {
            text_.append(data + pos_, i - pos_);
            here_.column += i - pos_;
            pos_ = i;
            continue;
        }
        if (data[pos_] == ']') {
            if (starts_with("]]>")) {
                expect("]]>");
                in_cdata_ = false;
                break;
            }
            get();
            text_.push_back(']');
            continue;
        }
        utf8::append(text_, get_char());
    }
    return !text_.empty();
}

void PullParser::skip_outside_root() {
    while (true) {
        if (at_end()) {
            return;
        }
        const int c = peek();
        if (is_space(c)) {
            get();
            continue;
        }
        if (c != '<') {
            fail("text is not allowed outside the root element");
        }
        event_pos_ = here_;
        if (starts_with("<!--")) {
            skip_comment();
        } else if (starts_with("<?")) {
            skip_pi();
        } else if (starts_with("<!DOCTYPE")) {
            fail("DOCTYPE declarations are not supported");
        } else if (starts_with("<!")) {
            fail("unexpected markup declaration");
        } else {
            return;
        }
    }
}

Event PullParser::next() {
    if (!started_) {
        started_ = true;
        read_declaration();
    }
    if (done_) {
        return Event::EndDocument;
    }
    if (pending_end_) {
        pending_end_ = false;
        attrs_.clear();
        bindings_.resize(bindings_.size() - stack_.back().bindings);
        stack_.pop_back();
        return Event::EndElement;
    }
    while (true) {
        if (in_cdata_) {
            if (read_cdata()) {
                return Event::Text;
            }
            continue;
        }
        if (stack_.empty()) {
            skip_outside_root();
            if (at_end()) {
                if (!seen_root_) {
                    fail("document has no root element");
                }
                done_ = true;
                return Event::EndDocument;
            }
            if (starts_with("</")) {
                fail("unexpected end tag");
            }
            if (seen_root_) {
                fail("content after the root element");
            }
            read_start_tag();
            seen_root_ = true;
            return Event::StartElement;
        }
        if (at_end()) {
            fail("unexpected end of document: <" + stack_.back().qname + "> is not closed");
        }
        if (peek() == '<') {
            event_pos_ = here_;
            if (starts_with("</")) {
                read_end_tag();
                return Event::EndElement;
            }
            if (starts_with("<!--")) {
                skip_comment();
                continue;
            }
            if (starts_with("<![CDATA[")) {
                expect("<![CDATA[");
                in_cdata_ = true;
                continue;
            }
            if (starts_with("<!")) {
                fail("markup declarations are not allowed in content");
            }
            if (starts_with("<?")) {
                skip_pi();
                continue;
            }
            read_start_tag();
            return Event::StartElement;
        }
        if (read_text()) {
            return Event::Text;
        }
    }
}

const Attribute* PullParser::find_attribute(std::string_view ns, std::string_view local) const {
    for (const auto& attr : attrs_) {
        if (attr.ns == ns && attr.local == local) {
            return &attr;
        }
    }
    return nullptr;
}

bool PullParser::text_is_whitespace() const {
    return std::all_of(text_.begin(), text_.end(), [](char c) { return is_space(c); });
}

} // namespace sln::xml
