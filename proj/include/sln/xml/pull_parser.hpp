#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sln::xml {

inline constexpr std::string_view kXsiNamespace = "http://www.w3.org/2001/XMLSchema-instance";
inline constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";
inline constexpr std::string_view kXmlnsNamespace = "http://www.w3.org/2000/xmlns/";

enum class ErrorKind { NotWellFormed, BadEncoding, Io };

struct Position {
    std::uint64_t line = 1;
    std::uint64_t column = 1;
};

class XmlError : public std::runtime_error {
public:
    XmlError(ErrorKind kind, Position where, std::string detail);

    ErrorKind kind() const { return kind_; }
    Position where() const { return where_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    Position where_;
    std::string detail_;
};

struct Attribute {
    std::string ns;     // empty for unprefixed attributes
    std::string prefix;
    std::string local;
    std::string value;  // references expanded, whitespace normalized
};

enum class Event { StartElement, EndElement, Text, EndDocument };

struct ParserOptions {
    std::size_t buffer_size = std::size_t{1} << 20;
    /// Upper bound on the size of one Text event; long character data arrives
    /// as a series of Text events.
    std::size_t text_chunk = std::size_t{64} << 10;
};

/// Forward-only, namespace-aware XML 1.0 reader over a byte stream.
///
/// Memory use is bounded by the buffer size plus the largest start tag;
/// character data is handed out in chunks and never accumulated.
/// Namespace declarations are consumed and not reported as attributes.
/// Only UTF-8 input is accepted. DOCTYPE declarations are rejected.
class PullParser {
public:
    explicit PullParser(std::istream& in, ParserOptions options = {});

    Event next();

    /// Namespace URI of the current start/end element (empty when unqualified).
    std::string_view ns() const { return cur_ns_; }
    std::string_view local_name() const { return cur_local_; }
    std::string_view qname() const { return cur_qname_; }
    const std::vector<Attribute>& attributes() const { return attrs_; }
    const Attribute* find_attribute(std::string_view ns, std::string_view local) const;

    /// Character data of the current Text event.
    std::string_view text() const { return text_; }
    bool text_is_whitespace() const;

    /// Where the current event starts.
    Position position() const { return event_pos_; }
    /// Number of open elements, counting the current start element.
    std::size_t depth() const { return stack_.size(); }
    std::uint64_t bytes_consumed() const { return consumed_ + pos_; }

private:
    struct Open {
        std::string qname;
        std::string ns;
        std::string local;
        std::size_t bindings = 0;
    };
    struct Binding {
        std::string prefix;
        std::string uri;
    };

    [[noreturn]] void fail(std::string detail) const;
    [[noreturn]] void fail_encoding(std::string detail) const;

    bool fill();
    bool ensure(std::size_t n);
    bool at_end();
    int peek();
    int get();
    char32_t get_char();
    bool starts_with(std::string_view s);
    void expect(std::string_view s);
    bool skip_space();

    void read_declaration();
    std::string read_name();
    void read_start_tag();
    void read_end_tag();
    void skip_comment();
    void skip_pi();
    void read_reference(std::string& out);
    void read_attribute_value(std::string& out);
    bool read_text();
    bool read_cdata();
    void skip_outside_root();
    const std::string* resolve(std::string_view prefix) const;

    std::istream& in_;
    ParserOptions options_;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    std::uint64_t consumed_ = 0;
    bool eof_ = false;
    Position here_;
    Position event_pos_;

    std::vector<Open> stack_;
    std::vector<Binding> bindings_;
    bool started_ = false;
    bool seen_root_ = false;
    bool pending_end_ = false;
    bool in_cdata_ = false;
    bool done_ = false;

    std::string cur_ns_;
    std::string cur_local_;
    std::string cur_qname_;
    std::vector<Attribute> attrs_;
    std::vector<std::pair<std::string, std::string>> raw_attrs_;
    std::string text_;
};

} // namespace sln::xml
