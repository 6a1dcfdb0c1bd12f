#pragma once

// Internal helpers shared by the library's translation units.

#include "sln/parse_error.hpp"
#include "sln/xml/pull_parser.hpp"

#include <istream>
#include <streambuf>
#include <string_view>

namespace sln::detail {

ParseError to_parse_error(const xml::XmlError& error);

/// Read-only istream over a caller-owned buffer.
class ViewStream : public std::istream {
public:
    explicit ViewStream(std::string_view text) : std::istream(&buf_), buf_(text) {}

private:
    struct Buf : std::streambuf {
        explicit Buf(std::string_view text) {
            char* begin = const_cast<char*>(text.data());
            setg(begin, begin, begin + text.size());
        }
    };
    Buf buf_;
};

} // namespace sln::detail
