#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sln {

class ParseError : public std::runtime_error {
public:
    enum class Kind {
        NotWellFormed,
        WrongRootNamespace,
        UnknownElement,
        BadAttribute,
        BadEncoding,
        /// Well-formed, known elements in a structure the schema does not allow
        /// (order, occurrence, or a malformed simple value in element text).
        InvalidContent,
    };

    ParseError(Kind kind, std::uint64_t line, std::uint64_t column, std::string detail);

    Kind kind() const { return kind_; }
    std::uint64_t line() const { return line_; }
    std::uint64_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    Kind kind_;
    std::uint64_t line_;
    std::uint64_t column_;
    std::string detail_;
};

std::string_view kind_name(ParseError::Kind kind);

} // namespace sln
