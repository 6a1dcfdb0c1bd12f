#pragma once

#include "sln/model.hpp"
#include "sln/xml/pull_parser.hpp"

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sln::schema {

enum class Construct {
    SequenceOrder,
    RequiredAttribute,
    Occurrence,
    SimpleTypeLexical,
    NamespaceQualified,
    UnknownContent,
};

enum class Severity { Error, Warning };

/// Where a rule comes from: the published schema excerpt, the structure of the
/// published sample document, or a constraint this toolkit adds for the parts
/// of the schema that were never published.
enum class Basis { PublishedSchema, SampleDocument, ExcerptDerived };

struct Rule {
    std::string_view id;
    Construct construct;
    Severity severity;
    Basis basis;
    std::string_view description;
    std::string_view excerpt;
};

class UnknownRule : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every implemented rule, in a stable order. Ids never change meaning.
std::span<const Rule> rule_catalogue();
const Rule* find_rule(std::string_view id);
/// Throws UnknownRule.
std::string explain(std::string_view id);

std::string_view construct_name(Construct construct);
std::string_view severity_name(Severity severity);

struct Finding {
    std::string rule_id;
    std::string path;
    Severity severity = Severity::Error;
    std::string message;
    std::uint64_t line = 0;
    std::uint64_t column = 0;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool valid() const;
    std::size_t count(Severity severity) const;
};

/// One line per finding: `severity rule_id path message`.
std::string to_text(const ValidationReport& report);
/// `{"valid": ..., "findings": [{"rule_id", "path", "severity", "message"}...]}`
std::string to_json(const ValidationReport& report);

struct ValidatorOptions {
    /// Report unknown elements, attributes and stray text as warnings.
    bool lenient = false;
};

/// SLN elements as declared in the schema. Elements that share a name but
/// differ by context (image `data` vs video `data`) are distinct.
enum class Element {
    Sln,
    Website,
    Purpose,
    Date,
    Related,
    RelUri,
    Notes,
    Contacts,
    Contact,
    Email,
    Webpage,
    Datasets,
    Dataset,
    Content,
    Images,
    Image,
    Url,
    ImageData,
    Thumbnail,
    Videos,
    Video,
    VideoData,
    Todos,
    Todo,
    OtherNotes,
    Note,
};

/// Streaming rule engine. Feed it every event of a PullParser in order.
/// Findings come out in document order. Memory use does not depend on the
/// size of character data.
class DocumentValidator {
public:
    explicit DocumentValidator(ValidatorOptions options = {});
    ~DocumentValidator();
    DocumentValidator(DocumentValidator&&) noexcept;
    DocumentValidator& operator=(DocumentValidator&&) noexcept;

    void consume(const xml::PullParser& parser, xml::Event event);

    const std::vector<Finding>& findings() const;
    /// Declaration of the innermost open element after the last event, or
    /// nullopt when that element is unknown or inside a skipped subtree.
    std::optional<Element> current() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

/// Throws ParseError (NotWellFormed or BadEncoding) when the input is not a
/// well-formed UTF-8 XML document.
ValidationReport validate(std::istream& source, ValidatorOptions options = {});
ValidationReport validate(std::string_view document, ValidatorOptions options = {});
/// Validates the canonical serialization of `nb`.
ValidationReport validate(const Notebook& nb, ValidatorOptions options = {});

} // namespace sln::schema
