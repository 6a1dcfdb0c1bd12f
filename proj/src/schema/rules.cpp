#include "sln/schema.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>

namespace sln::schema {

namespace {

using C = Construct;
using S = Severity;
using B = Basis;

constexpr std::array kRules = {
    Rule{"SLN-NS-001", C::NamespaceQualified, S::Error, B::SampleDocument,
         "The root element must be 'sln' in the namespace http://umbra.nascom.nasa.gov/.",
         "<sln xmlns=\"http://umbra.nascom.nasa.gov/\">"},
    Rule{"SLN-NS-002", C::NamespaceQualified, S::Error, B::PublishedSchema,
         "Every element below the root must be qualified with the SLN namespace.",
         "<xsd:schema elementFormDefault=\"qualified\" targetNamespace=\"http://umbra.nascom.nasa.gov/\">"},

    Rule{"SLN-SEQ-001", C::SequenceOrder, S::Error, B::ExcerptDerived,
         "Children of 'website' must appear in the fixed order purpose, date, related, contacts, datasets, "
         "images, videos, todos, othernotes.",
         "<xsd:sequence> purpose date related contacts datasets images videos todos othernotes"},
    Rule{"SLN-SEQ-002", C::SequenceOrder, S::Error, B::PublishedSchema,
         "Children of 'contact' must appear in the fixed order email, webpage, notes.",
         "<xsd:sequence><xsd:element name=\"email\"/><xsd:element name=\"webpage\"/>"
         "<xsd:element name=\"notes\"/></xsd:sequence>"},
    Rule{"SLN-SEQ-003", C::SequenceOrder, S::Error, B::ExcerptDerived,
         "Children of 'dataset' must appear in the fixed order notes, content.",
         "<xsd:sequence> notes content"},
    Rule{"SLN-SEQ-004", C::SequenceOrder, S::Error, B::ExcerptDerived,
         "Children of 'image' must appear in the fixed order notes, url, data, thumbnail.",
         "<xsd:sequence> notes url? data thumbnail"},
    Rule{"SLN-SEQ-005", C::SequenceOrder, S::Error, B::ExcerptDerived,
         "Children of 'video' must appear in the fixed order notes, data.", "<xsd:sequence> notes data?"},

    Rule{"SLN-ATT-001", C::RequiredAttribute, S::Error, B::SampleDocument,
         "A 'website' element requires the attributes 'name' and 'location'.",
         "<website name=\"...\" location=\"...\">"},
    Rule{"SLN-ATT-002", C::RequiredAttribute, S::Error, B::SampleDocument,
         "A 'reluri' element requires the attribute 'value'.", "<reluri value=\"...\">"},
    Rule{"SLN-ATT-003", C::RequiredAttribute, S::Error, B::PublishedSchema,
         "A 'contact' element requires the attributes 'name' and 'surname'.",
         "<xsd:attribute use=\"required\" name=\"name\"/><xsd:attribute use=\"required\" name=\"surname\"/>"},
    Rule{"SLN-ATT-004", C::RequiredAttribute, S::Error, B::ExcerptDerived,
         "A 'dataset' element requires the attribute 'name'.", "<xsd:attribute use=\"required\" name=\"name\"/>"},
    Rule{"SLN-ATT-005", C::RequiredAttribute, S::Error, B::ExcerptDerived,
         "An 'image' element requires the attribute 'name'.", "<xsd:attribute use=\"required\" name=\"name\"/>"},
    Rule{"SLN-ATT-006", C::RequiredAttribute, S::Error, B::ExcerptDerived,
         "Image 'data' and 'thumbnail' elements require the attributes 'width' and 'height'.",
         "<xsd:attribute use=\"required\" name=\"width\"/><xsd:attribute use=\"required\" name=\"height\"/>"},
    Rule{"SLN-ATT-007", C::RequiredAttribute, S::Error, B::ExcerptDerived,
         "A 'video' element requires the attribute 'name'.", "<xsd:attribute use=\"required\" name=\"name\"/>"},

    Rule{"SLN-OCC-001", C::Occurrence, S::Error, B::SampleDocument,
         "A 'website' holds exactly one 'purpose' and one 'date', and each group element at most once.",
         "<xsd:element name=\"purpose\"/><xsd:element name=\"date\"/> ... minOccurs=\"0\""},
    Rule{"SLN-OCC-002", C::Occurrence, S::Error, B::SampleDocument,
         "A 'reluri' holds exactly one 'notes' element.", "<reluri><notes>...</notes></reluri>"},
    Rule{"SLN-OCC-003", C::Occurrence, S::Error, B::PublishedSchema,
         "A 'contact' holds exactly one each of 'email', 'webpage' and 'notes'.",
         "<xsd:element name=\"email\" type=\"xsd:string\"/> (minOccurs = maxOccurs = 1)"},
    Rule{"SLN-OCC-004", C::Occurrence, S::Error, B::ExcerptDerived,
         "A 'dataset' holds exactly one 'notes' and one 'content'.", "<xsd:sequence> notes content"},
    Rule{"SLN-OCC-005", C::Occurrence, S::Error, B::ExcerptDerived,
         "An 'image' holds exactly one 'notes', 'data' and 'thumbnail', and at most one 'url'.",
         "<xsd:sequence> notes url? data thumbnail"},
    Rule{"SLN-OCC-006", C::Occurrence, S::Error, B::ExcerptDerived,
         "A 'video' holds exactly one 'notes' and at most one 'data'.", "<xsd:sequence> notes data?"},
    Rule{"SLN-OCC-007", C::Occurrence, S::Error, B::PublishedSchema,
         "A group element (related, contacts, datasets, images, videos, todos, othernotes) holds at least one "
         "item; the number of items is unbounded.",
         "<xsd:element name=\"contact\" maxOccurs=\"unbounded\"/>"},

    Rule{"SLN-LEX-001", C::SimpleTypeLexical, S::Error, B::SampleDocument,
         "Dates use the form YYYY-MM-DD and name a real calendar day.", "<date>2014-09-05</date>"},
    Rule{"SLN-LEX-002", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "Attributes of type attribStringType (name, surname, value) must not be empty.",
         "<xsd:attribute name=\"surname\" type=\"attribStringType\"/>"},
    Rule{"SLN-LEX-003", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "Embedded media must be a data URI of the form data:<type>/<subtype>;base64,<padded base64>.",
         "<data>data:image/png;base64,...</data>"},
    Rule{"SLN-LEX-004", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "Image dimensions are decimal integers from 1 to 2048.",
         "<xsd:attribute name=\"width\"> 1 <= value <= 2048"},
    Rule{"SLN-LEX-005", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "A thumbnail must not be wider or taller than its image.",
         "thumbnail/@width <= data/@width, thumbnail/@height <= data/@height"},
    Rule{"SLN-LEX-006", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "The 'done' attribute of a 'todo' is an xsd:boolean (true, false, 1, 0).",
         "<xsd:attribute name=\"done\" type=\"xsd:boolean\"/>"},
    Rule{"SLN-LEX-007", C::SimpleTypeLexical, S::Error, B::ExcerptDerived,
         "A 'todo' item must have non-empty text.", "<todo>...</todo>"},

    Rule{"SLN-UNK-001", C::UnknownContent, S::Error, B::PublishedSchema,
         "Elements not declared by the schema at this position are not allowed.", "<xsd:sequence>"},
    Rule{"SLN-UNK-002", C::UnknownContent, S::Error, B::PublishedSchema,
         "Attributes not declared by the schema are not allowed.", "<xsd:complexType> (no xsd:anyAttribute)"},
    Rule{"SLN-UNK-003", C::UnknownContent, S::Error, B::PublishedSchema,
         "Element-only content must not contain character data other than whitespace.",
         "<xsd:complexType> (mixed=\"false\")"},

    Rule{"SLN-ADV-001", C::SimpleTypeLexical, S::Warning, B::ExcerptDerived,
         "A website's purpose is empty.", "<purpose>SOHO remote sensing data</purpose>"},
};

std::string_view basis_name(Basis basis) {
    switch (basis) {
    case Basis::PublishedSchema:
        return "published schema";
    case Basis::SampleDocument:
        return "sample document";
    case Basis::ExcerptDerived:
        return "excerpt-derived";
    }
    return "?";
}

} // namespace

std::span<const Rule> rule_catalogue() { return kRules; }

const Rule* find_rule(std::string_view id) {
    const auto it = std::find_if(kRules.begin(), kRules.end(), [&](const Rule& r) { return r.id == id; });
    return it == kRules.end() ? nullptr : &*it;
}

std::string explain(std::string_view id) {
    const Rule* rule = find_rule(id);
    if (rule == nullptr) {
        throw UnknownRule("unknown rule '" + std::string(id) + "'");
    }
    std::string text;
    text.append(rule->id).append(" [").append(construct_name(rule->construct)).append(", ");
    text.append(severity_name(rule->severity)).append(", ").append(basis_name(rule->basis)).append("]\n");
    text.append(rule->description).append("\n");
    text.append("schema: ").append(rule->excerpt).append("\n");
    return text;
}

std::string_view construct_name(Construct construct) {
    switch (construct) {
    case Construct::SequenceOrder:
        return "SequenceOrder";
    case Construct::RequiredAttribute:
        return "RequiredAttribute";
    case Construct::Occurrence:
        return "Occurrence";
    case Construct::SimpleTypeLexical:
        return "SimpleTypeLexical";
    case Construct::NamespaceQualified:
        return "NamespaceQualified";
    case Construct::UnknownContent:
        return "UnknownContent";
    }
    return "?";
}

std::string_view severity_name(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

bool ValidationReport::valid() const { return count(Severity::Error) == 0; }

std::size_t ValidationReport::count(Severity severity) const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.severity == severity; }));
}

std::string to_text(const ValidationReport& report) {
    std::string out;
    for (const auto& f : report.findings) {
        out.append(severity_name(f.severity)).append(" ").append(f.rule_id).append(" ");
        out.append(f.path).append(" ").append(f.message).append("\n");
    }
    return out;
}

std::string to_json(const ValidationReport& report) {
    nlohmann::ordered_json doc;
    doc["valid"] = report.valid();
    auto findings = nlohmann::ordered_json::array();
    for (const auto& f : report.findings) {
        nlohmann::ordered_json item;
        item["rule_id"] = f.rule_id;
        item["path"] = f.path;
        item["severity"] = severity_name(f.severity);
        item["message"] = f.message;
        item["line"] = f.line;
        item["column"] = f.column;
        findings.push_back(std::move(item));
    }
    doc["findings"] = std::move(findings);
    return doc.dump(2) + "\n";
}

} // namespace sln::schema
