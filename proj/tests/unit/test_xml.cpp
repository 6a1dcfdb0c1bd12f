#include "sln/xml/pull_parser.hpp"

#include <doctest.h>

#include <sstream>

using namespace sln::xml;

namespace {

// Flattens events into a compact trace: <{ns}local a=v>, "text", </local>.
std::string trace(const std::string& doc, ParserOptions options = {}) {
    std::istringstream in(doc);
    PullParser p(in, options);
    std::string out;
    while (true) {
        switch (p.next()) {
        case Event::StartElement:
            out += "<{" + std::string(p.ns()) + "}" + std::string(p.local_name());
            for (const auto& a : p.attributes()) {
                out += " " + (a.ns.empty() ? "" : "{" + a.ns + "}") + a.local + "=" + a.value;
            }
            out += ">";
            break;
        case Event::EndElement:
            out += "</" + std::string(p.local_name()) + ">";
            break;
        case Event::Text:
            out += "\"" + std::string(p.text()) + "\"";
            break;
        case Event::EndDocument:
            return out;
        }
    }
}

ErrorKind failure(const std::string& doc) {
    try {
        trace(doc);
    } catch (const XmlError& e) {
        return e.kind();
    }
    FAIL("document was accepted: " << doc);
    return ErrorKind::Io;
}

} // namespace

TEST_CASE("events for a small namespaced document") {
    const std::string doc = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
                            "<a xmlns=\"urn:x\" xmlns:p=\"urn:p\" k=\"v\" p:q=\"w\"><b/>t<p:c>u</p:c></a>\n";
    CHECK(trace(doc) == "<{urn:x}a k=v {urn:p}q=w><{urn:x}b></b>\"t\"<{urn:p}c>\"u\"</c></a>");
}

TEST_CASE("default namespace undeclaration") {
    CHECK(trace("<a xmlns=\"urn:x\"><b xmlns=\"\"/></a>") == "<{urn:x}a><{}b></b></a>");
}

TEST_CASE("references and CDATA") {
    CHECK(trace("<a>&lt;&amp;&gt;&quot;&apos;&#65;&#x1F600;</a>") == "<{}a>\"<&>\"'A\U0001F600\"</a>");
    CHECK(trace("<a><![CDATA[x<&]]]]><![CDATA[>y]]></a>") == "<{}a>\"x<&]]\"\">y\"</a>");
    CHECK_THROWS(trace("<a>y]]></a>"));
}

TEST_CASE("line ends are normalized, char refs survive") {
    CHECK(trace("<a>x\r\ny\rz&#13;</a>") == "<{}a>\"x\ny\nz\r\"</a>");
}

TEST_CASE("attribute values are whitespace-normalized") {
    CHECK(trace("<a k=\"x\ty\nz\r\nw&#10;\"/>") == "<{}a k=x y z w\n></a>");
}

TEST_CASE("long text arrives in bounded chunks") {
    const std::string body(10000, 'x');
    std::istringstream in("<a>" + body + "</a>");
    PullParser p(in, ParserOptions{256, 1000});
    REQUIRE(p.next() == Event::StartElement);
    std::string seen;
    std::size_t largest = 0;
    Event e;
    while ((e = p.next()) == Event::Text) {
        largest = std::max(largest, p.text().size());
        seen += p.text();
    }
    CHECK(e == Event::EndElement);
    CHECK(seen == body);
    CHECK(largest <= 1000);
}

TEST_CASE("comments and processing instructions are skipped") {
    CHECK(trace("<!-- c --><?pi x?><a><!--x-->b<?y?></a><!-- t -->") == "<{}a>\"b\"</a>");
}

TEST_CASE("whitespace-only text is flagged") {
    std::istringstream in("<a> \n\t<b/></a>");
    PullParser p(in);
    p.next();
    REQUIRE(p.next() == Event::Text);
    CHECK(p.text_is_whitespace());
}

TEST_CASE("positions are 1-based line and column") {
    std::istringstream in("<a>\n  <b/>\n</a>");
    PullParser p(in);
    p.next();
    p.next(); // text
    REQUIRE(p.next() == Event::StartElement);
    CHECK(p.position().line == 2);
    CHECK(p.position().column == 3);
}

TEST_CASE("malformed documents are rejected") {
    CHECK(failure("") == ErrorKind::NotWellFormed);
    CHECK(failure("<a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a></b>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a/><b/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a x='1' x='2'/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<p:a/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a>&unknown;</a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a>&#0;</a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a>]]></a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a><!-- x -- y --></a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a k=v/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a k=\"<\"/>") == ErrorKind::NotWellFormed);
    CHECK(failure("text<a/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a/>text") == ErrorKind::NotWellFormed);
    CHECK(failure("<!DOCTYPE a [<!ENTITY e \"x\">]><a>&e;</a>") == ErrorKind::NotWellFormed);
    CHECK(failure("<?xml version=\"1.1\"?><a/>") == ErrorKind::NotWellFormed);
    CHECK(failure("<a>\x01</a>") == ErrorKind::NotWellFormed);
}

TEST_CASE("only UTF-8 is accepted") {
    CHECK(failure("<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?><a/>") == ErrorKind::BadEncoding);
    CHECK(failure("<a>\xC3\x28</a>") == ErrorKind::BadEncoding);
    CHECK(failure("<a>\xED\xA0\x80</a>") == ErrorKind::BadEncoding); // surrogate
    CHECK(failure("<a>\xC0\xAF</a>") == ErrorKind::BadEncoding);     // overlong
    CHECK(failure(std::string("\xFF\xFE<\0a\0/\0>\0", 10)) == ErrorKind::BadEncoding);
    CHECK(trace("\xEF\xBB\xBF<a>\xC3\xA9</a>") == "<{}a>\"\xC3\xA9\"</a>");
    CHECK(trace("<?xml version=\"1.0\" encoding=\"UTF-8\"?><a/>") == "<{}a></a>");
}
