#include "sln/codec.hpp"
#include "sln/model.hpp"
#include "sln/schema.hpp"
#include "testkit.hpp"

#include <doctest.h>

using namespace sln;

TEST_CASE("date parsing accepts only real YYYY-MM-DD days") {
    const Date d = Date::parse("2014-09-05");
    CHECK(d.year() == 2014);
    CHECK(d.month() == 9);
    CHECK(d.day() == 5);
    CHECK(d.to_string() == "2014-09-05");

    CHECK(Date::try_parse("2000-02-29"));
    CHECK_FALSE(Date::try_parse("1900-02-29"));
    CHECK(Date::try_parse("2024-02-29"));
    CHECK_FALSE(Date::try_parse("2023-02-29"));
    CHECK_FALSE(Date::try_parse("2014-13-40"));
    CHECK_FALSE(Date::try_parse("2014-04-31"));
    CHECK_FALSE(Date::try_parse("0000-01-01"));
    CHECK(Date::try_parse("0001-01-01"));
    CHECK(Date::try_parse("9999-12-31"));
    CHECK_FALSE(Date::try_parse("2014-9-05"));
    CHECK_FALSE(Date::try_parse("2014-09-05 "));
    CHECK_FALSE(Date::try_parse("2014/09/05"));
    CHECK_FALSE(Date::try_parse("+014-09-05"));
    CHECK_FALSE(Date::try_parse(""));
    CHECK_THROWS_AS(Date::parse("2014-13-40"), InvalidEntry);
    CHECK(Date::parse("2014-09-05") < Date::parse("2014-09-06"));
}

TEST_CASE("new notebook is empty and validates") {
    const Notebook nb = new_notebook();
    CHECK(nb.websites.empty());
    CHECK(nb.schema_location == std::string(kSchemaLocationHint));
    const auto report = schema::validate(nb);
    CHECK(report.findings.empty());
    CHECK(parse_notebook(serialize_notebook(nb)) == nb);
}

TEST_CASE("add_website appends and keeps prior entries") {
    WebsiteEntry a;
    a.name = "Latest SOHO Images";
    WebsiteEntry b;
    b.name = "NOAA";
    const Notebook one = add_website(new_notebook(), a);
    REQUIRE(one.websites.size() == 1);
    CHECK(one.websites[0].name == "Latest SOHO Images");
    const Notebook two = add_website(one, b);
    REQUIRE(two.websites.size() == 2);
    CHECK(two.websites[0] == a);
    CHECK(two.websites[1] == b);
}

TEST_CASE("add_website rejects broken invariants") {
    const auto rejects = [](auto mutate) {
        WebsiteEntry e = sln::testkit::full_notebook().websites[0];
        mutate(e);
        CHECK_THROWS_AS(add_website(new_notebook(), e), InvalidEntry);
    };
    rejects([](WebsiteEntry& e) { e.name.clear(); });
    rejects([](WebsiteEntry& e) { e.related[0].value.clear(); });
    rejects([](WebsiteEntry& e) { e.contacts[0].surname.clear(); });
    rejects([](WebsiteEntry& e) { e.contacts[0].name.clear(); });
    rejects([](WebsiteEntry& e) { e.datasets[0].name.clear(); });
    rejects([](WebsiteEntry& e) { e.images[0].name.clear(); });
    rejects([](WebsiteEntry& e) { e.images[0].full_width = 2049; });
    rejects([](WebsiteEntry& e) { e.images[0].full_height = 0; });
    rejects([](WebsiteEntry& e) { e.images[0].thumb_width = 3; });
    rejects([](WebsiteEntry& e) { e.images[0].full.media_type = "png"; });
    rejects([](WebsiteEntry& e) { e.videos[0].name.clear(); });
    rejects([](WebsiteEntry& e) { e.videos[0].media->media_type = "video"; });
    rejects([](WebsiteEntry& e) { e.todos[0].text.clear(); });
    rejects([](WebsiteEntry& e) { e.purpose = std::string("bell\x07"); });
    rejects([](WebsiteEntry& e) { e.other_notes[0].text = std::string("\xC3\x28"); });
}

TEST_CASE("media type syntax") {
    CHECK(is_valid_media_type("image/png"));
    CHECK(is_valid_media_type("text/plain;charset=utf-8"));
    CHECK(is_valid_media_type("application/vnd.ms-excel"));
    CHECK_FALSE(is_valid_media_type("image"));
    CHECK_FALSE(is_valid_media_type("image/"));
    CHECK_FALSE(is_valid_media_type("/png"));
    CHECK_FALSE(is_valid_media_type("image/png;"));
    CHECK_FALSE(is_valid_media_type("ima ge/png"));
    CHECK_FALSE(is_valid_media_type(""));
}

TEST_CASE("supplementary-plane text survives construction, serialization and parse") {
    WebsiteEntry e;
    e.name = "\U00010000 gateway \U0001F600";
    e.purpose = "\U00010000";
    e.other_notes.push_back({"\U0001D11E clef"});
    const Notebook nb = add_website(new_notebook(), e);
    const Notebook back = parse_notebook(serialize_notebook(nb));
    CHECK(back == nb);
    CHECK(back.websites[0].purpose == "\xF0\x90\x80\x80");
}

TEST_CASE("generated entries satisfy the invariants and keep insertion order") {
    sln::testkit::NotebookGen gen(7);
    Notebook nb = new_notebook();
    std::vector<WebsiteEntry> added;
    for (int i = 0; i < 100; ++i) {
        WebsiteEntry e = gen.entry();
        CHECK_NOTHROW(check_entry(e));
        nb = add_website(nb, e);
        added.push_back(e);
    }
    CHECK(nb.websites == added);
}
