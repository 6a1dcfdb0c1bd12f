#include "sln/codec.hpp"
#include "sln/media.hpp"
#include "sln/ops.hpp"
#include "sln/schema.hpp"
#include "process.hpp"
#include "testkit.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace sln;
using namespace sln::ops;
namespace fs = std::filesystem;

namespace {

WebsiteEntry site(std::string name, std::string location = "loc") {
    WebsiteEntry e;
    e.name = std::move(name);
    e.location = std::move(location);
    return e;
}

Notebook book(std::vector<WebsiteEntry> entries) {
    Notebook nb = new_notebook();
    nb.websites = std::move(entries);
    return nb;
}

std::vector<std::string> names(const Notebook& nb) {
    std::vector<std::string> out;
    for (const auto& w : nb.websites) {
        out.push_back(w.name);
    }
    return out;
}

// Random edit of a notebook: drops, inserts, edits and shuffles entries.
Notebook mutate(testkit::NotebookGen& gen, Notebook nb) {
    for (std::size_t i = gen.below(4); i > 0 && !nb.websites.empty(); --i) {
        nb.websites.erase(nb.websites.begin() + static_cast<std::ptrdiff_t>(gen.below(nb.websites.size())));
    }
    for (std::size_t i = gen.below(3); i > 0; --i) {
        nb.websites.insert(nb.websites.begin() + static_cast<std::ptrdiff_t>(gen.below(nb.websites.size() + 1)),
                           gen.entry());
    }
    for (auto& w : nb.websites) {
        if (gen.below(4) == 0) {
            w.purpose = gen.text(5);
        }
        if (gen.below(6) == 0) {
            w.contacts.push_back({"a", "b", "", "", ""});
        }
    }
    if (nb.websites.size() > 1 && gen.below(2) == 0) {
        std::swap(nb.websites[gen.below(nb.websites.size())], nb.websites[gen.below(nb.websites.size())]);
    }
    return nb;
}

} // namespace

TEST_CASE("merge laws") {
    const Notebook a = book({site("a1"), site("a2")});
    const Notebook b = book({site("b1"), site("b2")});
    CHECK(names(merge(a, b, MergeStrategy::KeepBoth)) == std::vector<std::string>{"a1", "a2", "b1", "b2"});
    CHECK(merge(a, new_notebook(), MergeStrategy::KeepBoth) == a);
    CHECK(merge(a, new_notebook(), MergeStrategy::PreferFirst) == a);
    CHECK(merge(a, a, MergeStrategy::PreferFirst) == a);
    CHECK(merge(a, a, MergeStrategy::PreferSecond) == a);

    testkit::NotebookGen gen(1);
    for (int i = 0; i < 50; ++i) {
        const Notebook x = gen.notebook(3);
        const Notebook y = gen.notebook(3);
        const Notebook z = gen.notebook(3);
        CHECK(merge(merge(x, y, MergeStrategy::KeepBoth), z, MergeStrategy::KeepBoth) ==
              merge(x, merge(y, z, MergeStrategy::KeepBoth), MergeStrategy::KeepBoth));
        for (auto s : {MergeStrategy::KeepBoth, MergeStrategy::PreferFirst, MergeStrategy::PreferSecond}) {
            CHECK(schema::validate(merge(x, y, s)).valid());
        }
    }
}

TEST_CASE("merge collision policies") {
    WebsiteEntry old_x = site("x");
    old_x.purpose = "old";
    WebsiteEntry new_x = site("x");
    new_x.purpose = "new";
    const Notebook a = book({old_x, site("a")});
    const Notebook b = book({site("b"), new_x, site("x", "elsewhere")});

    const Notebook first = merge(a, b, MergeStrategy::PreferFirst);
    CHECK(names(first) == std::vector<std::string>{"x", "a", "b", "x"});
    CHECK(first.websites[0].purpose == "old");
    CHECK(first.websites[3].location == "elsewhere");

    const Notebook second = merge(a, b, MergeStrategy::PreferSecond);
    CHECK(names(second) == std::vector<std::string>{"x", "a", "b", "x"});
    CHECK(second.websites[0].purpose == "new");

    CHECK(merge(a, b, MergeStrategy::KeepBoth).websites.size() == 5);
}

TEST_CASE("diff examples") {
    const Notebook nb = parse_notebook(testkit::read_file(testkit::data_path("sample.sln")));
    CHECK(diff(nb, nb).empty());

    Notebook more = nb;
    more.websites[0].contacts.push_back({"Second", "Person", "", "", ""});
    const ChangeList changes = diff(nb, more);
    REQUIRE(changes.size() == 1);
    CHECK(changes[0].kind == ChangeKind::Modified);
    CHECK(changes[0].fields == std::vector<std::string>{"contacts"});
    CHECK(to_text(changes) ==
          "modified 1 Latest SOHO Images <http://soho.nascom.nasa.gov/data/realtime-images.html>: contacts\n");
    const auto json = nlohmann::json::parse(to_json(changes));
    CHECK(json[0]["kind"] == "modified");
    CHECK(json[0]["fields"][0] == "contacts");
}

TEST_CASE("diff reports moves minimally") {
    const Notebook a = book({site("1"), site("2"), site("3"), site("4")});
    const Notebook b = book({site("2"), site("3"), site("4"), site("1")});
    const ChangeList c = diff(a, b);
    REQUIRE(c.size() == 1);
    CHECK(c[0].kind == ChangeKind::Moved);
    CHECK(c[0].key.name == "1");
    CHECK(c[0].index == 3);
    CHECK(patch(a, c) == b);
}

TEST_CASE("duplicate keys are matched by occurrence") {
    WebsiteEntry second = site("dup");
    second.purpose = "second";
    const Notebook a = book({site("dup"), second});
    const Notebook b = book({site("dup")});
    const ChangeList c = diff(a, b);
    REQUIRE(c.size() == 1);
    CHECK(c[0].kind == ChangeKind::Removed);
    CHECK(c[0].key.ordinal == 2);
    CHECK(patch(a, c) == b);
}

TEST_CASE("patch(a, diff(a, b)) == b on random pairs") {
    testkit::NotebookGen gen(77);
    for (int i = 0; i < 300; ++i) {
        const Notebook a = gen.notebook(6);
        const Notebook b = i % 3 == 0 ? gen.notebook(6) : mutate(gen, a);
        const ChangeList c = diff(a, b);
        CHECK(patch(a, c).websites == b.websites);
        CHECK(diff(b, b).empty());
    }
}

TEST_CASE("file name sanitizing") {
    CHECK(sanitize_file_name("eit-195_v2.png") == "eit-195_v2.png");
    CHECK(sanitize_file_name("a b/c") == "a%20b%2Fc");
    CHECK(sanitize_file_name(".hidden") == "%2Ehidden");
    CHECK(sanitize_file_name("..") == "%2E.");
    CHECK(sanitize_file_name("100%") == "100%25");
    CHECK(sanitize_file_name("\xC3\xA9") == "%C3%A9");
}

TEST_CASE("media extraction") {
    const std::string dir = testkit::temp_dir("extract");
    CHECK(extract_media(new_notebook(), dir + "/none").empty());

    const std::string png = testkit::read_file(testkit::data_path("red1x1.png"));
    const std::string jpeg = testkit::read_file(testkit::data_path("black8.jpg"));
    WebsiteEntry e = site("w");
    ImageRecord img = media::make_image_record("sun", "", media::Raster::filled(1, 1, {255, 0, 0, 255}));
    img.full.payload.assign(png.begin(), png.end());
    e.images.push_back(img);
    img.name = "sun";
    e.images.push_back(img);
    img.name = "photo";
    img.full = {"image/jpeg", {jpeg.begin(), jpeg.end()}};
    e.images.push_back(img);
    const Notebook nb = book({site("empty"), e});

    const Manifest m = extract_media(nb, dir + "/out");
    REQUIRE(m.size() == 3);
    CHECK(m[0].file == "2-sun-1.png");
    CHECK(m[1].file == "2-sun-2.png");
    CHECK(m[2].file == "2-photo.jpg");
    CHECK(m[2].website == 2);
    CHECK(testkit::read_file(dir + "/out/2-sun-1.png") == png);
    CHECK(testkit::read_file(dir + "/out/2-photo.jpg") == jpeg);

    // A second run into the same directory never overwrites.
    const Manifest again = extract_media(nb, dir + "/out");
    CHECK(again[0].file == "2-sun-3.png");
    CHECK(again[2].file == "2-photo-1.jpg");

    const auto json = nlohmann::json::parse(to_json(m));
    CHECK(json[0]["file"] == "2-sun-1.png");
    CHECK(json[0]["bytes"] == png.size());
    fs::remove_all(dir);
}

TEST_CASE("dataset extraction") {
    const std::string dir = testkit::temp_dir("datasets");
    CHECK(extract_datasets(new_notebook(), dir).empty());
    WebsiteEntry e = site("w");
    e.datasets.push_back({"flux.csv", "", "time,flux\n0,1\n"});
    e.datasets.push_back({"meta", "", "<?xml version=\"1.0\"?><a/>"});
    e.datasets.push_back({"smp", "", "\U0001F600 \U00010000\r\n"});
    const Manifest m = extract_datasets(book({e}), dir);
    REQUIRE(m.size() == 3);
    CHECK(m[0].file == "1-flux.csv.txt");
    CHECK(m[1].file == "1-meta.xml");
    CHECK(m[1].media_type == "application/xml");
    CHECK(testkit::read_file(dir + "/1-flux.csv.txt") == e.datasets[0].content);
    CHECK(testkit::read_file(dir + "/" + m[2].file) == e.datasets[2].content);
    fs::remove_all(dir);
}

TEST_CASE("fixture generation is deterministic and self-consistent") {
    FixtureSpec spec;
    spec.website_count = 100;
    spec.datasets_per_site = 2;
    spec.dataset_bytes = 500;
    spec.images_per_site = 1;
    spec.image_width = 16;
    spec.image_height = 8;
    spec.seed = 42;
    std::ostringstream one;
    std::ostringstream two;
    const FixtureManifest m = generate_fixture(spec, one);
    generate_fixture(spec, two);
    CHECK(one.str() == two.str());
    CHECK(m.file_bytes == one.str().size());
    CHECK(m.stats.website_count == 100);
    CHECK(m.stats.dataset_bytes == 100 * 2 * 500);
    CHECK(m.stats.image_count == 100);

    std::istringstream in(one.str());
    CHECK(stream_stats(in) == m.stats);
    CHECK(schema::validate(std::string_view(one.str())).findings.empty());

    spec.seed = 43;
    std::ostringstream other;
    generate_fixture(spec, other);
    CHECK(other.str() != one.str());

    FixtureSpec none;
    std::ostringstream empty;
    CHECK(generate_fixture(none, empty).stats == StreamStats{});
    CHECK(parse_notebook(empty.str()).websites.empty());
}

TEST_CASE("planned fixtures land near the target size") {
    for (std::uint64_t target : {200'000ull, 3'000'000ull, 20'000'000ull}) {
        const FixtureSpec spec = plan_fixture(target);
        std::ostream discard(nullptr);
        const FixtureManifest m = generate_fixture(spec, discard);
        CHECK(static_cast<double>(m.file_bytes) >= 0.95 * static_cast<double>(target));
        CHECK(static_cast<double>(m.file_bytes) <= 1.05 * static_cast<double>(target));
    }
    CHECK(plan_fixture(0).website_count == 0);
}
