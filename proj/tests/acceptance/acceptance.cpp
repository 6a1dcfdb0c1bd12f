// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   sln_acceptance [--skip-perf]

#include "sln/codec.hpp"
#include "sln/media.hpp"
#include "sln/schema.hpp"
#include "sln/search.hpp"
#include "sln/utf8.hpp"
#include "process.hpp"
#include "testkit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace sln;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

// Collects the first few problems of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (failures_ < 5) {
                detail_ += (detail_.empty() ? "" : "; ") + what;
            }
            ++failures_;
        }
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }

    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        if (ok()) {
            return notes_;
        }
        return std::to_string(failures_) + " failure(s): " + detail_ + (notes_.empty() ? "" : " [" + notes_ + "]");
    }

private:
    std::size_t failures_ = 0;
    std::string detail_;
    std::string notes_;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double value, int digits = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << value;
    return out.str();
}

std::string sample_document() { return testkit::read_file(testkit::data_path("sample.sln")); }

std::set<std::string> rule_ids(const schema::ValidationReport& report) {
    std::set<std::string> ids;
    for (const auto& f : report.findings) {
        ids.insert(f.rule_id);
    }
    return ids;
}

std::string join(const std::set<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        out += (out.empty() ? "" : ",") + id;
    }
    return out.empty() ? "none" : out;
}

// ---------------------------------------------------------------------------

void sample_fidelity(Check& c) {
    const auto start = Clock::now();
    const std::string doc = sample_document();
    const Notebook nb = parse_notebook(doc);
    c.expect(nb.websites.size() == 1, "website count " + std::to_string(nb.websites.size()));
    if (nb.websites.size() == 1) {
        const WebsiteEntry& w = nb.websites[0];
        c.expect(w.name == "Latest SOHO Images", "name '" + w.name + "'");
        c.expect(w.purpose == "SOHO remote sensing data", "purpose '" + w.purpose + "'");
        c.expect(w.date.to_string() == "2014-09-05", "date " + w.date.to_string());
        c.expect(w.related.size() == 4, "related count " + std::to_string(w.related.size()));
        c.expect(w.contacts.size() == 1, "contact count " + std::to_string(w.contacts.size()));
    }
    const auto report = schema::validate(std::string_view(doc));
    c.expect(report.findings.empty(), "findings: " + join(rule_ids(report)));
    const std::string first = serialize_notebook(nb);
    const Notebook again = parse_notebook(first);
    c.expect(again == nb, "model changed after one round trip");
    c.expect(serialize_notebook(again) == first, "second serialization differs from the first");
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 1.0, "took " + fixed(elapsed) + " s");
    c.note(fixed(elapsed * 1000, 1) + " ms");
}

void mutation_suite(Check& c) {
    const std::string doc = sample_document();
    const auto only = [&](const std::string& label, const std::string& mutant, schema::Construct construct) {
        const auto report = schema::validate(std::string_view(mutant));
        const bool one = report.findings.size() == 1;
        c.expect(one, label + ": " + std::to_string(report.findings.size()) + " findings (" +
                          join(rule_ids(report)) + ")");
        if (one) {
            const auto* rule = schema::find_rule(report.findings[0].rule_id);
            c.expect(rule && rule->construct == construct && report.findings[0].severity == schema::Severity::Error,
                     label + ": got " + report.findings[0].rule_id);
        }
    };

    only("surname deleted", testkit::replace_once(doc, " surname=\"Contact\"", ""),
         schema::Construct::RequiredAttribute);
    only("contact children reordered",
         testkit::replace_once(doc,
                               "      <email>email@nasa.gov</email>\n"
                               "      <webpage>nasa.gov</webpage>\n",
                               "      <webpage>nasa.gov</webpage>\n"
                               "      <email>email@nasa.gov</email>\n"),
         schema::Construct::SequenceOrder);
    only("unqualified child", testkit::replace_once(doc, "<purpose>", "<purpose xmlns=\"\">"),
         schema::Construct::NamespaceQualified);

    const std::size_t begin = doc.find("    <contact ");
    const std::size_t end = doc.find("</contact>\n") + std::strlen("</contact>\n");
    const std::string contact = doc.substr(begin, end - begin);
    const auto duplicated = schema::validate(std::string_view(doc.substr(0, end) + contact + contact + doc.substr(end)));
    c.expect(duplicated.findings.empty(), "duplicated contacts: " + join(rule_ids(duplicated)));

    // One minimal mutant per catalogue rule; each must trip that rule alone.
    std::set<std::string> covered;
    for (const auto& m : testkit::mutants()) {
        const auto ids = rule_ids(schema::validate(std::string_view(m.document)));
        c.expect(ids == std::set<std::string>{m.rule_id}, m.rule_id + " (" + m.what + ") gave " + join(ids));
        covered.insert(m.rule_id);
    }
    for (const auto& rule : schema::rule_catalogue()) {
        c.expect(covered.count(std::string(rule.id)) == 1, std::string("no mutant for ") + std::string(rule.id));
    }
    c.note(std::to_string(covered.size() + 4) + " mutants");
}

void round_trip_property(Check& c) {
    testkit::NotebookGen gen(20140905);
    constexpr int kCases = 1000;
    std::size_t advisories = 0;
    for (int i = 0; i < kCases; ++i) {
        const Notebook nb = gen.notebook(4);
        const std::string doc = serialize_notebook(nb);
        bool same = false;
        try {
            same = parse_notebook(doc) == nb;
        } catch (const std::exception& e) {
            c.expect(false, "case " + std::to_string(i) + ": " + e.what());
            continue;
        }
        c.expect(same, "case " + std::to_string(i) + " changed");
        // Errors fail the case; the empty-purpose advisory is a warning and is counted.
        const auto report = schema::validate(std::string_view(doc));
        c.expect(report.count(schema::Severity::Error) == 0, "case " + std::to_string(i) + ": " + join(rule_ids(report)));
        advisories += report.count(schema::Severity::Warning);
    }
    c.note(std::to_string(kCases) + " notebooks, " + std::to_string(advisories) + " advisory warning(s)");
}

void media_laws(Check& c) {
    std::mt19937_64 rng(1024);
    constexpr int kUris = 10'000;
    const std::array<std::string, 4> types{"image/png", "image/jpeg", "video/mp4", "text/plain;charset=utf-8"};
    for (int i = 0; i < kUris; ++i) {
        media::Bytes bytes(rng() % (i < 100 ? 8 : 600));
        for (auto& b : bytes) {
            b = static_cast<std::uint8_t>(rng());
        }
        const std::string& type = types[rng() % types.size()];
        const std::string uri = media::encode_data_uri(type, bytes);
        const MediaBlob back = media::decode_data_uri(uri);
        c.expect(back.payload == bytes && back.media_type == type, "data URI case " + std::to_string(i));
        c.expect(uri.size() == 5 + type.size() + 8 + 4 * ((bytes.size() + 2) / 3),
                 "data URI length case " + std::to_string(i));
    }

    // Dimension law on a grid of sizes around every power of two up to 2048,
    // plus every width (and height) in [1, 2048] against a thin other side.
    std::vector<std::uint32_t> grid;
    for (std::uint32_t v = 1; v <= 17; ++v) {
        grid.push_back(v);
    }
    for (std::uint32_t p = 32; p <= 2048; p *= 2) {
        grid.insert(grid.end(), {p - 1, p});
        if (p < 2048) {
            grid.push_back(p + 1);
        }
    }
    const auto law = [](std::uint32_t side, std::uint32_t k) { return std::max<std::uint32_t>(1, side / k); };
    std::size_t cases = 0;
    const auto check_scale = [&](std::uint32_t w, std::uint32_t h) {
        const media::Raster source = media::Raster::filled(w, h, {7, 77, 177, 255});
        for (auto f : {media::ScaleFactor::Full, media::ScaleFactor::Half, media::ScaleFactor::Quarter,
                       media::ScaleFactor::Eighth}) {
            const std::uint32_t k = media::divisor(f);
            const media::Raster out = media::scale(source, f);
            ++cases;
            c.expect(out.width == law(w, k) && out.height == law(h, k),
                     std::to_string(w) + "x" + std::to_string(h) + " at 1:" + std::to_string(k) + " gave " +
                         std::to_string(out.width) + "x" + std::to_string(out.height));
            c.expect(out.pixels.size() == std::size_t{out.width} * out.height * 4, "pixel buffer size");
        }
    };
    for (std::uint32_t w : grid) {
        for (std::uint32_t h : grid) {
            check_scale(w, h);
        }
    }
    for (std::uint32_t v = 1; v <= 2048; ++v) {
        for (std::uint32_t thin = 1; thin <= 3; ++thin) {
            check_scale(v, thin);
            check_scale(thin, v);
        }
    }

    const std::string file = testkit::read_file(testkit::data_path("blue2048.png"));
    const media::Raster big = media::decode_raster(media::Bytes(file.begin(), file.end()));
    c.expect(big.width == 2048 && big.height == 2048, "fixture is not 2048x2048");
    for (auto [f, side] : {std::pair{media::ScaleFactor::Half, 1024u}, {media::ScaleFactor::Quarter, 512u},
                           {media::ScaleFactor::Eighth, 256u}}) {
        const media::Raster out = media::scale(big, f);
        c.expect(out.width == side && out.height == side,
                 "2048 at 1:" + std::to_string(media::divisor(f)) + " gave " + std::to_string(out.width) + "x" +
                     std::to_string(out.height));
        const media::Raster png = media::decode_raster(media::encode_raster(out));
        c.expect(png == out, "PNG re-encode of the " + std::to_string(side) + " output differs");
    }
    c.note(std::to_string(kUris) + " data URIs, " + std::to_string(cases) + " scale cases");
}

// Naive scan: every entry, every field, first folded occurrence.
search::QueryResult brute_force(const Notebook& nb, std::string_view text) {
    search::QueryResult out;
    const std::u32string needle = search::fold(text);
    for (std::size_t i = 0; i < nb.websites.size(); ++i) {
        const WebsiteEntry& w = nb.websites[i];
        const std::array<std::pair<search::Field, const std::string*>, 3> fields{
            {{search::Field::Name, &w.name}, {search::Field::Location, &w.location}, {search::Field::Purpose, &w.purpose}}};
        for (const auto& [field, value] : fields) {
            const std::size_t at = search::fold(*value).find(needle);
            if (at != std::u32string::npos) {
                out.push_back({i, field, at});
            }
        }
    }
    return out;
}

// A query taken from the notebook itself, with ASCII case flipped at random.
std::string pick_query(testkit::NotebookGen& gen, const Notebook& nb) {
    if (nb.websites.empty() || gen.below(4) == 0) {
        return gen.text(3);
    }
    const WebsiteEntry& w = nb.websites[gen.below(nb.websites.size())];
    const std::string& field = gen.below(3) == 0 ? w.name : gen.below(2) == 0 ? w.location : w.purpose;
    const std::u32string cps = utf8::to_u32(field);
    const std::size_t from = gen.below(cps.size() + 1);
    const std::size_t len = gen.below(cps.size() - from + 1);
    std::string out;
    for (char32_t cp : cps.substr(from, len)) {
        if (cp < 0x80 && std::isalpha(static_cast<int>(cp)) && gen.below(2) == 0) {
            cp ^= 0x20;
        }
        utf8::append(out, cp);
    }
    return out;
}

bool subset(const search::QueryResult& narrow, const search::QueryResult& wide) {
    std::set<std::pair<std::size_t, search::Field>> keys;
    for (const auto& m : wide) {
        keys.insert({m.entry, m.field});
    }
    return std::all_of(narrow.begin(), narrow.end(),
                       [&](const search::Match& m) { return keys.count({m.entry, m.field}) == 1; });
}

void search_oracle(Check& c) {
    testkit::NotebookGen gen(6);
    constexpr int kPairs = 1000;
    std::size_t hits = 0;
    std::size_t extensions = 0;
    for (int i = 0; i < kPairs; ++i) {
        const Notebook nb = gen.notebook(8);
        const search::SearchIndex index(nb);
        const std::string q = pick_query(gen, nb);
        const search::QueryResult got = index.query(q);
        c.expect(got == brute_force(nb, q), "pair " + std::to_string(i) + " differs from the scan");
        hits += got.empty() ? 0 : 1;

        // Narrowing: grow the query one character at a time.
        search::SearchSession session(index);
        std::string grown;
        search::QueryResult previous = session.update(grown);
        for (std::size_t n = 0; n < 6; ++n) {
            grown += gen.below(3) == 0 ? gen.text(1, false) : pick_query(gen, nb).substr(0, 1);
            const search::QueryResult now = session.update(grown);
            ++extensions;
            c.expect(subset(now, previous), "pair " + std::to_string(i) + ": extension widened the result");
            c.expect(now == index.query(grown), "pair " + std::to_string(i) + ": session differs from fresh query");
            previous = now;
        }
    }
    c.expect(hits > kPairs / 2, "too few non-empty results to be meaningful: " + std::to_string(hits));
    c.note(std::to_string(kPairs) + " pairs, " + std::to_string(hits) + " non-empty, " +
           std::to_string(extensions) + " extensions");
}

// ---------------------------------------------------------------------------

struct PerfRun {
    double seconds = 0;
    long peak_kb = 0;
};

PerfRun load_fixture(Check& c, const std::string& path, const std::string& label) {
    PerfRun run;
    const auto stats = testkit::run({SLN_CLI_PATH, "stats", path, "--format", "json"});
    c.expect(stats.exit_code == 0, label + " stats exit " + std::to_string(stats.exit_code) + ": " + stats.err);
    const auto valid = testkit::run({SLN_CLI_PATH, "validate", path, "--lenient"});
    c.expect(valid.exit_code == 0, label + " validate exit " + std::to_string(valid.exit_code) + ": " +
                                       valid.out.substr(0, 200));
    run.seconds = stats.seconds + valid.seconds;
    run.peak_kb = std::max(stats.max_rss_kb, valid.max_rss_kb);

    const auto manifest = nlohmann::json::parse(testkit::read_file(path + ".json"));
    const auto counted = nlohmann::json::parse(stats.out);
    for (const auto& [key, value] : counted.items()) {
        c.expect(manifest[key] == value, label + " stats " + key + " differs from the manifest");
    }
    return run;
}

std::string make_fixture(Check& c, const std::string& dir, const std::string& size, std::uint64_t low,
                         std::uint64_t high) {
    const std::string path = dir + "/fixture-" + size + ".sln";
    const auto gen = testkit::run({SLN_CLI_PATH, "generate", "-o", path, "--size", size, "--manifest", path + ".json"});
    c.expect(gen.exit_code == 0, "generate " + size + " exit " + std::to_string(gen.exit_code) + ": " + gen.err);
    const auto bytes = fs::exists(path) ? fs::file_size(path) : 0;
    c.expect(bytes >= low && bytes <= high, size + " fixture is " + std::to_string(bytes) + " bytes");
    return path;
}

void performance(Check& c) {
    const std::string dir = testkit::temp_dir("perf");
    try {
        const std::string small = make_fixture(c, dir, "40M", 38'000'000, 42'000'000);
        const PerfRun s = load_fixture(c, small, "40 MB");
        fs::remove(small);
        c.expect(s.seconds <= 1.5, "40 MB took " + fixed(s.seconds) + " s");

        const std::string large = make_fixture(c, dir, "400M", 380'000'000, 420'000'000);
        const PerfRun l = load_fixture(c, large, "400 MB");
        fs::remove(large);
        c.expect(l.seconds <= 15.0, "400 MB took " + fixed(l.seconds) + " s");
        c.expect(l.peak_kb <= 512 * 1024, "400 MB peak " + std::to_string(l.peak_kb / 1024) + " MiB");
        c.expect(l.peak_kb < 2 * s.peak_kb, "peak memory grew from " + std::to_string(s.peak_kb) + " to " +
                                                std::to_string(l.peak_kb) + " KiB for 10x the input");
        c.note("40 MB " + fixed(s.seconds) + " s / " + std::to_string(s.peak_kb / 1024) + " MiB, 400 MB " +
               fixed(l.seconds) + " s / " + std::to_string(l.peak_kb / 1024) + " MiB");
    } catch (...) {
        fs::remove_all(dir);
        throw;
    }
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    const bool skip_perf = argc > 1 && std::string_view(argv[1]) == "--skip-perf";
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"sample-fidelity", sample_fidelity},       {"schema-mutation-suite", mutation_suite},
        {"round-trip-property", round_trip_property}, {"media-laws", media_laws},
        {"search-oracle", search_oracle},             {"performance", performance},
    };

    int failed = 0;
    for (const auto& [name, body] : criteria) {
        if (skip_perf && name == "performance") {
            std::cout << "SKIP " << name << std::endl;
            continue;
        }
        Check c;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const std::string summary = c.summary();
        std::cout << (c.ok() ? "PASS " : "FAIL ") << name << (summary.empty() ? "" : " (" + summary + ")")
                  << std::endl;
        failed += c.ok() ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
