// sln: command-line front end for Solar Lab Notebook files.
//
// Exit status: 0 success or valid, 1 document invalid, 2 I/O or parse
// failure, 3 usage error.

#include "sln/codec.hpp"
#include "sln/media.hpp"
#include "sln/ops.hpp"
#include "sln/schema.hpp"
#include "sln/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailure = 2;
constexpr int kUsage = 3;

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in || fs::is_directory(path)) {
        throw sln::IoError("cannot open '" + path + "'");
    }
    return in;
}

sln::Notebook load(const std::string& path) {
    std::ifstream in = open_input(path);
    return sln::parse_notebook(in);
}

std::string read_bytes(const std::string& path) {
    std::ifstream in = open_input(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw sln::IoError("cannot write '" + path + "'");
    }
}

// "400M", "40000000", "1.5G" style sizes.
std::uint64_t parse_size(const std::string& text) {
    double value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || value < 0) {
        throw UsageError("bad size '" + text + "'");
    }
    const std::string_view unit(ptr, static_cast<std::size_t>(end - ptr));
    double scale = 1;
    if (unit == "K" || unit == "k") {
        scale = 1e3;
    } else if (unit == "M") {
        scale = 1e6;
    } else if (unit == "G") {
        scale = 1e9;
    } else if (!unit.empty()) {
        throw UsageError("bad size unit in '" + text + "'");
    }
    return static_cast<std::uint64_t>(value * scale);
}

int cmd_validate(const std::string& file, const std::string& format, bool lenient) {
    std::ifstream in = open_input(file);
    const sln::schema::ValidationReport report = sln::schema::validate(in, {lenient});
    if (format == "json") {
        std::cout << sln::schema::to_json(report);
    } else if (report.findings.empty()) {
        std::cout << "valid\n";
    } else {
        std::cout << sln::schema::to_text(report);
        const std::size_t errors = report.count(sln::schema::Severity::Error);
        const std::size_t warnings = report.count(sln::schema::Severity::Warning);
        std::cout << (report.valid() ? "valid" : "invalid") << ": " << errors << " error(s), " << warnings
                  << " warning(s)\n";
    }
    return report.valid() ? kOk : kInvalid;
}

int cmd_new(const std::string& file, bool force) {
    if (!force && fs::exists(file)) {
        std::cerr << "sln: '" << file << "' exists (use --force to overwrite)\n";
        return kFailure;
    }
    sln::write_notebook_file(sln::new_notebook(), file);
    return kOk;
}

int cmd_stats(const std::string& file, const std::string& format) {
    std::ifstream in = open_input(file);
    const sln::StreamStats s = sln::stream_stats(in);
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["website_count"] = s.website_count;
        doc["dataset_bytes"] = s.dataset_bytes;
        doc["image_count"] = s.image_count;
        doc["total_media_bytes"] = s.total_media_bytes;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "website_count=" << s.website_count << "\n"
                  << "dataset_bytes=" << s.dataset_bytes << "\n"
                  << "image_count=" << s.image_count << "\n"
                  << "total_media_bytes=" << s.total_media_bytes << "\n";
    }
    return kOk;
}

// One line per matching entry: index, name, then field:offset pairs.
int cmd_query(const std::string& file, const std::string& text) {
    const sln::Notebook nb = load(file);
    const sln::search::SearchIndex index(nb);
    const sln::search::QueryResult result = index.query(text);
    for (std::size_t i = 0; i < result.size();) {
        const std::size_t entry = result[i].entry;
        std::cout << entry + 1 << "\t" << nb.websites[entry].name << "\t";
        for (bool first = true; i < result.size() && result[i].entry == entry; ++i, first = false) {
            std::cout << (first ? "" : ",") << sln::search::field_name(result[i].field) << ":" << result[i].offset;
        }
        std::cout << "\n";
    }
    return kOk;
}

int cmd_merge(const std::string& a, const std::string& b, const std::string& out, const std::string& prefer) {
    sln::ops::MergeStrategy strategy = sln::ops::MergeStrategy::KeepBoth;
    if (prefer == "first") {
        strategy = sln::ops::MergeStrategy::PreferFirst;
    } else if (prefer == "second") {
        strategy = sln::ops::MergeStrategy::PreferSecond;
    }
    const sln::Notebook merged = sln::ops::merge(load(a), load(b), strategy);
    sln::write_notebook_file(merged, out);
    std::cout << "website_count=" << merged.websites.size() << "\n";
    return kOk;
}

int cmd_extract(const std::string& file, bool images, bool datasets, const std::string& dir) {
    if (images == datasets) {
        throw UsageError("extract needs exactly one of --images or --datasets");
    }
    const sln::Notebook nb = load(file);
    const sln::ops::Manifest manifest =
        images ? sln::ops::extract_media(nb, dir) : sln::ops::extract_datasets(nb, dir);
    std::cout << sln::ops::to_json(manifest);
    return kOk;
}

int cmd_thumb(const std::string& file, const std::string& scale_text, const std::string& out) {
    std::optional<sln::media::ScaleFactor> factor;
    if (!scale_text.empty()) {
        factor = sln::media::parse_scale(scale_text);
        if (!factor) {
            throw UsageError("bad --scale '" + scale_text + "' (expected 1:1, 1:2, 1:4 or 1:8)");
        }
    }
    const std::string bytes = read_bytes(file);
    const sln::media::Raster source = sln::media::decode_raster(
        {reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
    const sln::media::Raster result =
        factor ? sln::media::scale(source, *factor) : sln::media::make_thumbnail(source);
    const sln::media::Bytes png = sln::media::encode_raster(result);
    write_bytes(out, {reinterpret_cast<const char*>(png.data()), png.size()});
    std::cout << result.width << "x" << result.height << "\n";
    return kOk;
}

int cmd_diff(const std::string& a, const std::string& b, const std::string& format) {
    const sln::ops::ChangeList changes = sln::ops::diff(load(a), load(b));
    std::cout << (format == "json" ? sln::ops::to_json(changes) : sln::ops::to_text(changes));
    return kOk;
}

int cmd_generate(const std::string& out, const std::string& size, std::uint64_t websites, std::uint64_t seed,
                 const std::string& manifest_path) {
    sln::ops::FixtureSpec spec;
    if (!size.empty()) {
        spec = sln::ops::plan_fixture(parse_size(size), seed);
    } else {
        spec = sln::ops::plan_fixture(0, seed);
        spec.website_count = websites;
    }
    const sln::ops::FixtureManifest manifest = sln::ops::generate_fixture(spec, fs::path(out));
    const std::string json = sln::ops::to_json(manifest);
    if (!manifest_path.empty()) {
        write_bytes(manifest_path, json);
    }
    std::cout << json;
    return kOk;
}

int cmd_rules(const std::string& id) {
    if (!id.empty()) {
        std::cout << sln::schema::explain(id);
        return kOk;
    }
    for (const auto& rule : sln::schema::rule_catalogue()) {
        std::cout << rule.id << "\t" << sln::schema::construct_name(rule.construct) << "\t"
                  << sln::schema::severity_name(rule.severity) << "\t" << rule.description << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solar Lab Notebook file tool", "sln"};
    app.require_subcommand(1);
    int status = kOk;

    std::string file;
    std::string other;
    std::string out;
    std::string format = "text";
    std::string text;
    std::string prefer = "both";
    std::string scale;
    std::string size;
    std::string manifest;
    std::string rule_id;
    std::uint64_t websites = 0;
    std::uint64_t seed = 1;
    bool lenient = false;
    bool force = false;
    bool images = false;
    bool datasets = false;
    const auto formats = CLI::IsMember({"text", "json"});

    auto* validate = app.add_subcommand("validate", "Check a file against the SLN schema rules");
    validate->add_option("file", file, "SLN file")->required();
    validate->add_option("--format", format, "text or json")->check(formats);
    validate->add_flag("--lenient", lenient, "Report unknown content as warnings");
    validate->callback([&] { status = cmd_validate(file, format, lenient); });

    auto* create = app.add_subcommand("new", "Write an empty notebook");
    create->add_option("file", file, "Output file")->required();
    create->add_flag("--force", force, "Overwrite an existing file");
    create->callback([&] { status = cmd_new(file, force); });

    auto* stats = app.add_subcommand("stats", "Count websites, images and payload bytes in one pass");
    stats->add_option("file", file, "SLN file")->required();
    stats->add_option("--format", format, "text or json")->check(formats);
    stats->callback([&] { status = cmd_stats(file, format); });

    auto* query = app.add_subcommand("query", "Case-insensitive search over name, location and purpose");
    query->add_option("file", file, "SLN file")->required();
    query->add_option("text", text, "Search text")->required();
    query->callback([&] { status = cmd_query(file, text); });

    auto* merge = app.add_subcommand("merge", "Combine two notebooks");
    merge->add_option("a", file, "First notebook")->required();
    merge->add_option("b", other, "Second notebook")->required();
    merge->add_option("-o,--output", out, "Output file")->required();
    merge->add_option("--prefer", prefer, "Collision policy")->check(CLI::IsMember({"first", "second", "both"}));
    merge->callback([&] { status = cmd_merge(file, other, out, prefer); });

    auto* extract = app.add_subcommand("extract", "Write embedded images or dataset bodies to a directory");
    extract->add_option("file", file, "SLN file")->required();
    extract->add_flag("--images", images, "Extract full-size images");
    extract->add_flag("--datasets", datasets, "Extract dataset contents");
    extract->add_option("-o,--output", out, "Output directory")->required();
    extract->callback([&] { status = cmd_extract(file, images, datasets, out); });

    auto* thumb = app.add_subcommand("thumb", "Scale a PNG (default: make a thumbnail)");
    thumb->add_option("image", file, "PNG file")->required();
    thumb->add_option("--scale", scale, "1:1, 1:2, 1:4 or 1:8");
    thumb->add_option("-o,--output", out, "Output PNG")->required();
    thumb->callback([&] { status = cmd_thumb(file, scale, out); });

    auto* diff = app.add_subcommand("diff", "List entry changes from a to b");
    diff->add_option("a", file, "Old notebook")->required();
    diff->add_option("b", other, "New notebook")->required();
    diff->add_option("--format", format, "text or json")->check(formats);
    diff->callback([&] { status = cmd_diff(file, other, format); });

    auto* generate = app.add_subcommand("generate", "Write a synthetic notebook for benchmarks");
    generate->add_option("-o,--output", out, "Output file")->required();
    auto* size_opt = generate->add_option("--size", size, "Target size, e.g. 400M");
    generate->add_option("--websites", websites, "Number of websites")->excludes(size_opt);
    generate->add_option("--seed", seed, "Random seed");
    generate->add_option("--manifest", manifest, "Also write the manifest here");
    generate->callback([&] { status = cmd_generate(out, size, websites, seed, manifest); });

    auto* rules = app.add_subcommand("rules", "List validation rules, or explain one");
    rules->add_option("id", rule_id, "Rule id");
    rules->callback([&] { status = cmd_rules(rule_id); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "sln: " << e.what() << "\n";
        return kUsage;
    } catch (const sln::schema::UnknownRule& e) {
        std::cerr << "sln: " << e.what() << "\n";
        return kUsage;
    } catch (const sln::ParseError& e) {
        std::cerr << "sln: " << file << ":" << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "sln: " << e.what() << "\n";
        return kFailure;
    }
    return status;
}
