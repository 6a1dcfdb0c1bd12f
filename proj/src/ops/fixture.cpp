#include "sln/ops.hpp"

#include "sln/media.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>

namespace sln::ops {

namespace {

// Forwards to another buffer (or nowhere) and counts what passes through.
class CountingBuf : public std::streambuf {
public:
    explicit CountingBuf(std::streambuf* target) : target_(target) {}

    std::uint64_t count() const { return count_; }

protected:
    int_type overflow(int_type ch) override {
        if (traits_type::eq_int_type(ch, traits_type::eof())) {
            return traits_type::not_eof(ch);
        }
        ++count_;
        return target_ != nullptr ? target_->sputc(traits_type::to_char_type(ch)) : ch;
    }

    std::streamsize xsputn(const char* s, std::streamsize n) override {
        count_ += static_cast<std::uint64_t>(n);
        return target_ != nullptr ? target_->sputn(s, n) : n;
    }

    int sync() override { return target_ != nullptr ? target_->pubsync() : 0; }

private:
    std::streambuf* target_;
    std::uint64_t count_ = 0;
};

constexpr std::string_view kWords[] = {"solar",  "flare", "corona",   "wind",  "magnetogram", "sunspot",
                                       "x-ray",  "flux",  "prominence", "CME",  "heliosphere", "EUV",
                                       "limb",   "disk",  "archive",  "daily", "realtime",    "synoptic"};

class Generator {
public:
    explicit Generator(const FixtureSpec& spec) : spec_(spec), rng_(spec.seed) {
        if (spec.images_per_site > 0) {
            for (int i = 0; i < 4; ++i) {
                media::Raster raster = noise(spec.image_width, spec.image_height);
                pool_.push_back(media::make_image_record("pool", "", raster));
            }
        }
    }

    WebsiteEntry site(std::uint64_t n) {
        WebsiteEntry e;
        e.name = "Gateway " + std::to_string(n + 1) + " " + word();
        e.location = "http://gateway" + std::to_string(n + 1) + ".example.org/data/";
        e.purpose = word() + " " + word() + " & " + word() + " data";
        e.date = Date::parse(random_date());
        e.related.push_back({e.location + "archive/", "Archive of " + word() + " products"});
        e.contacts.push_back({"Contact", std::to_string(n + 1), "contact" + std::to_string(n + 1) + "@example.org",
                              "example.org", "Data desk"});
        for (std::uint32_t d = 0; d < spec_.datasets_per_site; ++d) {
            e.datasets.push_back({"series-" + std::to_string(d + 1) + ".csv", word() + " time series",
                                  csv(spec_.dataset_bytes)});
        }
        for (std::uint32_t i = 0; i < spec_.images_per_site; ++i) {
            ImageRecord img = pool_[rng_() % pool_.size()];
            img.name = word() + "-" + std::to_string(i + 1) + ".png";
            img.notes = "Synthetic " + word() + " frame";
            e.images.push_back(std::move(img));
        }
        e.todos.push_back({"Check " + word() + " plots", e.date, (rng_() & 1) != 0});
        e.other_notes.push_back({"Generated from seed " + std::to_string(spec_.seed)});
        return e;
    }

private:
    std::string word() { return std::string(kWords[rng_() % std::size(kWords)]); }

    std::string random_date() {
        const int year = 1996 + static_cast<int>(rng_() % 30);
        const int month = 1 + static_cast<int>(rng_() % 12);
        const int day = 1 + static_cast<int>(rng_() % 28);
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        return buf;
    }

    media::Raster noise(std::uint32_t w, std::uint32_t h) {
        media::Raster r = media::Raster::filled(w, h, {0, 0, 0, 255});
        for (std::uint32_t y = 0; y < h; ++y) {
            for (std::uint32_t x = 0; x < w; ++x) {
                const auto v = rng_();
                r.set(x, y, {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                             static_cast<std::uint8_t>(v >> 16), 255});
            }
        }
        return r;
    }

    // Exactly `size` bytes of CSV-like text.
    std::string csv(std::uint64_t size) {
        std::string out = "time,flux,counts\n";
        out.reserve(size + 64);
        char line[64];
        std::uint64_t t = rng_() % 86400;
        while (out.size() < size) {
            char* p = line;
            p = std::to_chars(p, line + sizeof line, t++).ptr;
            *p++ = ',';
            p = std::to_chars(p, line + sizeof line, rng_() % 1000).ptr;
            *p++ = '.';
            p = std::to_chars(p, line + sizeof line, 100000 + rng_() % 900000).ptr;
            *p++ = 'e';
            *p++ = '-';
            *p++ = '0';
            *p++ = '7';
            *p++ = ',';
            p = std::to_chars(p, line + sizeof line, rng_() % 65536).ptr;
            *p++ = '\n';
            out.append(line, p);
        }
        out.resize(size);
        return out;
    }

    FixtureSpec spec_;
    std::mt19937_64 rng_;
    std::vector<ImageRecord> pool_;
};

} // namespace

FixtureManifest generate_fixture(const FixtureSpec& spec, std::ostream& sink) {
    CountingBuf counter(sink.rdbuf());
    std::ostream out(&counter);
    Generator gen(spec);
    NotebookWriter writer(out);
    FixtureManifest manifest;
    writer.begin(std::string(kSchemaLocationHint));
    for (std::uint64_t n = 0; n < spec.website_count; ++n) {
        const WebsiteEntry entry = gen.site(n);
        writer.write(entry);
        manifest.stats.website_count += 1;
        for (const auto& d : entry.datasets) {
            manifest.stats.dataset_bytes += d.content.size();
        }
        for (const auto& img : entry.images) {
            manifest.stats.image_count += 1;
            manifest.stats.total_media_bytes += img.full.payload.size() + img.thumbnail.payload.size();
        }
    }
    writer.finish();
    manifest.file_bytes = counter.count();
    return manifest;
}

FixtureManifest generate_fixture(const FixtureSpec& spec, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + file.string() + "' for writing");
    }
    FixtureManifest manifest = generate_fixture(spec, out);
    out.close();
    if (!out) {
        throw IoError("cannot write '" + file.string() + "'");
    }
    return manifest;
}

FixtureSpec plan_fixture(std::uint64_t target_bytes, std::uint64_t seed) {
    FixtureSpec spec;
    spec.seed = seed;
    spec.datasets_per_site = 4;
    spec.dataset_bytes = std::clamp<std::uint64_t>(target_bytes / 256, 256, 1 << 20);
    spec.images_per_site = 2;

    std::ostream discard(nullptr);
    spec.website_count = 1;
    const std::uint64_t one = generate_fixture(spec, discard).file_bytes;
    spec.website_count = 2;
    const std::uint64_t two = generate_fixture(spec, discard).file_bytes;
    const std::uint64_t per_site = two - one;
    const std::uint64_t overhead = one - per_site;
    if (target_bytes <= overhead) {
        spec.website_count = 0;
        return spec;
    }
    // Whole sites first, then spread what is left over the dataset bodies,
    // which are plain ASCII and grow the file byte for byte.
    spec.website_count = std::max<std::uint64_t>(1, (target_bytes - overhead) / per_site);
    const auto rest = static_cast<std::int64_t>(target_bytes - overhead) -
                      static_cast<std::int64_t>(spec.website_count * per_site);
    const auto bodies = static_cast<std::int64_t>(spec.website_count * spec.datasets_per_site);
    spec.dataset_bytes = static_cast<std::uint64_t>(
        std::max<std::int64_t>(64, static_cast<std::int64_t>(spec.dataset_bytes) + rest / bodies));
    return spec;
}

std::string to_json(const FixtureManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["website_count"] = manifest.stats.website_count;
    doc["dataset_bytes"] = manifest.stats.dataset_bytes;
    doc["image_count"] = manifest.stats.image_count;
    doc["total_media_bytes"] = manifest.stats.total_media_bytes;
    doc["file_bytes"] = manifest.file_bytes;
    return doc.dump(2) + "\n";
}

} // namespace sln::ops
