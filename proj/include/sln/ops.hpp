#pragma once

#include "sln/codec.hpp"
#include "sln/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sln::ops {

// ---------------------------------------------------------------------------
// Merge. Entries collide when name and location are both equal.

enum class MergeStrategy { KeepBoth, PreferFirst, PreferSecond };

/// Non-colliding entries keep their order, a's before b's.
/// PreferFirst drops b's colliding entries. PreferSecond puts b's version in
/// the slot of the a entry it collides with (matched by occurrence).
/// The schema location comes from `a`, or from `b` when `a` has none.
Notebook merge(const Notebook& a, const Notebook& b, MergeStrategy strategy);

// ---------------------------------------------------------------------------
// Diff. Entries are matched by (name, location, occurrence number).

struct EntryKey {
    std::string name;
    std::string location;
    std::size_t ordinal = 1;
    bool operator==(const EntryKey&) const = default;
};

enum class ChangeKind { Added, Removed, Modified, Moved };

std::string_view change_kind_name(ChangeKind kind);

struct Change {
    ChangeKind kind = ChangeKind::Added;
    EntryKey key;
    /// Position in b for Added, Modified and Moved; position in a for Removed.
    std::size_t index = 0;
    /// Modified only: the groups that differ (purpose, date, related, ...).
    std::vector<std::string> fields;
    /// Added and Modified: the entry as it is in b.
    std::optional<WebsiteEntry> entry;
    bool operator==(const Change&) const = default;
};

using ChangeList = std::vector<Change>;

/// Removed changes first (in a's order), then the rest in b's order. Moved
/// lists the fewest entries whose relocation turns a's order into b's.
ChangeList diff(const Notebook& a, const Notebook& b);
/// patch(a, diff(a, b)).websites == b.websites.
Notebook patch(const Notebook& a, const ChangeList& changes);

std::string to_text(const ChangeList& changes);
std::string to_json(const ChangeList& changes);

// ---------------------------------------------------------------------------
// Extraction

struct ExtractedFile {
    std::string file;      // name inside the output directory
    std::size_t website = 0; // 1-based
    std::string record;
    std::string media_type;
    std::uint64_t bytes = 0;
};

using Manifest = std::vector<ExtractedFile>;

/// Portable file name: keeps [A-Za-z0-9._-], writes other bytes as %XX and
/// escapes a leading dot.
std::string sanitize_file_name(std::string_view name);

/// Writes every image's full payload as `<website>-<name>.<ext>`. Throws IoError.
Manifest extract_media(const Notebook& nb, const std::filesystem::path& directory);
/// Writes every dataset body as `<website>-<name>.txt` (or `.xml`). Throws IoError.
Manifest extract_datasets(const Notebook& nb, const std::filesystem::path& directory);

std::string to_json(const Manifest& manifest);

// ---------------------------------------------------------------------------
// Synthetic fixtures

struct FixtureSpec {
    std::uint64_t website_count = 0;
    std::uint32_t datasets_per_site = 0;
    std::uint64_t dataset_bytes = 0; // per dataset
    std::uint32_t images_per_site = 0;
    std::uint32_t image_width = 64;
    std::uint32_t image_height = 64;
    std::uint64_t seed = 1;
};

/// Ground truth recorded while generating; matches stream_stats of the output.
struct FixtureManifest {
    StreamStats stats;
    std::uint64_t file_bytes = 0;
};

/// Deterministic for a given spec. Writes the document to `sink`.
FixtureManifest generate_fixture(const FixtureSpec& spec, std::ostream& sink);
/// Throws IoError.
FixtureManifest generate_fixture(const FixtureSpec& spec, const std::filesystem::path& file);

/// A spec whose output lands within a few percent of `target_bytes`, built
/// from 1 MiB datasets and small images.
FixtureSpec plan_fixture(std::uint64_t target_bytes, std::uint64_t seed = 1);

std::string to_json(const FixtureManifest& manifest);

} // namespace sln::ops
