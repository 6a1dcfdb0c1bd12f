#pragma once

// Shared by the unit tests and the acceptance binary.

#include "sln/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sln::testkit {

std::string data_path(std::string_view name);
std::string read_file(const std::string& path);

/// Random model-valid notebooks. Text mixes ASCII, markup characters,
/// whitespace controls, BMP and supplementary-plane characters.
class NotebookGen {
public:
    explicit NotebookGen(std::uint64_t seed) : rng_(seed) {}

    std::string text(std::size_t max_len, bool allow_empty = true);
    std::string word();
    Date date();
    MediaBlob blob(std::size_t max_len);
    WebsiteEntry entry();
    Notebook notebook(std::size_t max_sites);

    std::mt19937_64& rng() { return rng_; }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

private:
    std::mt19937_64 rng_;
};

/// One website that uses every element and attribute of the format.
Notebook full_notebook();

struct Mutant {
    std::string rule_id;
    std::string what;
    std::string document;
};

/// One minimal edit of the canonical full_notebook document per catalogue rule.
std::vector<Mutant> mutants();

/// Replaces the single occurrence of `from`; throws if it is missing or repeated.
std::string replace_once(std::string_view doc, std::string_view from, std::string_view to);

/// Entity escaping written independently of the serializer, char by char.
std::string oracle_escape_text(std::string_view text);

} // namespace sln::testkit
