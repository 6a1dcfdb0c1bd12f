#include "sln/ops.hpp"

#include <map>

namespace sln::ops {

Notebook merge(const Notebook& a, const Notebook& b, MergeStrategy strategy) {
    Notebook out;
    out.schema_location = a.schema_location ? a.schema_location : b.schema_location;
    out.websites = a.websites;
    if (strategy == MergeStrategy::KeepBoth) {
        out.websites.insert(out.websites.end(), b.websites.begin(), b.websites.end());
        return out;
    }

    using Key = std::pair<std::string_view, std::string_view>;
    std::map<Key, std::vector<std::size_t>> slots;
    for (std::size_t i = 0; i < a.websites.size(); ++i) {
        slots[{a.websites[i].name, a.websites[i].location}].push_back(i);
    }
    std::map<Key, std::size_t> seen;
    for (const auto& entry : b.websites) {
        const Key key{entry.name, entry.location};
        const std::size_t occurrence = seen[key]++;
        const auto it = slots.find(key);
        if (it == slots.end() || occurrence >= it->second.size()) {
            out.websites.push_back(entry);
        } else if (strategy == MergeStrategy::PreferSecond) {
            out.websites[it->second[occurrence]] = entry;
        }
    }
    return out;
}

} // namespace sln::ops
