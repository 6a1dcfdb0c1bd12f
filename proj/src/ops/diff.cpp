#include "sln/ops.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace sln::ops {

namespace {

using KeyTuple = std::tuple<std::string, std::string, std::size_t>;

KeyTuple as_tuple(const EntryKey& k) { return {k.name, k.location, k.ordinal}; }

std::vector<EntryKey> keys_of(const Notebook& nb) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    std::vector<EntryKey> keys;
    keys.reserve(nb.websites.size());
    for (const auto& w : nb.websites) {
        const std::size_t ordinal = ++counts[{w.name, w.location}];
        keys.push_back({w.name, w.location, ordinal});
    }
    return keys;
}

std::vector<std::string> changed_fields(const WebsiteEntry& x, const WebsiteEntry& y) {
    std::vector<std::string> fields;
    auto check = [&](bool same, const char* name) {
        if (!same) {
            fields.emplace_back(name);
        }
    };
    check(x.purpose == y.purpose, "purpose");
    check(x.date == y.date, "date");
    check(x.related == y.related, "related");
    check(x.contacts == y.contacts, "contacts");
    check(x.datasets == y.datasets, "datasets");
    check(x.images == y.images, "images");
    check(x.videos == y.videos, "videos");
    check(x.todos == y.todos, "todos");
    check(x.other_notes == y.other_notes, "othernotes");
    return fields;
}

// Positions within `seq` of one longest strictly increasing subsequence.
std::vector<bool> longest_increasing(const std::vector<std::size_t>& seq) {
    std::vector<std::size_t> tails; // index into seq of the smallest tail per length
    std::vector<std::size_t> prev(seq.size(), SIZE_MAX);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto it = std::lower_bound(tails.begin(), tails.end(), seq[i],
                                         [&](std::size_t t, std::size_t v) { return seq[t] < v; });
        if (it != tails.begin()) {
            prev[i] = *(it - 1);
        }
        if (it == tails.end()) {
            tails.push_back(i);
        } else {
            *it = i;
        }
    }
    std::vector<bool> member(seq.size(), false);
    for (std::size_t i = tails.empty() ? SIZE_MAX : tails.back(); i != SIZE_MAX; i = prev[i]) {
        member[i] = true;
    }
    return member;
}

} // namespace

std::string_view change_kind_name(ChangeKind kind) {
    switch (kind) {
    case ChangeKind::Added:
        return "added";
    case ChangeKind::Removed:
        return "removed";
    case ChangeKind::Modified:
        return "modified";
    case ChangeKind::Moved:
        return "moved";
    }
    return "?";
}

ChangeList diff(const Notebook& a, const Notebook& b) {
    const std::vector<EntryKey> ka = keys_of(a);
    const std::vector<EntryKey> kb = keys_of(b);
    std::map<KeyTuple, std::size_t> in_b;
    for (std::size_t j = 0; j < kb.size(); ++j) {
        in_b.emplace(as_tuple(kb[j]), j);
    }

    ChangeList changes;
    std::vector<std::size_t> b_of_survivor; // b positions of surviving entries, in a's order
    std::vector<std::size_t> a_of_b(kb.size(), SIZE_MAX);
    for (std::size_t i = 0; i < ka.size(); ++i) {
        const auto it = in_b.find(as_tuple(ka[i]));
        if (it == in_b.end()) {
            changes.push_back({ChangeKind::Removed, ka[i], i, {}, std::nullopt});
        } else {
            b_of_survivor.push_back(it->second);
            a_of_b[it->second] = i;
        }
    }

    const std::vector<bool> stays = longest_increasing(b_of_survivor);
    std::vector<bool> moved(kb.size(), false);
    for (std::size_t s = 0; s < b_of_survivor.size(); ++s) {
        moved[b_of_survivor[s]] = !stays[s];
    }

    for (std::size_t j = 0; j < kb.size(); ++j) {
        if (a_of_b[j] == SIZE_MAX) {
            changes.push_back({ChangeKind::Added, kb[j], j, {}, b.websites[j]});
            continue;
        }
        std::vector<std::string> fields = changed_fields(a.websites[a_of_b[j]], b.websites[j]);
        if (!fields.empty()) {
            changes.push_back({ChangeKind::Modified, kb[j], j, std::move(fields), b.websites[j]});
        }
        if (moved[j]) {
            changes.push_back({ChangeKind::Moved, kb[j], j, {}, std::nullopt});
        }
    }
    return changes;
}

Notebook patch(const Notebook& a, const ChangeList& changes) {
    std::map<KeyTuple, const Change*> removed;
    std::map<KeyTuple, const Change*> modified;
    std::map<KeyTuple, std::size_t> moved_to;
    std::vector<const Change*> added;
    for (const Change& c : changes) {
        switch (c.kind) {
        case ChangeKind::Removed:
            removed.emplace(as_tuple(c.key), &c);
            break;
        case ChangeKind::Modified:
            if (!c.entry) {
                throw std::invalid_argument("modified change without entry");
            }
            modified.emplace(as_tuple(c.key), &c);
            break;
        case ChangeKind::Moved:
            moved_to.emplace(as_tuple(c.key), c.index);
            break;
        case ChangeKind::Added:
            if (!c.entry) {
                throw std::invalid_argument("added change without entry");
            }
            added.push_back(&c);
            break;
        }
    }

    const std::vector<EntryKey> ka = keys_of(a);
    std::vector<std::pair<std::size_t, const WebsiteEntry*>> placed;
    std::vector<const WebsiteEntry*> in_order;
    for (std::size_t i = 0; i < ka.size(); ++i) {
        const KeyTuple key = as_tuple(ka[i]);
        if (removed.count(key) != 0) {
            continue;
        }
        const auto mod = modified.find(key);
        const WebsiteEntry* entry = mod != modified.end() ? &*mod->second->entry : &a.websites[i];
        const auto mv = moved_to.find(key);
        if (mv != moved_to.end()) {
            placed.emplace_back(mv->second, entry);
        } else {
            in_order.push_back(entry);
        }
    }
    for (const Change* c : added) {
        placed.emplace_back(c->index, &*c->entry);
    }

    const std::size_t total = placed.size() + in_order.size();
    std::vector<const WebsiteEntry*> slots(total, nullptr);
    for (const auto& [index, entry] : placed) {
        if (index >= total || slots[index] != nullptr) {
            throw std::invalid_argument("change list does not apply: bad target index " + std::to_string(index));
        }
        slots[index] = entry;
    }
    std::size_t next = 0;
    for (auto& slot : slots) {
        if (slot == nullptr) {
            slot = in_order[next++];
        }
    }

    Notebook out;
    out.schema_location = a.schema_location;
    out.websites.reserve(total);
    for (const WebsiteEntry* entry : slots) {
        out.websites.push_back(*entry);
    }
    return out;
}

std::string to_text(const ChangeList& changes) {
    std::string out;
    for (const Change& c : changes) {
        out.append(change_kind_name(c.kind)).append(" ").append(std::to_string(c.index + 1)).append(" ");
        out.append(c.key.name).append(" <").append(c.key.location).append(">");
        if (c.key.ordinal > 1) {
            out.append(" #").append(std::to_string(c.key.ordinal));
        }
        for (std::size_t i = 0; i < c.fields.size(); ++i) {
            out.append(i == 0 ? ": " : ", ").append(c.fields[i]);
        }
        out.append("\n");
    }
    return out;
}

std::string to_json(const ChangeList& changes) {
    auto doc = nlohmann::ordered_json::array();
    for (const Change& c : changes) {
        nlohmann::ordered_json item;
        item["kind"] = change_kind_name(c.kind);
        item["index"] = c.index + 1;
        item["name"] = c.key.name;
        item["location"] = c.key.location;
        item["ordinal"] = c.key.ordinal;
        item["fields"] = c.fields;
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

} // namespace sln::ops
