#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dcpath {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

inline constexpr EntityId kNoEntity = std::numeric_limits<EntityId>::max();
inline constexpr RelationId kNoRelation = std::numeric_limits<RelationId>::max();

// Suffix appended to a relation label to name its synthetic inverse.
inline constexpr std::string_view kInverseSuffix = "_inv";

// Bidirectional string <-> dense id table. Ids are contiguous from 0 in
// insertion order, so a fixed input order yields a fixed id assignment.
class Interner {
public:
    std::uint32_t intern(std::string_view label) {
        auto it = index_.find(std::string(label));
        if (it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(labels_.size());
        labels_.emplace_back(label);
        index_.emplace(labels_.back(), id);
        return id;
    }

    // Returns the id for a known label, or max() if absent.
    std::uint32_t find(std::string_view label) const {
        auto it = index_.find(std::string(label));
        return it == index_.end() ? std::numeric_limits<std::uint32_t>::max() : it->second;
    }

    bool contains(std::string_view label) const {
        return index_.count(std::string(label)) != 0;
    }

    const std::string& label(std::uint32_t id) const {
        if (id >= labels_.size()) throw std::out_of_range("Interner: id out of range");
        return labels_[id];
    }

    std::uint32_t size() const { return static_cast<std::uint32_t>(labels_.size()); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace dcpath
