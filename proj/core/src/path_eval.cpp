#include "dcpath/path_eval.hpp"

#include <stdexcept>

namespace dcpath {

namespace {

// Enumerates every walk from e along path[depth..], counting arrivals at the
// final level. `target` narrows the count to walks ending there; kNoEntity
// counts all endpoints.
std::uint64_t count_walks(const MaskedView& view, EntityId e, const PathFeature& path,
                          std::size_t depth, EntityId target) {
    if (depth == path.length()) return (target == kNoEntity || e == target) ? 1 : 0;
    std::uint64_t total = 0;
    view.for_each_neighbor(e, path.relations[depth], [&](EntityId n) {
        total += count_walks(view, n, path, depth + 1, target);
    });
    return total;
}

}  // namespace

std::uint64_t path_entity_support(const MaskedView& view, EntityId head, EntityId tail,
                                  const PathFeature& path) {
    if (path.length() == 0) throw std::invalid_argument("path_entity_support: empty path");
    return count_walks(view, head, path, 0, tail);
}

std::uint64_t path_count(const MaskedView& view, EntityId head, const PathFeature& path) {
    if (path.length() == 0) throw std::invalid_argument("path_count: empty path");
    return count_walks(view, head, path, 0, kNoEntity);
}

int cover(const MaskedView& view, EntityId head, EntityId tail, const PathFeature& path) {
    return path_entity_support(view, head, tail, path) >= 1 ? 1 : 0;
}

double path_confidence(const MaskedView& view,
                       const std::vector<std::pair<EntityId, EntityId>>& pairs,
                       const PathFeature& path) {
    if (pairs.empty()) throw std::invalid_argument("path_confidence: empty pair list");
    std::uint64_t support_sum = 0;
    std::uint64_t count_sum = 0;
    for (const auto& [h, t] : pairs) {
        support_sum += path_entity_support(view, h, t, path);
        count_sum += path_count(view, h, path);
    }
    if (count_sum == 0) return 0.0;
    return static_cast<double>(support_sum) / static_cast<double>(count_sum);
}

double pair_coverage(const MaskedView& view,
                     const std::vector<std::pair<EntityId, EntityId>>& pairs,
                     const PathFeature& path) {
    if (pairs.empty()) throw std::invalid_argument("pair_coverage: empty pair list");
    std::uint64_t covered = 0;
    for (const auto& [h, t] : pairs) covered += cover(view, h, t, path);
    return static_cast<double>(covered) / static_cast<double>(pairs.size());
}

WalkDistribution walk_distribution(const MaskedView& view, EntityId head,
                                   const PathFeature& path) {
    if (path.length() == 0) throw std::invalid_argument("walk_distribution: empty path");
    WalkDistribution frontier{{head, 1}};
    for (RelationId r : path.relations) {
        WalkDistribution next;
        for (const auto& [e, walks] : frontier) {
            view.for_each_neighbor(e, r, [&, w = walks](EntityId n) { next[n] += w; });
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

}  // namespace dcpath
