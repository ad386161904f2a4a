#pragma once
// Exact path-feature measures over a (possibly masked) graph view:
// walk support between a pair, walk count from a head, pair cover, and their
// aggregates path confidence and pair coverage. These are the ground truth
// the dynamic search engine is checked against.
//
// A walk is a distinct entity sequence following the relation sequence; an
// entity may repeat (cycles count within the length bound). Two routes are
// provided: a literal recursive enumeration, and a frontier walk-count
// distribution (per-level sparse matrix-vector product). They agree exactly;
// callers that only need ratios at scale use the distribution.

#include "dcpath/kg.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dcpath {

// Ordered relation sequence used as a reasoning feature, length >= 1.
struct PathFeature {
    std::vector<RelationId> relations;

    std::size_t length() const { return relations.size(); }
    friend bool operator==(const PathFeature&, const PathFeature&) = default;
};

struct PathFeatureHash {
    std::size_t operator()(const PathFeature& p) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (RelationId r : p.relations) {
            h ^= r;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

using WalkDistribution = std::unordered_map<EntityId, std::uint64_t>;

// Number of walks head -> ... -> tail realizing `path`; may exceed 1 when
// several intermediate routes exist. Recursive enumeration.
std::uint64_t path_entity_support(const MaskedView& view, EntityId head, EntityId tail,
                                  const PathFeature& path);

// Number of full-length walks from head under `path`, to any endpoint.
std::uint64_t path_count(const MaskedView& view, EntityId head, const PathFeature& path);

// 1 iff support >= 1.
int cover(const MaskedView& view, EntityId head, EntityId tail, const PathFeature& path);

// Sum of supports over pairs divided by sum of counts over heads; 0 when the
// denominator is 0. Throws on an empty pair list.
double path_confidence(const MaskedView& view,
                       const std::vector<std::pair<EntityId, EntityId>>& pairs,
                       const PathFeature& path);

// Fraction of pairs with cover = 1. Throws on an empty pair list.
double pair_coverage(const MaskedView& view,
                     const std::vector<std::pair<EntityId, EntityId>>& pairs,
                     const PathFeature& path);

// Walk counts per endpoint after following `path` from head: result[t] is the
// number of walks head -> t. Sum of values equals path_count; result[tail]
// equals path_entity_support. Frontier product form, exact.
WalkDistribution walk_distribution(const MaskedView& view, EntityId head,
                                   const PathFeature& path);

}  // namespace dcpath
