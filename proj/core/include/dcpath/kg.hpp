#pragma once
// Knowledge graph substrate: triple loading, interning, inverse-relation
// expansion, task-edge masking, and read-only traversal used by every
// other module.
//
// The graph is immutable once built. Masking never mutates it: a MaskedView
// layers a set of hidden (head, tail) pairs for one relation (and its
// inverse) on top of the shared graph, so one loaded graph serves all tasks.

#include "dcpath/ids.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dcpath {

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct LoadStats {
    std::size_t lines = 0;
    std::size_t duplicates = 0;
    std::size_t triples = 0;
    std::size_t entities = 0;
    std::size_t relations = 0;
};

class KnowledgeGraph {
public:
    // Parses head<TAB>relation<TAB>tail lines. Duplicate triples collapse;
    // a line without exactly two tabs raises std::runtime_error naming the
    // line number. Empty lines are ignored.
    static KnowledgeGraph load_triples(std::istream& in, LoadStats* stats = nullptr);
    static KnowledgeGraph load_triples_file(const std::string& path, LoadStats* stats = nullptr);

    std::size_t entity_count() const { return entities_.size(); }
    std::size_t relation_count() const { return relations_.size(); }
    std::size_t triple_count() const { return triple_count_; }

    const Interner& entities() const { return entities_; }
    const Interner& relations() const { return relations_; }

    bool has_entity(EntityId e) const { return e < entities_.size(); }
    bool has_relation(RelationId r) const { return r < relations_.size(); }

    // Neighbors of e under r, sorted ascending by entity id. Unknown entity
    // or relation yields an empty span.
    std::span<const EntityId> neighbors(EntityId e, RelationId r) const;

    bool has_triple(EntityId h, RelationId r, EntityId t) const;

    // Relations with at least one outgoing edge from e, ascending.
    std::span<const RelationId> relations_of(EntityId e) const;

    std::size_t out_degree(EntityId e, RelationId r) const { return neighbors(e, r).size(); }

    // Per-relation out-degree of e as (relation, degree) pairs, ascending by
    // relation id.
    std::vector<std::pair<RelationId, std::size_t>> out_degree(EntityId e) const;

    // The triple set in (head, relation, tail) lexicographic order.
    std::vector<Triple> triples() const;

    // Writes one head<TAB>relation<TAB>tail line per triple, sorted; the
    // inverse of load_triples up to line order.
    void serialize(std::ostream& out) const;

    // Id of the inverse of r (by label suffix), or kNoRelation.
    RelationId inverse_of(RelationId r) const;

    void for_each_triple(const std::function<void(EntityId, RelationId, EntityId)>& fn) const;

private:
    friend KnowledgeGraph add_inverse_relations(const KnowledgeGraph&, std::size_t);
    friend class GraphBuilder;

    struct RelationEdges {
        RelationId relation;
        std::vector<EntityId> neighbors;  // sorted, unique
    };

    void finalize();  // sorts adjacency, dedups, recounts triples

    Interner entities_;
    Interner relations_;
    std::vector<std::vector<RelationEdges>> adjacency_;  // indexed by head entity
    std::vector<std::vector<RelationId>> relation_index_;  // relations_of cache
    std::size_t triple_count_ = 0;
};

// Assembles a graph from in-memory triples (tests, synthetic datasets).
class GraphBuilder {
public:
    GraphBuilder& add(std::string_view head, std::string_view relation, std::string_view tail);
    KnowledgeGraph build();

private:
    KnowledgeGraph kg_;
    std::vector<Triple> staged_;
};

// Returns a copy of kg extended with (t, r_inv, h) for every (h, r, t) whose
// relation passes the fan-in filter: a relation is filtered out (gains no
// inverse triples) when some tail is reached from more than fanin_threshold
// distinct heads. Throws if kg already carries inverse-suffixed relations.
KnowledgeGraph add_inverse_relations(const KnowledgeGraph& kg, std::size_t fanin_threshold);

// Hashable (head, tail) pair set.
struct PairHash {
    std::size_t operator()(const std::pair<EntityId, EntityId>& p) const {
        return std::hash<std::uint64_t>()((std::uint64_t(p.first) << 32) | p.second);
    }
};
using PairSet = std::unordered_set<std::pair<EntityId, EntityId>, PairHash>;

// Read-only traversal view that hides (h, relation, t) and (t, relation_inv, h)
// for a set of (h, t) pairs. With no mask it is a transparent wrapper.
class MaskedView {
public:
    explicit MaskedView(const KnowledgeGraph& kg)
        : kg_(&kg) {}

    MaskedView(const KnowledgeGraph& kg, RelationId relation, PairSet masked_pairs);

    const KnowledgeGraph& graph() const { return *kg_; }

    bool edge_visible(EntityId h, RelationId r, EntityId t) const {
        if (r == masked_rel_ && masked_pairs_.count({h, t})) return false;
        if (r == masked_inv_ && masked_pairs_.count({t, h})) return false;
        return true;
    }

    // Visits visible neighbors of e under r in ascending entity order.
    template <typename Fn>
    void for_each_neighbor(EntityId e, RelationId r, Fn&& fn) const {
        auto base = kg_->neighbors(e, r);
        if (r != masked_rel_ && r != masked_inv_) {
            for (EntityId n : base) fn(n);
            return;
        }
        for (EntityId n : base)
            if (edge_visible(e, r, n)) fn(n);
    }

    std::vector<EntityId> neighbors(EntityId e, RelationId r) const;
    std::size_t out_degree(EntityId e, RelationId r) const;
    std::vector<std::pair<RelationId, std::size_t>> out_degree(EntityId e) const;
    std::span<const RelationId> relations_of(EntityId e) const { return kg_->relations_of(e); }
    bool has_triple(EntityId h, RelationId r, EntityId t) const {
        return kg_->has_triple(h, r, t) && edge_visible(h, r, t);
    }

private:
    const KnowledgeGraph* kg_;
    RelationId masked_rel_ = kNoRelation;
    RelationId masked_inv_ = kNoRelation;
    PairSet masked_pairs_;
};

// View of kg with the listed (head, tail) pairs of `relation` hidden in both
// directions. Absent pairs are a no-op; the relation itself must exist.
MaskedView mask_task_edges(const KnowledgeGraph& kg, RelationId relation,
                           const std::vector<std::pair<EntityId, EntityId>>& pairs);

}  // namespace dcpath
