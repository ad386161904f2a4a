#pragma once

#include "dcpath/kg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dcpath {

// One relation-reasoning task: the target relation plus disjoint train/test
// positive pairs. Pairs keep file order; per-head tail sets are derived.
struct TaskSplit {
    std::string name;
    std::string relation_label;
    RelationId relation = kNoRelation;
    std::vector<std::pair<EntityId, EntityId>> train;
    std::vector<std::pair<EntityId, EntityId>> test;

    // Tails t with (head, t) in the training pairs, sorted ascending.
    std::vector<EntityId> train_tails(EntityId head) const;
    // Tails known true for head from the graph, train, and test pairs.
    std::vector<EntityId> known_tails(const KnowledgeGraph& kg, EntityId head) const;

    std::vector<std::pair<EntityId, EntityId>> all_pairs() const;
};

// Reads dir/train_pos and dir/test_pos (head<TAB>tail lines). The target
// relation label comes from dir/relation.txt when present, else the directory
// name (labels with '/' cannot be directory names). Validates that entities
// and the relation exist in kg, and that train and test are disjoint.
TaskSplit load_task_split(const KnowledgeGraph& kg, const std::string& dir,
                          const std::string& name);

// Parses one head<TAB>tail pair file against the graph's entity table.
std::vector<std::pair<EntityId, EntityId>> load_pair_file(const KnowledgeGraph& kg,
                                                          const std::string& path);

}  // namespace dcpath
