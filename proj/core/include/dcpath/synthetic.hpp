#pragma once
// Deterministic synthetic graphs and tasks: random graphs for equivalence
// checking, and a planted-composition dataset whose target relation is an
// exact two-hop chain (ground truth best path with confidence 1).

#include "dcpath/kg.hpp"
#include "dcpath/rng.hpp"
#include "dcpath/task.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dcpath {

// Random triple soup over `entities` x `relations`; duplicates collapse, so
// the result may hold fewer than `triples` edges. Labels are e<i> / r<i>.
KnowledgeGraph random_graph(SplitRng& rng, std::size_t entities, std::size_t relations,
                            std::size_t triples);

// Training pairs drawn (without replacement) from the target relation's
// triples, in shuffled order; heads may repeat. Empty when the relation has
// no triples.
TaskSplit random_task(const KnowledgeGraph& kg, SplitRng& rng, RelationId target,
                      std::size_t train_pairs);

struct PlantedSpec {
    std::size_t chains = 66;          // head-mid-tail chains (3 entities each)
    std::size_t noise_relations = 5;
    std::size_t noise_edges = 300;
    double test_fraction = 0.3;
    std::uint64_t seed = 11;
    // Extra forks m -> extra tail on this many chains drop the planted
    // path's confidence below 1 (0 keeps it exact).
    std::size_t forked_chains = 0;
    // Self-looped filler entities, for pinning an exact entity count.
    std::size_t pad_entities = 0;
};

struct PlantedDataset {
    KnowledgeGraph kg;  // base graph, no inverse relations yet
    TaskSplit task;     // resolved against kg
    std::string target_label = "links_to";
    std::string step_one_label = "step_one";
    std::string step_two_label = "step_two";
};

// Chains h_i -(step_one)-> m_i -(step_two)-> t_i with (h_i, links_to, t_i),
// plus noise edges over distinct noise relations. The two-hop walk is the
// only realization of [step_one, step_two], so its confidence is exactly 1
// unless forked_chains adds alternate step_two endpoints.
PlantedDataset make_planted_composition(const PlantedSpec& spec);

// Writes kg.tsv and tasks/<task>/train_pos,test_pos under dir, the on-disk
// layout the CLI consumes.
void write_planted_dataset(const PlantedDataset& data, const std::filesystem::path& dir);

}  // namespace dcpath
