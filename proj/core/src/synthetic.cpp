#include "dcpath/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace dcpath {

KnowledgeGraph random_graph(SplitRng& rng, std::size_t entities, std::size_t relations,
                            std::size_t triples) {
    GraphBuilder builder;
    for (std::size_t i = 0; i < triples; ++i) {
        auto h = rng.next_below(entities);
        auto r = rng.next_below(relations);
        auto t = rng.next_below(entities);
        builder.add("e" + std::to_string(h), "r" + std::to_string(r), "e" + std::to_string(t));
    }
    return builder.build();
}

TaskSplit random_task(const KnowledgeGraph& kg, SplitRng& rng, RelationId target,
                      std::size_t train_pairs) {
    TaskSplit task;
    task.name = "random";
    task.relation = target;
    task.relation_label = kg.relations().label(target);

    std::vector<std::pair<EntityId, EntityId>> candidates;
    kg.for_each_triple([&](EntityId h, RelationId r, EntityId t) {
        if (r == target) candidates.emplace_back(h, t);
    });
    if (candidates.empty()) return task;
    auto picks = rng.sample_indices(static_cast<std::uint32_t>(candidates.size()),
                                    static_cast<std::uint32_t>(std::min(train_pairs, candidates.size())));
    for (auto i : picks) task.train.push_back(candidates[i]);
    return task;
}

PlantedDataset make_planted_composition(const PlantedSpec& spec) {
    PlantedDataset data;
    SplitRng rng = SplitRng::stream(spec.seed, "planted");
    GraphBuilder builder;

    std::vector<std::string> heads, mids, tails;
    for (std::size_t i = 0; i < spec.chains; ++i) {
        heads.push_back("h" + std::to_string(i));
        mids.push_back("m" + std::to_string(i));
        tails.push_back("t" + std::to_string(i));
    }
    for (std::size_t i = 0; i < spec.chains; ++i) {
        builder.add(heads[i], data.step_one_label, mids[i]);
        builder.add(mids[i], data.step_two_label, tails[i]);
        builder.add(heads[i], data.target_label, tails[i]);
    }
    for (std::size_t i = 0; i < spec.forked_chains && i < spec.chains; ++i)
        builder.add(mids[i], data.step_two_label, "t" + std::to_string((i + 1) % spec.chains));

    // Noise edges over separate relations; they can never spell the planted
    // two-relation sequence.
    auto any_entity = [&](SplitRng& r) -> const std::string& {
        auto pick = r.next_below(3 * spec.chains);
        if (pick < spec.chains) return heads[pick];
        if (pick < 2 * spec.chains) return mids[pick - spec.chains];
        return tails[pick - 2 * spec.chains];
    };
    for (std::size_t i = 0; i < spec.noise_edges; ++i) {
        std::string rel = "noise" + std::to_string(rng.next_below(std::max<std::size_t>(spec.noise_relations, 1)));
        builder.add(any_entity(rng), rel, any_entity(rng));
    }

    // Pads are only reachable through their own self-loop; they cannot touch
    // the planted statistics.
    std::string pad_relation = spec.noise_relations > 0 ? "noise0" : data.step_one_label;
    for (std::size_t i = 0; i < spec.pad_entities; ++i) {
        std::string pad = "pad" + std::to_string(i);
        builder.add(pad, pad_relation, pad);
    }

    data.kg = builder.build();

    data.task.name = data.target_label;
    data.task.relation_label = data.target_label;
    data.task.relation = data.kg.relations().find(data.target_label);

    std::vector<std::size_t> order(spec.chains);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        auto j = i + rng.next_below(order.size() - i);
        std::swap(order[i], order[j]);
    }
    std::size_t test_count = static_cast<std::size_t>(static_cast<double>(spec.chains) * spec.test_fraction);
    for (std::size_t i = 0; i < order.size(); ++i) {
        EntityId h = data.kg.entities().find(heads[order[i]]);
        EntityId t = data.kg.entities().find(tails[order[i]]);
        if (i < test_count)
            data.task.test.emplace_back(h, t);
        else
            data.task.train.emplace_back(h, t);
    }
    return data;
}

void write_planted_dataset(const PlantedDataset& data, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "tasks" / data.task.name);

    std::ofstream kg_out(dir / "kg.tsv");
    data.kg.serialize(kg_out);

    auto write_pairs = [&](const fs::path& path,
                           const std::vector<std::pair<EntityId, EntityId>>& pairs) {
        std::ofstream out(path);
        for (const auto& [h, t] : pairs)
            out << data.kg.entities().label(h) << '\t' << data.kg.entities().label(t) << '\n';
    };
    write_pairs(dir / "tasks" / data.task.name / "train_pos", data.task.train);
    write_pairs(dir / "tasks" / data.task.name / "test_pos", data.task.test);
}

}  // namespace dcpath
