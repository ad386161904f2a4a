#include "dcpath/oracle_check.hpp"

#include "dcpath/path_eval.hpp"
#include "dcpath/search.hpp"

#include <sstream>

namespace dcpath {

namespace {

std::string describe_path(const PathFeature& path, const KnowledgeGraph& kg) {
    std::string out;
    for (std::size_t i = 0; i < path.relations.size(); ++i) {
        if (i) out += ",";
        out += kg.relations().label(path.relations[i]);
    }
    return out;
}

}  // namespace

bool check_exhaustive_equivalence(const KnowledgeGraph& kg, const TaskSplit& task,
                                  std::size_t l_max, std::size_t* paths_compared,
                                  std::string* counterexample) {
    SearchConfig cfg;
    cfg.l_max = l_max;
    cfg = cfg.exhaustive();
    SearchResult result = run_path_search(kg, task, cfg);

    // Replay the pair sequence the search saw, with the same per-pair masks.
    struct PairContext {
        EntityId head;
        std::vector<EntityId> tails;
    };
    std::vector<PairContext> pairs;
    for (const auto& [head, tail] : task.train) {
        (void)tail;
        if (!kg.has_entity(head)) continue;
        pairs.push_back({head, task.train_tails(head)});
    }

    for (std::size_t column = 0; column < result.pool.size(); ++column) {
        const PathPoolEntry& entry = result.pool[column];
        std::uint64_t support_sum = 0;
        std::uint64_t count_sum = 0;
        std::uint64_t cover_sum = 0;
        std::uint64_t seen = 0;
        for (std::size_t k = entry.first_pair; k < pairs.size(); ++k) {
            const auto& ctx = pairs[k];
            std::vector<std::pair<EntityId, EntityId>> masked;
            for (EntityId t : ctx.tails) masked.emplace_back(ctx.head, t);
            MaskedView view = mask_task_edges(kg, task.relation, masked);

            // Set support composes the per-tail pair measure over the tail set.
            std::uint64_t support = 0;
            for (EntityId t : ctx.tails) support += path_entity_support(view, ctx.head, t, entry.path);
            std::uint64_t count = path_count(view, ctx.head, entry.path);
            support_sum += support;
            count_sum += count;
            cover_sum += support >= 1 ? 1 : 0;
            ++seen;
        }
        ++*paths_compared;
        if (support_sum != entry.support_sum || count_sum != entry.count_sum ||
            cover_sum != entry.cover_sum || seen != entry.pairs_seen) {
            if (counterexample) {
                std::ostringstream msg;
                msg << "path [" << describe_path(entry.path, kg) << "] task " << task.relation_label
                    << ": search support/count/cover/pairs = " << entry.support_sum << "/"
                    << entry.count_sum << "/" << entry.cover_sum << "/" << entry.pairs_seen
                    << " but exact measures give " << support_sum << "/" << count_sum << "/"
                    << cover_sum << "/" << seen;
                *counterexample = msg.str();
            }
            return false;
        }
    }
    return true;
}

OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg) {
    OracleCheckReport report;
    if (cfg.graphs == 0 || cfg.max_entities == 0) {
        report.vacuous = true;
        return report;
    }

    for (std::size_t g = 0; g < cfg.graphs; ++g) {
        SplitRng rng = SplitRng::stream(cfg.seed, "oracle-check", g);
        std::size_t entities = 5 + rng.next_below(std::max<std::size_t>(cfg.max_entities - 4, 1));
        std::size_t relations = 1 + rng.next_below(cfg.max_relations);
        std::size_t triples = entities + rng.next_below(cfg.max_triples);

        KnowledgeGraph base = random_graph(rng, entities, relations, triples);
        // Alternate fan-in thresholds so runs cover both filtered and
        // unfiltered inverse generation.
        std::size_t fanin = (g % 3 == 0) ? 2 : 1000;
        KnowledgeGraph kg = add_inverse_relations(base, fanin);

        RelationId target = static_cast<RelationId>(rng.next_below(base.relation_count()));
        TaskSplit task = random_task(kg, rng, target, cfg.train_pairs);
        if (task.train.empty()) continue;

        ++report.graphs_checked;
        std::string counterexample;
        if (!check_exhaustive_equivalence(kg, task, cfg.l_max, &report.paths_compared,
                                          &counterexample)) {
            ++report.mismatches;
            if (report.first_counterexample.empty())
                report.first_counterexample = "graph " + std::to_string(g) + ": " + counterexample;
        }
    }
    if (report.graphs_checked == 0) report.vacuous = true;
    return report;
}

}  // namespace dcpath
