#include "dcpath/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dcpath {

using json = nlohmann::json;

void SearchConfig::validate() const {
    if (l_max < 1) throw std::invalid_argument("SearchConfig: l_max must be >= 1");
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("SearchConfig: alpha and beta must be >= 0");
    if (alpha + beta > 1.0)
        throw std::invalid_argument("SearchConfig: alpha + beta must be <= 1");
    if (gamma <= 0.0) throw std::invalid_argument("SearchConfig: gamma must be > 0");
}

std::optional<std::size_t> PathPool::find(const PathFeature& path) const {
    auto it = index_.find(path);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t PathPool::append(PathPoolEntry entry) {
    if (index_.count(entry.path)) throw std::logic_error("PathPool::append: path already pooled");
    std::size_t j = entries_.size();
    index_.emplace(entry.path, j);
    entries_.push_back(std::move(entry));
    return j;
}

void RelationPathMatrix::add_column(std::size_t column, const PathFeature& path) {
    // A relation occurring twice in the path still owns the column once.
    for (RelationId r : path.relations) {
        auto& row = rows_.at(r);
        if (std::find(row.begin(), row.end(), column) == row.end())
            row.push_back(static_cast<std::uint32_t>(column));
    }
}

std::vector<double> RelationPathMatrix::row(RelationId r, const PathPool& pool) const {
    std::vector<double> out(pool.size(), 0.0);
    for (std::uint32_t j : rows_.at(r)) out[j] = pool[j].d_confidence();
    return out;
}

double relation_confidence(const RelationPathMatrix& matrix, const PathPool& pool, RelationId r) {
    if (pool.empty()) return 0.0;
    double max = 0.0;
    double sum = 0.0;
    for (std::uint32_t j : matrix.member_columns(r)) {
        double c = pool[j].d_confidence();
        max = std::max(max, c);
        sum += c;
    }
    double mean = sum / static_cast<double>(pool.size());
    return (max + mean) / 2.0;
}

double search_probability(double a_r, const SearchConfig& cfg) {
    return std::pow(cfg.alpha * a_r + cfg.beta, cfg.gamma);
}

namespace {

struct TallyCollector {
    std::vector<std::pair<PathFeature, PairTally>> ordered;
    std::unordered_map<PathFeature, std::size_t, PathFeatureHash> index;

    void record(const PathFeature& seq, bool supported) {
        auto it = index.find(seq);
        std::size_t slot;
        if (it == index.end()) {
            slot = ordered.size();
            index.emplace(seq, slot);
            ordered.emplace_back(seq, PairTally{});
        } else {
            slot = it->second;
        }
        auto& tally = ordered[slot].second;
        ++tally.count;
        if (supported) ++tally.support;
    }
};

struct DfsState {
    const MaskedView& view;
    const std::vector<EntityId>& tail_set;  // sorted
    const SearchConfig& cfg;
    const std::vector<double>& relation_probability;  // empty: pruning off this pair
    SplitRng& rng;
    SearchLog& log;
    TallyCollector tallies;
    PathFeature current;

    bool is_tail(EntityId e) const {
        return std::binary_search(tail_set.begin(), tail_set.end(), e);
    }

    void expand(EntityId e, std::size_t depth) {
        for (RelationId r : view.relations_of(e)) {
            ++log.branches_considered;
            if (!relation_probability.empty()) {
                double u = rng.next_unit();
                if (relation_probability[r] < u) {
                    ++log.branches_pruned;
                    continue;
                }
            }
            std::vector<EntityId> neighbors = view.neighbors(e, r);
            if (neighbors.empty()) continue;
            if (cfg.enable_sampling && neighbors.size() > cfg.out_degree_threshold) {
                auto picks = rng.sample_indices(static_cast<std::uint32_t>(neighbors.size()),
                                                static_cast<std::uint32_t>(cfg.sample_size));
                std::vector<EntityId> sampled;
                sampled.reserve(picks.size());
                for (auto i : picks) sampled.push_back(neighbors[i]);
                neighbors = std::move(sampled);
                ++log.sampling_events;
            }
            current.relations.push_back(r);
            for (EntityId n : neighbors) {
                ++log.walks_expanded;
                bool supported = is_tail(n);
                tallies.record(current, supported);
                bool stop_here = cfg.enable_early_stop && supported;
                if (depth + 1 < cfg.l_max && !stop_here) expand(n, depth + 1);
            }
            current.relations.pop_back();
        }
    }
};

}  // namespace

std::optional<PairTallies> dfs_conf(const MaskedView& view, EntityId head,
                                    const std::vector<EntityId>& tail_set,
                                    const SearchConfig& cfg,
                                    const std::vector<double>& relation_probability,
                                    SplitRng& rng, SearchLog& log) {
    if (!view.graph().has_entity(head)) return std::nullopt;
    DfsState state{view, tail_set, cfg, relation_probability, rng, log, {}, {}};
    state.current.relations.reserve(cfg.l_max);
    state.expand(head, 0);
    PairTallies out;
    out.ordered = std::move(state.tallies.ordered);
    return out;
}

void merge_pair_tallies(const PairTallies& tallies, std::uint64_t pair_index, PathPool& pool,
                        RelationPathMatrix& matrix) {
    // Entries that existed before this pair each see one more pair.
    std::size_t preexisting = pool.size();
    for (std::size_t j = 0; j < preexisting; ++j) ++pool.mutable_entry(j).pairs_seen;

    for (const auto& [path, tally] : tallies.ordered) {
        if (auto j = pool.find(path)) {
            auto& entry = pool.mutable_entry(*j);
            entry.support_sum += tally.support;
            entry.count_sum += tally.count;
            if (tally.support >= 1) ++entry.cover_sum;
        } else if (tally.support >= 1) {
            PathPoolEntry entry;
            entry.path = path;
            entry.support_sum = tally.support;
            entry.count_sum = tally.count;
            entry.cover_sum = 1;
            entry.pairs_seen = 1;
            entry.first_pair = pair_index;
            std::size_t column = pool.append(std::move(entry));
            matrix.add_column(column, path);
        }
        // Unsupported sequences not yet pooled are dropped.
    }
}

bool dfs_conf(const MaskedView& view, EntityId head, const std::vector<EntityId>& tail_set,
              const SearchConfig& cfg, PathPool& pool, RelationPathMatrix& matrix,
              std::uint64_t pair_index, SplitRng& rng, SearchLog& log) {
    std::vector<double> probabilities;
    if (cfg.enable_pruning && pair_index >= cfg.warmup_pairs) {
        probabilities.resize(matrix.relation_count());
        for (RelationId r = 0; r < matrix.relation_count(); ++r)
            probabilities[r] = search_probability(relation_confidence(matrix, pool, r), cfg);
    }
    auto tallies = dfs_conf(view, head, tail_set, cfg, probabilities, rng, log);
    if (!tallies) return false;
    merge_pair_tallies(*tallies, pair_index, pool, matrix);
    return true;
}

SearchResult run_path_search(const KnowledgeGraph& kg, const TaskSplit& task,
                             const SearchConfig& cfg) {
    cfg.validate();
    if (task.train.empty())
        throw std::invalid_argument("run_path_search: task '" + task.name + "' has no training pairs");

    PathPool pool;
    RelationPathMatrix matrix(kg.relation_count());
    SearchLog log;

    std::uint64_t traversed = 0;
    for (std::size_t idx = 0; idx < task.train.size(); ++idx) {
        EntityId head = task.train[idx].first;
        if (!kg.has_entity(head)) {
            ++log.pairs_skipped;
            continue;
        }
        std::vector<EntityId> tails = task.train_tails(head);

        // Hide the head's target edges (and inverses) while this pair runs.
        std::vector<std::pair<EntityId, EntityId>> masked;
        masked.reserve(tails.size());
        for (EntityId t : tails) masked.emplace_back(head, t);
        MaskedView view = mask_task_edges(kg, task.relation, masked);

        SplitRng rng = SplitRng::stream(cfg.seed, "search:" + task.name, idx);
        if (!dfs_conf(view, head, tails, cfg, pool, matrix, traversed, rng, log)) {
            ++log.pairs_skipped;
            continue;
        }
        ++traversed;
        ++log.pairs_traversed;
    }
    return SearchResult(std::move(pool), std::move(matrix), log);
}

namespace {

std::vector<std::string> path_labels(const PathFeature& path, const KnowledgeGraph& kg) {
    std::vector<std::string> out;
    out.reserve(path.relations.size());
    for (RelationId r : path.relations) out.push_back(kg.relations().label(r));
    return out;
}

}  // namespace

// Shared by the pool snapshot and the selection report: confidence descending,
// then coverage descending, then label sequence.
bool pool_order_less(const PathPoolEntry& a, const PathPoolEntry& b, const KnowledgeGraph& kg) {
    double ca = a.d_confidence(), cb = b.d_confidence();
    if (ca != cb) return ca > cb;
    double va = a.d_coverage(), vb = b.d_coverage();
    if (va != vb) return va > vb;
    return path_labels(a.path, kg) < path_labels(b.path, kg);
}

void write_pool_snapshot(std::ostream& out, const PathPool& pool, const KnowledgeGraph& kg) {
    std::vector<std::size_t> order(pool.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pool_order_less(pool[a], pool[b], kg);
    });
    for (std::size_t j : order) {
        const auto& e = pool[j];
        json record{{"path", path_labels(e.path, kg)},
                    {"support_sum", e.support_sum},
                    {"count_sum", e.count_sum},
                    {"cover_sum", e.cover_sum},
                    {"pairs_seen", e.pairs_seen},
                    {"first_pair", e.first_pair},
                    {"column", j},
                    {"d_confidence", e.d_confidence()},
                    {"d_coverage", e.d_coverage()}};
        out << record.dump() << '\n';
    }
}

std::pair<PathPool, RelationPathMatrix> read_pool_snapshot(std::istream& in,
                                                           const KnowledgeGraph& kg) {
    std::vector<std::pair<std::size_t, PathPoolEntry>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record = json::parse(line);
        PathPoolEntry entry;
        for (const auto& label : record.at("path")) {
            RelationId r = kg.relations().find(label.get<std::string>());
            if (r == kNoRelation)
                throw std::runtime_error("pool snapshot line " + std::to_string(line_no) +
                                         ": unknown relation '" + label.get<std::string>() + "'");
            entry.path.relations.push_back(r);
        }
        entry.support_sum = record.at("support_sum").get<std::uint64_t>();
        entry.count_sum = record.at("count_sum").get<std::uint64_t>();
        entry.cover_sum = record.at("cover_sum").get<std::uint64_t>();
        entry.pairs_seen = record.at("pairs_seen").get<std::uint64_t>();
        entry.first_pair = record.at("first_pair").get<std::uint64_t>();
        rows.emplace_back(record.at("column").get<std::size_t>(), std::move(entry));
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PathPool pool;
    RelationPathMatrix matrix(kg.relation_count());
    for (auto& [column, entry] : rows) {
        if (column != pool.size())
            throw std::runtime_error("pool snapshot: column indices not contiguous");
        PathFeature path = entry.path;
        std::size_t j = pool.append(std::move(entry));
        matrix.add_column(j, path);
    }
    return {std::move(pool), std::move(matrix)};
}

}  // namespace dcpath
