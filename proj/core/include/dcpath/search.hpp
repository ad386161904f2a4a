#pragma once
// Confidence-guided path search.
//
// Training pairs are traversed in order. Each pair runs a depth-first
// expansion from its head; every arrival at depth d is one completed walk of
// the length-d relation sequence and is tallied against the pair's tail set.
// At pair end the tallies merge into the path pool, whose per-path running
// ratios (D-confidence, D-coverage) feed a relation-to-path membership matrix.
// From that matrix each relation gets a confidence score, and the score sets
// the probability that the next pair's search keeps descending along that
// relation. Three strategies shrink the search space:
//
//   pruning   - skip a relation branch with probability 1 - prob(relation),
//               active once warmup_pairs pairs have been traversed;
//   sampling  - expand only sample_size neighbors when a relation's fan-out
//               exceeds out_degree_threshold;
//   early stop - never recurse past an entity in the pair's tail set.
//
// With all three disabled the traversal is exhaustive and the pool tallies
// equal the exact measures in path_eval.hpp, accumulated from each path's
// first-appearance pair onward (recorded per entry).

#include "dcpath/kg.hpp"
#include "dcpath/path_eval.hpp"
#include "dcpath/rng.hpp"
#include "dcpath/task.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dcpath {

struct SearchConfig {
    std::size_t l_max = 3;
    double alpha = 0.99;
    double beta = 0.01;
    double gamma = 0.5;
    std::size_t out_degree_threshold = 50;
    std::size_t sample_size = 20;
    std::size_t warmup_pairs = 10;
    std::uint64_t seed = 7;
    bool enable_pruning = true;
    bool enable_sampling = true;
    bool enable_early_stop = true;

    // All strategies off: the traversal enumerates every walk up to l_max.
    SearchConfig exhaustive() const {
        SearchConfig c = *this;
        c.enable_pruning = false;
        c.enable_sampling = false;
        c.enable_early_stop = false;
        return c;
    }

    // Throws std::invalid_argument unless alpha, beta >= 0, alpha + beta <= 1,
    // gamma > 0 and l_max >= 1.
    void validate() const;
};

struct PathPoolEntry {
    PathFeature path;
    std::uint64_t support_sum = 0;
    std::uint64_t count_sum = 0;
    std::uint64_t cover_sum = 0;
    std::uint64_t pairs_seen = 0;   // counted from the pair of first appearance
    std::uint64_t first_pair = 0;   // 0-based index of that pair

    double d_confidence() const {
        return count_sum == 0 ? 0.0
                              : static_cast<double>(support_sum) / static_cast<double>(count_sum);
    }
    double d_coverage() const {
        return pairs_seen == 0 ? 0.0
                               : static_cast<double>(cover_sum) / static_cast<double>(pairs_seen);
    }
};

// Discovered paths in admission order; the position of an entry is the column
// index of the relation/path matrix.
class PathPool {
public:
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const PathPoolEntry& operator[](std::size_t j) const { return entries_[j]; }
    const std::vector<PathPoolEntry>& entries() const { return entries_; }

    std::optional<std::size_t> find(const PathFeature& path) const;

    // Appends a new column; the path must not be present yet.
    std::size_t append(PathPoolEntry entry);

    PathPoolEntry& mutable_entry(std::size_t j) { return entries_[j]; }

private:
    std::vector<PathPoolEntry> entries_;
    std::unordered_map<PathFeature, std::size_t, PathFeatureHash> index_;
};

// Relation -> participating pool columns. An entry of the conceptual m x n
// matrix is the column's D-confidence when the relation occurs in the path,
// else 0; rows are materialized on read.
class RelationPathMatrix {
public:
    explicit RelationPathMatrix(std::size_t relation_count) : rows_(relation_count) {}

    std::size_t relation_count() const { return rows_.size(); }

    void add_column(std::size_t column, const PathFeature& path);

    const std::vector<std::uint32_t>& member_columns(RelationId r) const { return rows_[r]; }

    // Full-length row including structural zeros, length = pool size.
    std::vector<double> row(RelationId r, const PathPool& pool) const;

private:
    std::vector<std::vector<std::uint32_t>> rows_;
};

// (max + mean) / 2 over the relation's full matrix row, zeros included;
// 0 when the pool is empty. Always within [mean, max] and [0, 1].
double relation_confidence(const RelationPathMatrix& matrix, const PathPool& pool, RelationId r);

// Probability of continuing the deep search along a relation with confidence
// a_r: (alpha * a_r + beta) ^ gamma.
double search_probability(double a_r, const SearchConfig& cfg);

struct SearchLog {
    std::uint64_t pairs_traversed = 0;
    std::uint64_t pairs_skipped = 0;
    std::uint64_t branches_considered = 0;
    std::uint64_t branches_pruned = 0;
    std::uint64_t sampling_events = 0;
    std::uint64_t walks_expanded = 0;  // node arrivals, all depths
};

// Per-pair tally for one relation sequence.
struct PairTally {
    std::uint64_t count = 0;    // completed walks
    std::uint64_t support = 0;  // completed walks ending in the tail set
};

struct PairTallies {
    // Sequences in first-arrival order, with their tallies.
    std::vector<std::pair<PathFeature, PairTally>> ordered;
};

// One pair's depth-first expansion. Walks start at head over the masked view;
// tallies cover every relation sequence completed during this pair. The pool
// and matrix are NOT updated here; merge_pair_tallies applies them at pair
// end so relation confidences stay fixed within a pair.
// A head absent from the graph yields std::nullopt (callers count a skip).
std::optional<PairTallies> dfs_conf(const MaskedView& view, EntityId head,
                                    const std::vector<EntityId>& tail_set,
                                    const SearchConfig& cfg,
                                    const std::vector<double>& relation_probability,
                                    SplitRng& rng, SearchLog& log);

// Pool/matrix update for one traversed pair: every existing entry gains a
// pair, tallied sequences merge, and new sequences with support are appended
// as fresh columns (admission requires support >= 1 at first sighting).
void merge_pair_tallies(const PairTallies& tallies, std::uint64_t pair_index, PathPool& pool,
                        RelationPathMatrix& matrix);

// Single-call form: derives relation probabilities from the current pool and
// matrix (when pruning applies at pair_index), runs the expansion, and merges
// the tallies. Returns false when the head is absent (pair skipped).
bool dfs_conf(const MaskedView& view, EntityId head, const std::vector<EntityId>& tail_set,
              const SearchConfig& cfg, PathPool& pool, RelationPathMatrix& matrix,
              std::uint64_t pair_index, SplitRng& rng, SearchLog& log);

// Pool emission order: D-confidence desc, D-coverage desc, label sequence asc.
bool pool_order_less(const PathPoolEntry& a, const PathPoolEntry& b, const KnowledgeGraph& kg);

struct SearchResult {
    PathPool pool;
    RelationPathMatrix matrix;
    SearchLog log;

    SearchResult(PathPool p, RelationPathMatrix m, SearchLog l)
        : pool(std::move(p)), matrix(std::move(m)), log(l) {}
};

// Full search over the task's training pairs in file order. For each pair the
// view masks the head's target edges (direct and inverse) before expansion.
// Deterministic for a fixed seed, config, and input order.
SearchResult run_path_search(const KnowledgeGraph& kg, const TaskSplit& task,
                             const SearchConfig& cfg);

// Pool snapshot: one JSON record per path with its label sequence, integer
// accumulators, column index, first pair, and the derived ratios; rows
// ordered by D-confidence descending (ties: coverage, then label sequence).
void write_pool_snapshot(std::ostream& out, const PathPool& pool, const KnowledgeGraph& kg);

// Rebuilds a pool (in column order) and its matrix from a snapshot stream.
// Ratios are recomputed from the integer accumulators, so a snapshot
// round-trips exactly.
std::pair<PathPool, RelationPathMatrix> read_pool_snapshot(std::istream& in,
                                                           const KnowledgeGraph& kg);

}  // namespace dcpath
