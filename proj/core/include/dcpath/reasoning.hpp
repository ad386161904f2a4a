#pragma once
// Relation reasoning on top of selected paths: per-pair feature vectors
// (walk probabilities), negative candidate sampling, a closed-form ridge
// regression on 0/1 labels (logistic available behind the config switch),
// and ranking metrics over positive-vs-negative candidate sequences.

#include "dcpath/kg.hpp"
#include "dcpath/path_eval.hpp"
#include "dcpath/rng.hpp"
#include "dcpath/selection.hpp"
#include "dcpath/task.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dcpath {

// Entry j is the probability that a walk from head under path j ends at the
// given tail: support / count, 0 when no walk exists. All entries lie in
// [0, 1]. Exact (frontier walk counts), evaluated on the masked view.
std::vector<double> feature_vector(const MaskedView& view, EntityId head, EntityId tail,
                                   const std::vector<SelectedPath>& paths);

// Shared-prefix cache for feature vectors of one head under many paths.
class FeatureComputer {
public:
    explicit FeatureComputer(const MaskedView& view) : view_(&view) {}

    std::vector<double> features(EntityId head, EntityId tail,
                                 const std::vector<SelectedPath>& paths);

private:
    const MaskedView* view_;
    EntityId cached_head_ = kNoEntity;
    std::vector<std::pair<PathFeature, WalkDistribution>> prefix_cache_;

    const WalkDistribution& distribution(EntityId head, const PathFeature& path);
};

// Negative candidate tails: every tail the target relation reaches anywhere
// in the unmasked graph, minus the head's true tails (graph, train, and
// test). Uniform without replacement; the whole remainder is returned when it
// has at most n_neg members. Empty remainder -> empty result.
class NegativeSampler {
public:
    NegativeSampler(const KnowledgeGraph& kg, const TaskSplit& task);

    std::vector<EntityId> sample(EntityId head, std::size_t n_neg, SplitRng& rng) const;

    std::size_t pool_size() const { return pool_.size(); }

private:
    const KnowledgeGraph* kg_;
    const TaskSplit* task_;
    std::vector<EntityId> pool_;  // sorted target-relation tails
};

std::vector<EntityId> sample_negatives(const KnowledgeGraph& kg, const TaskSplit& task,
                                       EntityId head, std::size_t n_neg, SplitRng& rng);

enum class ModelKind { kLinear, kLogistic };

struct TrainConfig {
    ModelKind kind = ModelKind::kLinear;
    double lambda = 1e-4;        // L2 penalty on weights (bias unpenalized)
    std::size_t logistic_iterations = 500;
    double logistic_learning_rate = 0.5;
};

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    double training_loss = 0.0;
    double lambda = 0.0;
    std::string solver;
    bool degenerate_labels = false;  // all labels identical

    double score(const std::vector<double>& features) const;
};

// Least squares of w.x + b against 0/1 labels with L2 penalty on w, solved by
// the regularized normal equations. Rows of `features` must share one width
// equal to the path count; a zero-width matrix yields a bias-only model.
// Throws unless at least one row is present.
LinearModel train_model(const std::vector<std::vector<double>>& features,
                        const std::vector<int>& labels, const TrainConfig& cfg);

// One positive pair plus its sampled negative candidate tails.
struct RankingSequence {
    EntityId head = kNoEntity;
    EntityId positive_tail = kNoEntity;
    std::vector<EntityId> negative_tails;  // distinct, none equal to a true tail
    double positive_score = 0.0;
    std::vector<double> negative_scores;
};

struct RankingMetrics {
    double map = 0.0;        // mean average precision over heads
    double mrr = 0.0;        // mean reciprocal rank of the best positive, over heads
    double mean_rank = 0.0;  // per-head mean positive rank, averaged over heads
    std::size_t heads = 0;
    std::size_t sequences = 0;
};

// Candidates of all sequences sharing a head are merged (deduplicated),
// ranked by score descending with ascending-entity-id tie-break, and average
// precision is taken over that head's positive tails; metrics average over
// heads. Throws on an empty sequence list.
RankingMetrics evaluate_map(const std::vector<RankingSequence>& sequences);

}  // namespace dcpath
