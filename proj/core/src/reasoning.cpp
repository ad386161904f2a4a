#include "dcpath/reasoning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace dcpath {

const WalkDistribution& FeatureComputer::distribution(EntityId head, const PathFeature& path) {
    if (path.length() == 0)
        throw std::invalid_argument("FeatureComputer: empty path feature");
    if (head != cached_head_) {
        prefix_cache_.clear();
        cached_head_ = head;
    }
    for (const auto& [cached_path, dist] : prefix_cache_)
        if (cached_path == path) return dist;

    // Extend from the longest cached proper prefix when one exists.
    WalkDistribution frontier;
    std::size_t start = 0;
    for (std::size_t len = path.length() - 1; len >= 1; --len) {
        PathFeature prefix{{path.relations.begin(), path.relations.begin() + len}};
        bool found = false;
        for (const auto& [cached_path, dist] : prefix_cache_)
            if (cached_path == prefix) {
                frontier = dist;
                start = len;
                found = true;
                break;
            }
        if (found) break;
    }
    if (start == 0) frontier = {{head, 1}};
    for (std::size_t i = start; i < path.length(); ++i) {
        WalkDistribution next;
        for (const auto& [e, walks] : frontier)
            view_->for_each_neighbor(e, path.relations[i], [&, w = walks](EntityId n) { next[n] += w; });
        frontier = std::move(next);
        PathFeature prefix{{path.relations.begin(), path.relations.begin() + i + 1}};
        prefix_cache_.emplace_back(std::move(prefix), frontier);
        if (frontier.empty()) break;
    }
    // The full path's distribution is the last cached prefix unless the
    // frontier died early, in which case an empty map stands for it.
    for (const auto& [cached_path, dist] : prefix_cache_)
        if (cached_path == path) return dist;
    prefix_cache_.emplace_back(path, WalkDistribution{});
    return prefix_cache_.back().second;
}

std::vector<double> FeatureComputer::features(EntityId head, EntityId tail,
                                              const std::vector<SelectedPath>& paths) {
    std::vector<double> out(paths.size(), 0.0);
    if (!view_->graph().has_entity(head)) return out;
    for (std::size_t j = 0; j < paths.size(); ++j) {
        const WalkDistribution& dist = distribution(head, paths[j].path);
        std::uint64_t count = 0;
        std::uint64_t support = 0;
        for (const auto& [endpoint, walks] : dist) {
            count += walks;
            if (endpoint == tail) support += walks;
        }
        out[j] = count == 0 ? 0.0 : static_cast<double>(support) / static_cast<double>(count);
    }
    return out;
}

std::vector<double> feature_vector(const MaskedView& view, EntityId head, EntityId tail,
                                   const std::vector<SelectedPath>& paths) {
    FeatureComputer computer(view);
    return computer.features(head, tail, paths);
}

NegativeSampler::NegativeSampler(const KnowledgeGraph& kg, const TaskSplit& task)
    : kg_(&kg), task_(&task) {
    // Type-plausible pool: tails of the target relation across the graph.
    std::set<EntityId> pool_set;
    kg.for_each_triple([&](EntityId, RelationId r, EntityId t) {
        if (r == task.relation) pool_set.insert(t);
    });
    pool_.assign(pool_set.begin(), pool_set.end());
}

std::vector<EntityId> NegativeSampler::sample(EntityId head, std::size_t n_neg,
                                              SplitRng& rng) const {
    std::vector<EntityId> excluded = task_->known_tails(*kg_, head);
    std::vector<EntityId> candidates;
    candidates.reserve(pool_.size());
    for (EntityId t : pool_)
        if (!std::binary_search(excluded.begin(), excluded.end(), t)) candidates.push_back(t);
    if (candidates.size() <= n_neg) return candidates;
    auto picks = rng.sample_indices(static_cast<std::uint32_t>(candidates.size()),
                                    static_cast<std::uint32_t>(n_neg));
    std::vector<EntityId> out;
    out.reserve(picks.size());
    for (auto i : picks) out.push_back(candidates[i]);
    return out;
}

std::vector<EntityId> sample_negatives(const KnowledgeGraph& kg, const TaskSplit& task,
                                       EntityId head, std::size_t n_neg, SplitRng& rng) {
    return NegativeSampler(kg, task).sample(head, n_neg, rng);
}

namespace {

// Gaussian elimination with partial pivoting; a is (n x n), b length n.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (std::fabs(a[col][col]) < 1e-12)
            throw std::runtime_error("train_model: singular normal equations");
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

LinearModel train_ridge(const std::vector<std::vector<double>>& features,
                        const std::vector<int>& labels, const TrainConfig& cfg) {
    const std::size_t rows = features.size();
    const std::size_t p = features.empty() ? 0 : features.front().size();

    LinearModel model;
    model.lambda = cfg.lambda;
    model.solver = "normal-equations";
    model.weights.assign(p, 0.0);

    if (p == 0) {
        // Bias-only fallback: the mean label minimizes squared error.
        double mean = 0.0;
        for (int y : labels) mean += y;
        model.bias = mean / static_cast<double>(rows);
        double loss = 0.0;
        for (int y : labels) loss += (y - model.bias) * (y - model.bias);
        model.training_loss = loss / static_cast<double>(rows);
        return model;
    }

    // Augmented normal equations (X 1)^T (X 1) + lambda * diag(1..1, 0).
    const std::size_t n = p + 1;
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& x = features[i];
        if (x.size() != p) throw std::invalid_argument("train_model: ragged feature matrix");
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = a; b < p; ++b) gram[a][b] += x[a] * x[b];
            gram[a][p] += x[a];
            rhs[a] += x[a] * labels[i];
        }
        rhs[p] += labels[i];
    }
    gram[p][p] = static_cast<double>(rows);
    // Normal equations of mean squared error + lambda * |w|^2: the penalty
    // enters scaled by the row count, the bias stays unpenalized.
    for (std::size_t a = 0; a < p; ++a) {
        gram[a][a] += cfg.lambda * static_cast<double>(rows);
        for (std::size_t b = a + 1; b <= p; ++b) gram[b][a] = gram[a][b];
    }

    std::vector<double> solution = solve_linear_system(std::move(gram), std::move(rhs));
    model.weights.assign(solution.begin(), solution.begin() + p);
    model.bias = solution[p];

    double loss = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double err = model.score(features[i]) - labels[i];
        loss += err * err;
    }
    model.training_loss = loss / static_cast<double>(rows);
    return model;
}

LinearModel train_logistic(const std::vector<std::vector<double>>& features,
                           const std::vector<int>& labels, const TrainConfig& cfg) {
    const std::size_t rows = features.size();
    const std::size_t p = features.empty() ? 0 : features.front().size();

    LinearModel model;
    model.lambda = cfg.lambda;
    model.solver = "logistic-gd";
    model.weights.assign(p, 0.0);

    auto sigmoid = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };

    for (std::size_t iter = 0; iter < cfg.logistic_iterations; ++iter) {
        std::vector<double> grad_w(p, 0.0);
        double grad_b = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double err = sigmoid(model.score(features[i])) - labels[i];
            for (std::size_t a = 0; a < p; ++a) grad_w[a] += err * features[i][a];
            grad_b += err;
        }
        for (std::size_t a = 0; a < p; ++a) {
            grad_w[a] = grad_w[a] / rows + cfg.lambda * model.weights[a];
            model.weights[a] -= cfg.logistic_learning_rate * grad_w[a];
        }
        model.bias -= cfg.logistic_learning_rate * grad_b / rows;
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double prob = sigmoid(model.score(features[i]));
        prob = std::clamp(prob, 1e-12, 1.0 - 1e-12);
        loss += labels[i] ? -std::log(prob) : -std::log(1.0 - prob);
    }
    model.training_loss = rows ? loss / static_cast<double>(rows) : 0.0;
    return model;
}

}  // namespace

double LinearModel::score(const std::vector<double>& features) const {
    double acc = bias;
    for (std::size_t i = 0; i < weights.size() && i < features.size(); ++i)
        acc += weights[i] * features[i];
    return acc;
}

LinearModel train_model(const std::vector<std::vector<double>>& features,
                        const std::vector<int>& labels, const TrainConfig& cfg) {
    if (features.empty() || features.size() != labels.size())
        throw std::invalid_argument("train_model: need one label per feature row");

    bool any_pos = false;
    bool any_neg = false;
    for (int y : labels) (y ? any_pos : any_neg) = true;

    LinearModel model = cfg.kind == ModelKind::kLogistic ? train_logistic(features, labels, cfg)
                                                         : train_ridge(features, labels, cfg);
    model.degenerate_labels = !(any_pos && any_neg);
    return model;
}

RankingMetrics evaluate_map(const std::vector<RankingSequence>& sequences) {
    if (sequences.empty()) throw std::invalid_argument("evaluate_map: no sequences");

    struct HeadGroup {
        std::map<EntityId, double> scores;  // candidate -> score
        std::set<EntityId> positives;
    };
    std::map<EntityId, HeadGroup> heads;
    for (const auto& seq : sequences) {
        auto& group = heads[seq.head];
        group.positives.insert(seq.positive_tail);
        group.scores[seq.positive_tail] = seq.positive_score;
        if (seq.negative_tails.size() != seq.negative_scores.size())
            throw std::invalid_argument("evaluate_map: candidate/score length mismatch");
        for (std::size_t i = 0; i < seq.negative_tails.size(); ++i)
            group.scores[seq.negative_tails[i]] = seq.negative_scores[i];
    }

    RankingMetrics metrics;
    metrics.sequences = sequences.size();
    metrics.heads = heads.size();

    double ap_sum = 0.0;
    double rr_sum = 0.0;
    double rank_sum = 0.0;
    for (const auto& [head, group] : heads) {
        // Descending score; equal scores rank by ascending entity id.
        std::vector<std::pair<EntityId, double>> ranked(group.scores.begin(), group.scores.end());
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        double ap = 0.0;
        double head_rank_sum = 0.0;
        double best_rank = 0.0;
        std::size_t positives_seen = 0;
        for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
            if (!group.positives.count(ranked[pos].first)) continue;
            ++positives_seen;
            double rank = static_cast<double>(pos + 1);
            ap += static_cast<double>(positives_seen) / rank;
            head_rank_sum += rank;
            if (best_rank == 0.0) best_rank = rank;
        }
        ap_sum += ap / static_cast<double>(group.positives.size());
        rr_sum += 1.0 / best_rank;
        rank_sum += head_rank_sum / static_cast<double>(group.positives.size());
    }
    metrics.map = ap_sum / static_cast<double>(heads.size());
    metrics.mrr = rr_sum / static_cast<double>(heads.size());
    metrics.mean_rank = rank_sum / static_cast<double>(heads.size());
    return metrics;
}

}  // namespace dcpath
