#include "dcpath/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dcpath {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class PhaseClock {
public:
    PhaseClock() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected boolean, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected number, got '" + value + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected integer, got '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

RunConfig RunConfig::from_kv(const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    bool explicit_thresholds = false;
    for (const auto& [key, value] : kv) {
        if (key == "kg_file") cfg.kg_file = value;
        else if (key == "tasks_dir") cfg.tasks_dir = value;
        else if (key == "tasks") cfg.tasks = split_list(value);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "fanin_threshold") cfg.fanin_threshold = parse_uint(key, value);
        else if (key == "l_max") cfg.search.l_max = parse_uint(key, value);
        else if (key == "alpha") cfg.search.alpha = parse_double(key, value);
        else if (key == "beta") cfg.search.beta = parse_double(key, value);
        else if (key == "gamma") cfg.search.gamma = parse_double(key, value);
        else if (key == "out_degree_threshold") cfg.search.out_degree_threshold = parse_uint(key, value);
        else if (key == "sample_size") cfg.search.sample_size = parse_uint(key, value);
        else if (key == "warmup_pairs") cfg.search.warmup_pairs = parse_uint(key, value);
        else if (key == "seed") cfg.search.seed = parse_uint(key, value);
        else if (key == "enable_pruning") cfg.search.enable_pruning = parse_bool(key, value);
        else if (key == "enable_sampling") cfg.search.enable_sampling = parse_bool(key, value);
        else if (key == "enable_early_stop") cfg.search.enable_early_stop = parse_bool(key, value);
        else if (key == "selection_preset") cfg.selection_preset = value;
        else if (key == "theta_c1") { cfg.thresholds.theta_c1 = parse_double(key, value); explicit_thresholds = true; }
        else if (key == "theta_c2") { cfg.thresholds.theta_c2 = parse_double(key, value); explicit_thresholds = true; }
        else if (key == "theta_p1") { cfg.thresholds.theta_p1 = parse_double(key, value); explicit_thresholds = true; }
        else if (key == "theta_p2") { cfg.thresholds.theta_p2 = parse_double(key, value); explicit_thresholds = true; }
        else if (key == "n_neg") cfg.n_neg = parse_uint(key, value);
        else if (key == "lambda") cfg.train.lambda = parse_double(key, value);
        else if (key == "model") {
            if (value == "linear") cfg.train.kind = ModelKind::kLinear;
            else if (value == "logistic") cfg.train.kind = ModelKind::kLogistic;
            else throw std::invalid_argument("config key 'model': expected linear|logistic");
        }
        else if (key == "sweep_coverage") cfg.sweep_coverage = parse_double(key, value);
        else if (key == "phases") {
            cfg.phases = {false, false, false, false};
            for (const auto& phase : split_list(value)) {
                if (phase == "all") cfg.phases = {true, true, true, true};
                else if (phase == "search") cfg.phases.search = true;
                else if (phase == "select") cfg.phases.select = true;
                else if (phase == "train") cfg.phases.train = true;
                else if (phase == "eval") cfg.phases.eval = true;
                else throw std::invalid_argument("config key 'phases': unknown phase '" + phase + "'");
            }
            // Later phases need the earlier ones' in-memory products.
            if (cfg.phases.eval) cfg.phases.train = true;
            if (cfg.phases.train) cfg.phases.select = true;
        }
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (!cfg.selection_preset.empty() && explicit_thresholds)
        throw std::invalid_argument("config: selection_preset and explicit theta_* keys are exclusive");
    return cfg;
}

RunConfig RunConfig::load(const std::string& path,
                          const std::vector<std::pair<std::string, std::string>>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
            line.pop_back();
        std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = line.substr(begin, eq - begin);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::size_t vbegin = value.find_first_not_of(" \t");
        value = vbegin == std::string::npos ? "" : value.substr(vbegin);
        kv[key] = value;
    }
    for (const auto& [key, value] : overrides) kv[key] = value;
    return from_kv(kv);
}

RunConfig RunConfig::from_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::invalid_argument("cannot open manifest: " + manifest_path);
    json manifest = json::parse(in);
    std::map<std::string, std::string> kv;
    for (const auto& [key, value] : manifest.at("config").items())
        kv[key] = value.get<std::string>();
    return from_kv(kv);
}

std::map<std::string, std::string> RunConfig::to_kv() const {
    std::map<std::string, std::string> kv;
    kv["kg_file"] = kg_file;
    kv["tasks_dir"] = tasks_dir;
    if (!tasks.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (i) joined += ',';
            joined += tasks[i];
        }
        kv["tasks"] = joined;
    }
    kv["output_dir"] = output_dir;
    kv["fanin_threshold"] = std::to_string(fanin_threshold);
    kv["l_max"] = std::to_string(search.l_max);
    kv["alpha"] = format_double(search.alpha);
    kv["beta"] = format_double(search.beta);
    kv["gamma"] = format_double(search.gamma);
    kv["out_degree_threshold"] = std::to_string(search.out_degree_threshold);
    kv["sample_size"] = std::to_string(search.sample_size);
    kv["warmup_pairs"] = std::to_string(search.warmup_pairs);
    kv["seed"] = std::to_string(search.seed);
    kv["enable_pruning"] = bool_str(search.enable_pruning);
    kv["enable_sampling"] = bool_str(search.enable_sampling);
    kv["enable_early_stop"] = bool_str(search.enable_early_stop);
    if (!selection_preset.empty()) {
        kv["selection_preset"] = selection_preset;
    } else {
        kv["theta_c1"] = format_double(thresholds.theta_c1);
        kv["theta_c2"] = format_double(thresholds.theta_c2);
        kv["theta_p1"] = format_double(thresholds.theta_p1);
        kv["theta_p2"] = format_double(thresholds.theta_p2);
    }
    kv["n_neg"] = std::to_string(n_neg);
    kv["lambda"] = format_double(train.lambda);
    kv["model"] = train.kind == ModelKind::kLogistic ? "logistic" : "linear";
    kv["sweep_coverage"] = format_double(sweep_coverage);
    std::string phase_list;
    auto add_phase = [&](bool on, const char* name) {
        if (!on) return;
        if (!phase_list.empty()) phase_list += ',';
        phase_list += name;
    };
    add_phase(phases.search, "search");
    add_phase(phases.select, "select");
    add_phase(phases.train, "train");
    add_phase(phases.eval, "eval");
    kv["phases"] = phase_list;
    return kv;
}

std::string RunConfig::config_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [key, value] : to_kv()) {
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

void RunConfig::validate() const {
    if (kg_file.empty()) throw std::invalid_argument("config: kg_file is required");
    if (tasks_dir.empty()) throw std::invalid_argument("config: tasks_dir is required");
    if (!fs::exists(kg_file)) throw std::invalid_argument("config: kg_file does not exist: " + kg_file);
    if (!fs::exists(tasks_dir))
        throw std::invalid_argument("config: tasks_dir does not exist: " + tasks_dir);
    search.validate();
    resolved_thresholds().validate();
    if (n_neg < 1) throw std::invalid_argument("config: n_neg must be >= 1");
    if (train.lambda < 0.0) throw std::invalid_argument("config: lambda must be >= 0");
}

SelectionThresholds RunConfig::resolved_thresholds() const {
    if (!selection_preset.empty()) return ::dcpath::selection_preset(selection_preset);
    return thresholds;
}

bool RunReport::all_ok() const {
    for (const auto& t : tasks)
        if (!t.ok) return false;
    return true;
}

KnowledgeGraph load_and_preprocess(const RunConfig& cfg, LoadStats* raw_stats) {
    KnowledgeGraph base = KnowledgeGraph::load_triples_file(cfg.kg_file, raw_stats);
    return add_inverse_relations(base, cfg.fanin_threshold);
}

std::vector<std::string> discover_tasks(const RunConfig& cfg) {
    if (!cfg.tasks.empty()) return cfg.tasks;
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(cfg.tasks_dir))
        if (entry.is_directory()) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

namespace {

struct EvalOutcome {
    RankingMetrics metrics;
    LinearModel model;
    std::size_t sequences = 0;
    std::size_t skipped_sequences = 0;
    std::vector<std::string> warnings;
};

EvalOutcome train_and_evaluate(const KnowledgeGraph& kg, const TaskSplit& task,
                               const RunConfig& cfg, const std::vector<SelectedPath>& selected,
                               bool do_eval) {
    EvalOutcome out;

    // Every task pair's direct and inverse target edges are hidden during
    // feature computation, for test and train alike.
    MaskedView view = mask_task_edges(kg, task.relation, task.all_pairs());
    FeatureComputer features(view);
    NegativeSampler sampler(kg, task);

    if (selected.empty())
        out.warnings.push_back("no paths selected; model degenerates to bias only");

    // Training matrix: one positive row per train pair plus its negatives.
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    SplitRng train_rng = SplitRng::stream(cfg.search.seed, "train-neg:" + task.name);
    for (const auto& [head, tail] : task.train) {
        rows.push_back(features.features(head, tail, selected));
        labels.push_back(1);
        for (EntityId neg : sampler.sample(head, cfg.n_neg, train_rng)) {
            rows.push_back(features.features(head, neg, selected));
            labels.push_back(0);
        }
    }
    out.model = train_model(rows, labels, cfg.train);
    if (out.model.degenerate_labels)
        out.warnings.push_back("degenerate training labels (no negative rows)");

    if (!do_eval) return out;

    std::vector<RankingSequence> sequences;
    SplitRng eval_rng = SplitRng::stream(cfg.search.seed, "eval-neg:" + task.name);
    for (const auto& [head, tail] : task.test) {
        std::vector<EntityId> negatives = sampler.sample(head, cfg.n_neg, eval_rng);
        if (negatives.empty()) {
            ++out.skipped_sequences;
            continue;
        }
        RankingSequence seq;
        seq.head = head;
        seq.positive_tail = tail;
        seq.negative_tails = std::move(negatives);
        seq.positive_score = out.model.score(features.features(head, tail, selected));
        seq.negative_scores.reserve(seq.negative_tails.size());
        for (EntityId neg : seq.negative_tails)
            seq.negative_scores.push_back(out.model.score(features.features(head, neg, selected)));
        sequences.push_back(std::move(seq));
    }
    if (out.skipped_sequences > 0)
        out.warnings.push_back(std::to_string(out.skipped_sequences) +
                               " test sequence(s) skipped: empty negative pool");
    out.sequences = sequences.size();
    if (sequences.empty()) {
        out.warnings.push_back("no evaluable test sequences; metrics are zero");
    } else {
        out.metrics = evaluate_map(sequences);
    }
    return out;
}

json search_log_json(const SearchLog& log) {
    return json{{"pairs_traversed", log.pairs_traversed},
                {"pairs_skipped", log.pairs_skipped},
                {"branches_considered", log.branches_considered},
                {"branches_pruned", log.branches_pruned},
                {"sampling_events", log.sampling_events},
                {"walks_expanded", log.walks_expanded}};
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

TaskReport run_task(const KnowledgeGraph& kg, const TaskSplit& task, const RunConfig& cfg) {
    TaskReport report;
    report.name = task.name;
    PhaseClock total;
    fs::path task_dir = fs::path(cfg.output_dir) / task.name;

    try {
        fs::create_directories(task_dir);
        report.train_pairs = task.train.size();
        report.test_pairs = task.test.size();

        PathPool pool;
        RelationPathMatrix matrix(kg.relation_count());
        if (cfg.phases.search) {
            PhaseClock clock;
            SearchResult result = run_path_search(kg, task, cfg.search);
            pool = std::move(result.pool);
            matrix = std::move(result.matrix);
            report.search_log = result.log;
            report.timings.search_ms = clock.elapsed_ms();

            std::ostringstream snapshot;
            write_pool_snapshot(snapshot, pool, kg);
            write_text_file(task_dir / "pool.jsonl", snapshot.str());
        } else {
            std::ifstream snapshot(task_dir / "pool.jsonl");
            if (!snapshot)
                throw std::runtime_error("search phase disabled and no pool snapshot at " +
                                         (task_dir / "pool.jsonl").string());
            auto loaded = read_pool_snapshot(snapshot, kg);
            pool = std::move(loaded.first);
            matrix = std::move(loaded.second);
        }
        report.pool_size = pool.size();

        SelectionThresholds thresholds = cfg.resolved_thresholds();
        std::vector<SelectedPath> selected;
        if (cfg.phases.select) {
            PhaseClock clock;
            selected = select_paths(pool, thresholds, kg);
            report.selected_paths = selected.size();
            std::ostringstream sel;
            write_selection_report(sel, pool, thresholds, kg);
            write_text_file(task_dir / "selected.jsonl", sel.str());
            report.timings.select_ms = clock.elapsed_ms();
        }

        EvalOutcome outcome;
        if (cfg.phases.train) {
            PhaseClock clock;
            outcome = train_and_evaluate(kg, task, cfg, selected, cfg.phases.eval);
            report.metrics = outcome.metrics;
            report.warnings.insert(report.warnings.end(), outcome.warnings.begin(),
                                   outcome.warnings.end());
            report.timings.train_ms = clock.elapsed_ms();  // includes eval scoring
        }

        if (cfg.phases.eval) {
            json metrics{{"task", task.name},
                         {"target_relation", task.relation_label},
                         {"seed", cfg.search.seed},
                         {"path_count", report.selected_paths},
                         {"map", report.metrics.map},
                         {"mrr", report.metrics.mrr},
                         {"mean_rank", report.metrics.mean_rank},
                         {"train_pairs", report.train_pairs},
                         {"test_pairs", report.test_pairs},
                         {"sequences", outcome.sequences},
                         {"skipped_sequences", outcome.skipped_sequences},
                         {"model",
                          json{{"solver", outcome.model.solver},
                               {"lambda", outcome.model.lambda},
                               {"training_loss", outcome.model.training_loss},
                               {"degenerate_labels", outcome.model.degenerate_labels},
                               {"weight_count", outcome.model.weights.size()}}},
                         {"warnings", report.warnings}};
            write_text_file(task_dir / "metrics.json", metrics.dump(2) + "\n");
        }

        report.timings.total_ms = total.elapsed_ms();

        json manifest{{"version", std::string(kDcpathVersion)},
                      {"task", task.name},
                      {"target_relation", task.relation_label},
                      {"config", cfg.to_kv()},
                      {"config_hash", cfg.config_hash()},
                      {"seed", cfg.search.seed},
                      {"seed_streams",
                       json{{"search", "search:" + task.name + " split by pair index"},
                            {"train_negatives", "train-neg:" + task.name},
                            {"eval_negatives", "eval-neg:" + task.name}}},
                      {"counts",
                       json{{"pool_paths", report.pool_size},
                            {"selected_paths", report.selected_paths},
                            {"train_pairs", report.train_pairs},
                            {"test_pairs", report.test_pairs}}},
                      {"search_log", search_log_json(report.search_log)},
                      {"timings_ms",
                       json{{"search", report.timings.search_ms},
                            {"select", report.timings.select_ms},
                            {"train_eval", report.timings.train_ms},
                            {"total", report.timings.total_ms}}},
                      {"warnings", report.warnings}};
        write_text_file(task_dir / "manifest.json", manifest.dump(2) + "\n");

        report.ok = true;
    } catch (const std::exception& e) {
        report.ok = false;
        report.error = e.what();
    }
    return report;
}

RunReport run_all(const RunConfig& cfg) {
    cfg.validate();
    RunReport report;

    LoadStats raw;
    KnowledgeGraph kg = load_and_preprocess(cfg, &raw);
    std::cerr << "loaded " << raw.entities << " entities, " << raw.relations << " relations, "
              << raw.triples << " triples (" << kg.relation_count() << " relations, "
              << kg.triple_count() << " triples after inverse expansion)\n";

    double map_sum = 0.0;
    std::size_t evaluated = 0;
    for (const std::string& name : discover_tasks(cfg)) {
        TaskReport task_report;
        try {
            TaskSplit task = load_task_split(kg, (fs::path(cfg.tasks_dir) / name).string(), name);
            task_report = run_task(kg, task, cfg);
        } catch (const std::exception& e) {
            task_report.name = name;
            task_report.ok = false;
            task_report.error = e.what();
        }
        if (task_report.ok && cfg.phases.eval) {
            map_sum += task_report.metrics.map;
            ++evaluated;
        }
        std::cerr << "task " << task_report.name << ": "
                  << (task_report.ok ? "ok" : "FAILED (" + task_report.error + ")");
        if (task_report.ok && cfg.phases.eval)
            std::cerr << " map=" << task_report.metrics.map
                      << " paths=" << task_report.selected_paths;
        std::cerr << "\n";
        report.tasks.push_back(std::move(task_report));
    }
    report.average_map = evaluated ? map_sum / static_cast<double>(evaluated) : 0.0;

    json summary{{"version", std::string(kDcpathVersion)},
                 {"config_hash", cfg.config_hash()},
                 {"seed", cfg.search.seed},
                 {"average_map", report.average_map},
                 {"tasks", json::array()}};
    for (const auto& t : report.tasks) {
        summary["tasks"].push_back(json{{"name", t.name},
                                        {"ok", t.ok},
                                        {"error", t.error},
                                        {"map", t.metrics.map},
                                        {"mrr", t.metrics.mrr},
                                        {"mean_rank", t.metrics.mean_rank},
                                        {"pool_paths", t.pool_size},
                                        {"selected_paths", t.selected_paths}});
    }
    fs::create_directories(cfg.output_dir);
    write_text_file(fs::path(cfg.output_dir) / "summary.json", summary.dump(2) + "\n");
    return report;
}

std::vector<SweepPoint> run_threshold_sweep(const RunConfig& cfg, const std::vector<double>& grid) {
    cfg.validate();
    if (grid.empty()) throw std::invalid_argument("threshold sweep: empty grid");

    KnowledgeGraph kg = load_and_preprocess(cfg);
    std::vector<SweepPoint> points;

    for (const std::string& name : discover_tasks(cfg)) {
        TaskSplit task = load_task_split(kg, (fs::path(cfg.tasks_dir) / name).string(), name);

        PathPool pool;
        RelationPathMatrix matrix(kg.relation_count());
        fs::path snapshot_path = fs::path(cfg.output_dir) / task.name / "pool.jsonl";
        if (!cfg.phases.search && fs::exists(snapshot_path)) {
            std::ifstream snapshot(snapshot_path);
            auto loaded = read_pool_snapshot(snapshot, kg);
            pool = std::move(loaded.first);
        } else {
            SearchResult result = run_path_search(kg, task, cfg.search);
            pool = std::move(result.pool);
        }

        // Negatives are drawn once per task so grid points are comparable.
        MaskedView view = mask_task_edges(kg, task.relation, task.all_pairs());
        NegativeSampler sampler(kg, task);
        SplitRng train_rng = SplitRng::stream(cfg.search.seed, "train-neg:" + task.name);
        SplitRng eval_rng = SplitRng::stream(cfg.search.seed, "eval-neg:" + task.name);
        std::vector<std::vector<EntityId>> train_negatives;
        for (const auto& [head, tail] : task.train) {
            (void)tail;
            train_negatives.push_back(sampler.sample(head, cfg.n_neg, train_rng));
        }
        std::vector<std::vector<EntityId>> eval_negatives;
        for (const auto& [head, tail] : task.test) {
            (void)tail;
            eval_negatives.push_back(sampler.sample(head, cfg.n_neg, eval_rng));
        }

        SelectionThresholds base = cfg.resolved_thresholds();
        for (double threshold : grid) {
            SelectionThresholds th{base.theta_c1, threshold, cfg.sweep_coverage, cfg.sweep_coverage};
            std::vector<SelectedPath> selected = select_paths(pool, th, kg);

            FeatureComputer features(view);
            std::vector<std::vector<double>> rows;
            std::vector<int> labels;
            for (std::size_t i = 0; i < task.train.size(); ++i) {
                const auto& [head, tail] = task.train[i];
                rows.push_back(features.features(head, tail, selected));
                labels.push_back(1);
                for (EntityId neg : train_negatives[i]) {
                    rows.push_back(features.features(head, neg, selected));
                    labels.push_back(0);
                }
            }
            LinearModel model = train_model(rows, labels, cfg.train);

            std::vector<RankingSequence> sequences;
            for (std::size_t i = 0; i < task.test.size(); ++i) {
                if (eval_negatives[i].empty()) continue;
                const auto& [head, tail] = task.test[i];
                RankingSequence seq;
                seq.head = head;
                seq.positive_tail = tail;
                seq.negative_tails = eval_negatives[i];
                seq.positive_score = model.score(features.features(head, tail, selected));
                for (EntityId neg : seq.negative_tails)
                    seq.negative_scores.push_back(model.score(features.features(head, neg, selected)));
                sequences.push_back(std::move(seq));
            }
            double map = sequences.empty() ? 0.0 : evaluate_map(sequences).map;
            points.push_back({task.name, threshold, selected.size(), map});
        }
    }

    fs::create_directories(cfg.output_dir);
    std::ostringstream csv;
    csv << "task,threshold,path_count,map\n";
    for (const auto& p : points)
        csv << p.task << ',' << format_double(p.threshold) << ',' << p.path_count << ','
            << format_double(p.map) << '\n';
    write_text_file(fs::path(cfg.output_dir) / "sweep.csv", csv.str());
    return points;
}

}  // namespace dcpath
