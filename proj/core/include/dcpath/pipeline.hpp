#pragma once
// End-to-end task orchestration behind the CLI: resolved run configuration,
// per-task search -> select -> train -> evaluate, report and manifest
// emission, and the confidence-threshold sweep.
//
// Reports (pool.jsonl, selected.jsonl, metrics.json, sweep.csv, summary.json)
// are pure functions of config + seed and rerun byte-identical; wall-clock
// timings live only in manifest.json.

#include "dcpath/kg.hpp"
#include "dcpath/reasoning.hpp"
#include "dcpath/search.hpp"
#include "dcpath/selection.hpp"
#include "dcpath/task.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dcpath {

inline constexpr std::string_view kDcpathVersion = "0.1.0";

struct Phases {
    bool search = true;
    bool select = true;
    bool train = true;
    bool eval = true;
};

struct RunConfig {
    std::string kg_file;
    std::string tasks_dir;
    std::vector<std::string> tasks;  // empty: every directory under tasks_dir
    std::string output_dir = "out";

    std::size_t fanin_threshold = 100;
    SearchConfig search;
    std::string selection_preset;  // empty: explicit thresholds below
    SelectionThresholds thresholds;
    std::size_t n_neg = 10;
    TrainConfig train;
    Phases phases;
    double sweep_coverage = 0.01;  // coverage floor during threshold sweeps

    // Parses flat `key = value` lines; '#' starts a comment. Unknown keys are
    // errors. Later assignments win, so CLI overrides append.
    static RunConfig from_kv(const std::map<std::string, std::string>& kv);
    static RunConfig load(const std::string& path,
                          const std::vector<std::pair<std::string, std::string>>& overrides = {});
    // Rebuilds the exact configuration recorded by a previous run.
    static RunConfig from_manifest(const std::string& manifest_path);

    // Canonical key-value form (sorted); basis of the config hash.
    std::map<std::string, std::string> to_kv() const;
    std::string config_hash() const;

    void validate() const;
    SelectionThresholds resolved_thresholds() const;
};

struct PhaseTimings {
    std::int64_t search_ms = 0;
    std::int64_t select_ms = 0;
    std::int64_t train_ms = 0;
    std::int64_t eval_ms = 0;
    std::int64_t total_ms = 0;
};

struct TaskReport {
    std::string name;
    bool ok = false;
    std::string error;
    std::vector<std::string> warnings;
    std::size_t pool_size = 0;
    std::size_t selected_paths = 0;
    std::size_t train_pairs = 0;
    std::size_t test_pairs = 0;
    RankingMetrics metrics;
    SearchLog search_log;
    PhaseTimings timings;
};

struct RunReport {
    std::vector<TaskReport> tasks;
    double average_map = 0.0;  // over evaluated tasks
    bool all_ok() const;
};

// Executes the configured phases for one task; writes pool.jsonl,
// selected.jsonl, metrics.json, and manifest.json under
// output_dir/<task name>/. When the search phase is disabled the pool is
// read back from an existing pool.jsonl.
TaskReport run_task(const KnowledgeGraph& kg, const TaskSplit& task, const RunConfig& cfg);

// Loads the graph (with inverse relations), discovers or filters tasks, runs
// each, and writes summary.json. Task failures are recorded, not thrown.
RunReport run_all(const RunConfig& cfg);

// Task directory names under cfg.tasks_dir, honoring cfg.tasks.
std::vector<std::string> discover_tasks(const RunConfig& cfg);

struct SweepPoint {
    std::string task;
    double threshold = 0.0;
    std::size_t path_count = 0;
    double map = 0.0;
};

// Re-selects and re-evaluates per grid point from one search per task
// (single-relation paths keep the base confidence threshold; the grid value
// applies to longer paths; coverage is pinned at cfg.sweep_coverage).
// Writes sweep.csv under output_dir. Throws on an empty grid.
std::vector<SweepPoint> run_threshold_sweep(const RunConfig& cfg, const std::vector<double>& grid);

// Loads kg_file and applies inverse-relation preprocessing, reporting counts.
KnowledgeGraph load_and_preprocess(const RunConfig& cfg, LoadStats* raw_stats = nullptr);

}  // namespace dcpath
