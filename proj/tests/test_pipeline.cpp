#include "dcpath/pipeline.hpp"

#include "dcpath/oracle_check.hpp"
#include "dcpath/synthetic.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dcpath;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("dcpath_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

// Planted dataset on disk plus a matching config file.
fs::path prepare_planted(const TempDir& dir, const PlantedSpec& spec,
                         const std::string& extra_config = "") {
    PlantedDataset data = make_planted_composition(spec);
    write_planted_dataset(data, dir.path);
    fs::path config = dir.path / "run.conf";
    write_file(config,
               "kg_file = " + (dir.path / "kg.tsv").string() +
                   "\n"
                   "tasks_dir = " + (dir.path / "tasks").string() +
                   "\n"
                   "output_dir = " + (dir.path / "out").string() +
                   "\n"
                   "selection_preset = nell995\n"
                   "n_neg = 5\n"
                   "seed = 7\n" +
                   extra_config);
    return config;
}

}  // namespace

TEST(RunConfig, ParsesFileWithCommentsAndOverrides) {
    TempDir dir("config");
    write_file(dir.path / "c.conf",
               "# comment line\n"
               "kg_file = kg.tsv   # trailing comment\n"
               "tasks_dir = tasks\n"
               "alpha = 0.5\n"
               "beta=0.25\n"
               "enable_sampling = false\n"
               "tasks = one, two\n");
    RunConfig cfg = RunConfig::load((dir.path / "c.conf").string(), {{"alpha", "0.75"}});
    EXPECT_EQ(cfg.kg_file, "kg.tsv");
    EXPECT_DOUBLE_EQ(cfg.search.alpha, 0.75);  // override wins
    EXPECT_DOUBLE_EQ(cfg.search.beta, 0.25);
    EXPECT_FALSE(cfg.search.enable_sampling);
    EXPECT_EQ(cfg.tasks, (std::vector<std::string>{"one", "two"}));
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(RunConfig::from_kv({{"nonsense", "1"}}), std::invalid_argument);
    EXPECT_THROW(RunConfig::from_kv({{"alpha", "abc"}}), std::invalid_argument);
    EXPECT_THROW(RunConfig::from_kv({{"model", "svm"}}), std::invalid_argument);
    EXPECT_THROW(RunConfig::from_kv({{"phases", "search,fly"}}), std::invalid_argument);
    EXPECT_THROW(RunConfig::from_kv({{"selection_preset", "nell995"}, {"theta_c1", "0.5"}}),
                 std::invalid_argument);
}

TEST(RunConfig, PresetAndPhaseResolution) {
    RunConfig cfg = RunConfig::from_kv({{"selection_preset", "nell995"}});
    EXPECT_DOUBLE_EQ(cfg.resolved_thresholds().theta_c2, 0.5);

    RunConfig phases = RunConfig::from_kv({{"phases", "eval"}});
    EXPECT_TRUE(phases.phases.eval);
    EXPECT_TRUE(phases.phases.train);   // implied
    EXPECT_TRUE(phases.phases.select);  // implied
    EXPECT_FALSE(phases.phases.search);

    RunConfig search_only = RunConfig::from_kv({{"phases", "search"}});
    EXPECT_TRUE(search_only.phases.search);
    EXPECT_FALSE(search_only.phases.eval);
}

TEST(RunConfig, HashTracksContent) {
    RunConfig a = RunConfig::from_kv({{"seed", "1"}});
    RunConfig b = RunConfig::from_kv({{"seed", "1"}});
    RunConfig c = RunConfig::from_kv({{"seed", "2"}});
    EXPECT_EQ(a.config_hash(), b.config_hash());
    EXPECT_NE(a.config_hash(), c.config_hash());
}

TEST(RunAll, PlantedDatasetProducesFullReportSet) {
    TempDir dir("planted_run");
    PlantedSpec spec;
    spec.chains = 36;
    spec.noise_edges = 120;
    spec.seed = 29;
    fs::path config = prepare_planted(dir, spec);

    RunConfig cfg = RunConfig::load(config.string());
    RunReport report = run_all(cfg);
    ASSERT_EQ(report.tasks.size(), 1u);
    ASSERT_TRUE(report.tasks[0].ok) << report.tasks[0].error;
    EXPECT_GE(report.tasks[0].metrics.map, 0.99);
    EXPECT_GE(report.average_map, 0.99);

    fs::path task_dir = dir.path / "out" / "links_to";
    EXPECT_TRUE(fs::exists(task_dir / "pool.jsonl"));
    EXPECT_TRUE(fs::exists(task_dir / "selected.jsonl"));
    EXPECT_TRUE(fs::exists(task_dir / "metrics.json"));
    EXPECT_TRUE(fs::exists(task_dir / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir.path / "out" / "summary.json"));
}

TEST(RunAll, RerunIsByteIdenticalOnReports) {
    TempDir dir("determinism");
    PlantedSpec spec;
    spec.chains = 24;
    spec.noise_edges = 90;
    spec.seed = 31;
    fs::path config = prepare_planted(dir, spec);
    RunConfig cfg = RunConfig::load(config.string());

    run_all(cfg);
    fs::path task_dir = dir.path / "out" / "links_to";
    std::string pool_1 = read_file(task_dir / "pool.jsonl");
    std::string selected_1 = read_file(task_dir / "selected.jsonl");
    std::string metrics_1 = read_file(task_dir / "metrics.json");
    std::string summary_1 = read_file(dir.path / "out" / "summary.json");

    run_all(cfg);
    EXPECT_EQ(read_file(task_dir / "pool.jsonl"), pool_1);
    EXPECT_EQ(read_file(task_dir / "selected.jsonl"), selected_1);
    EXPECT_EQ(read_file(task_dir / "metrics.json"), metrics_1);
    EXPECT_EQ(read_file(dir.path / "out" / "summary.json"), summary_1);
}

TEST(RunAll, ManifestRerunReproducesMetrics) {
    TempDir dir("manifest");
    PlantedSpec spec;
    spec.chains = 20;
    spec.noise_edges = 60;
    spec.seed = 37;
    fs::path config = prepare_planted(dir, spec);
    RunConfig cfg = RunConfig::load(config.string());
    run_all(cfg);

    fs::path task_dir = dir.path / "out" / "links_to";
    std::string metrics_1 = read_file(task_dir / "metrics.json");
    RunConfig from_manifest = RunConfig::from_manifest((task_dir / "manifest.json").string());
    EXPECT_EQ(from_manifest.config_hash(), cfg.config_hash());
    run_all(from_manifest);
    EXPECT_EQ(read_file(task_dir / "metrics.json"), metrics_1);
}

TEST(RunAll, PhaseIsolationMatchesEndToEnd) {
    TempDir dir_full("phase_full");
    TempDir dir_split("phase_split");
    PlantedSpec spec;
    spec.chains = 24;
    spec.noise_edges = 80;
    spec.seed = 41;

    fs::path config_full = prepare_planted(dir_full, spec);
    run_all(RunConfig::load(config_full.string()));

    fs::path config_split = prepare_planted(dir_split, spec);
    run_all(RunConfig::load(config_split.string(), {{"phases", "search"}}));
    run_all(RunConfig::load(config_split.string(), {{"phases", "select,train,eval"}}));

    fs::path full_task = dir_full.path / "out" / "links_to";
    fs::path split_task = dir_split.path / "out" / "links_to";
    EXPECT_EQ(read_file(split_task / "pool.jsonl"), read_file(full_task / "pool.jsonl"));
    EXPECT_EQ(read_file(split_task / "selected.jsonl"), read_file(full_task / "selected.jsonl"));
    EXPECT_EQ(read_file(split_task / "metrics.json"), read_file(full_task / "metrics.json"));
}

TEST(RunAll, MissingPoolSnapshotFailsTheTask) {
    TempDir dir("nopool");
    PlantedSpec spec;
    spec.chains = 12;
    spec.seed = 43;
    fs::path config = prepare_planted(dir, spec);
    RunReport report = run_all(RunConfig::load(config.string(), {{"phases", "select,train,eval"}}));
    ASSERT_EQ(report.tasks.size(), 1u);
    EXPECT_FALSE(report.tasks[0].ok);
    EXPECT_NE(report.tasks[0].error.find("pool snapshot"), std::string::npos);
}

TEST(RunAll, ConfigValidationCatchesMissingInputs) {
    RunConfig cfg = RunConfig::from_kv({{"kg_file", "/nonexistent/kg.tsv"},
                                        {"tasks_dir", "/nonexistent/tasks"}});
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_THROW(run_all(cfg), std::invalid_argument);
}

TEST(ThresholdSweep, PathCountsMonotoneAndMapTracksPlantedPath) {
    TempDir dir("sweep");
    PlantedSpec spec;
    spec.chains = 30;
    spec.noise_edges = 90;
    spec.seed = 47;
    spec.forked_chains = 15;  // planted confidence 30/45 = 2/3
    fs::path config = prepare_planted(dir, spec);
    RunConfig cfg = RunConfig::load(config.string());

    std::vector<double> grid{0.3, 0.6, 0.8};
    auto points = run_threshold_sweep(cfg, grid);
    ASSERT_EQ(points.size(), grid.size());

    for (std::size_t i = 1; i < points.size(); ++i)
        EXPECT_LE(points[i].path_count, points[i - 1].path_count);

    // The planted path (confidence 2/3) survives the first two grid points
    // and separates candidates; filtered at 0.8 the score collapses.
    EXPECT_GE(points[0].map, 0.8);
    EXPECT_GE(points[1].map, 0.8);
    EXPECT_LT(points[2].map, points[0].map);
    EXPECT_TRUE(fs::exists(dir.path / "out" / "sweep.csv"));

    std::string csv = read_file(dir.path / "out" / "sweep.csv");
    EXPECT_NE(csv.find("task,threshold,path_count,map"), std::string::npos);
}

TEST(RunAll, LogisticModelVariantWorksEndToEnd) {
    TempDir dir("logistic");
    PlantedSpec spec;
    spec.chains = 20;
    spec.noise_edges = 60;
    spec.seed = 53;
    fs::path config = prepare_planted(dir, spec, "model = logistic\n");
    RunReport report = run_all(RunConfig::load(config.string()));
    ASSERT_EQ(report.tasks.size(), 1u);
    ASSERT_TRUE(report.tasks[0].ok) << report.tasks[0].error;
    EXPECT_GE(report.tasks[0].metrics.map, 0.99);
    std::string metrics = read_file(dir.path / "out" / "links_to" / "metrics.json");
    EXPECT_NE(metrics.find("logistic-gd"), std::string::npos);
}

TEST(ThresholdSweep, ReusesPoolSnapshotWhenSearchPhaseIsOff) {
    TempDir dir("sweep_reuse");
    PlantedSpec spec;
    spec.chains = 18;
    spec.noise_edges = 50;
    spec.seed = 59;
    fs::path config = prepare_planted(dir, spec);

    std::vector<double> grid{0.2, 0.6};
    auto fresh = run_threshold_sweep(RunConfig::load(config.string()), grid);

    // Search once, then sweep from the stored snapshot.
    run_all(RunConfig::load(config.string(), {{"phases", "search"}}));
    auto reused =
        run_threshold_sweep(RunConfig::load(config.string(), {{"phases", "select,train,eval"}}), grid);

    ASSERT_EQ(fresh.size(), reused.size());
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        EXPECT_EQ(fresh[i].path_count, reused[i].path_count);
        EXPECT_DOUBLE_EQ(fresh[i].map, reused[i].map);
    }
}

TEST(ThresholdSweep, EmptyGridThrows) {
    TempDir dir("sweep_empty");
    PlantedSpec spec;
    spec.chains = 8;
    spec.seed = 51;
    fs::path config = prepare_planted(dir, spec);
    EXPECT_THROW(run_threshold_sweep(RunConfig::load(config.string()), {}), std::invalid_argument);
}

TEST(OracleCheck, ZeroBoundIsVacuousPass) {
    OracleCheckConfig cfg;
    cfg.max_entities = 0;
    OracleCheckReport report = run_oracle_check(cfg);
    EXPECT_TRUE(report.vacuous);
    EXPECT_TRUE(report.passed());
}

TEST(OracleCheck, AdversarialCyclicGraphPasses) {
    GraphBuilder builder;
    builder.add("a", "r", "b").add("b", "r", "c").add("c", "r", "a").add("a", "r", "a")
        .add("b", "s", "a").add("c", "s", "c").add("a", "t", "c").add("b", "t", "b");
    KnowledgeGraph kg = add_inverse_relations(builder.build(), 100);
    TaskSplit task;
    task.name = "cyclic";
    task.relation = kg.relations().find("t");
    task.relation_label = "t";
    task.train = {{kg.entities().find("a"), kg.entities().find("c")},
                  {kg.entities().find("b"), kg.entities().find("b")}};

    std::size_t compared = 0;
    std::string counterexample;
    EXPECT_TRUE(check_exhaustive_equivalence(kg, task, 3, &compared, &counterexample))
        << counterexample;
    EXPECT_GT(compared, 0u);
}

TEST(DiscoverTasks, SortedListingAndFilter) {
    TempDir dir("discover");
    fs::create_directories(dir.path / "tasks" / "zeta");
    fs::create_directories(dir.path / "tasks" / "alpha");
    fs::create_directories(dir.path / "tasks" / "mid");
    RunConfig cfg;
    cfg.tasks_dir = (dir.path / "tasks").string();
    EXPECT_EQ(discover_tasks(cfg), (std::vector<std::string>{"alpha", "mid", "zeta"}));
    cfg.tasks = {"zeta", "alpha"};
    EXPECT_EQ(discover_tasks(cfg), (std::vector<std::string>{"zeta", "alpha"}));
}
