#pragma once
// Equivalence audit: exhaustive-mode search tallies against the exact walk
// measures, on seeded random graphs. Each pool entry is recomputed from its
// first-appearance pair onward under the same per-pair masking the search
// used; any disagreement is a hard failure with a printable counterexample.

#include "dcpath/kg.hpp"
#include "dcpath/synthetic.hpp"
#include "dcpath/task.hpp"

#include <cstdint>
#include <string>

namespace dcpath {

struct OracleCheckConfig {
    std::size_t graphs = 25;
    std::size_t max_entities = 50;
    std::size_t max_relations = 6;
    std::size_t max_triples = 130;
    std::size_t train_pairs = 6;
    std::size_t l_max = 3;
    std::uint64_t seed = 9001;
};

struct OracleCheckReport {
    std::size_t graphs_checked = 0;
    std::size_t paths_compared = 0;
    std::size_t mismatches = 0;
    bool vacuous = false;  // zero graphs requested or producible
    std::string first_counterexample;

    bool passed() const { return mismatches == 0; }
};

// Compares one task's exhaustive search against the exact measures. Appends
// the number of compared paths to *paths_compared; on the first mismatch
// fills *counterexample and returns false.
bool check_exhaustive_equivalence(const KnowledgeGraph& kg, const TaskSplit& task,
                                  std::size_t l_max, std::size_t* paths_compared,
                                  std::string* counterexample);

OracleCheckReport run_oracle_check(const OracleCheckConfig& cfg);

}  // namespace dcpath
