#pragma once
// Threshold filter over the final path pool. Confidence and coverage each
// carry two thresholds, one for single-relation paths and one for longer
// ones; a path survives only when it clears both of its length's thresholds
// (inclusive).

#include "dcpath/search.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dcpath {

struct SelectionThresholds {
    double theta_c1 = 0.0;  // confidence, length = 1
    double theta_c2 = 0.0;  // confidence, length > 1
    double theta_p1 = 0.0;  // coverage, length = 1
    double theta_p2 = 0.0;  // coverage, length > 1

    double confidence_for(std::size_t length) const { return length == 1 ? theta_c1 : theta_c2; }
    double coverage_for(std::size_t length) const { return length == 1 ? theta_p1 : theta_p2; }

    void validate() const;  // all values within [0, 1]
};

// Named presets. "fb15k237-lowered" is the default FB15K-237 set; the
// original tighter set stays available as "fb15k237-original".
SelectionThresholds selection_preset(const std::string& name);
std::vector<std::string> selection_preset_names();

struct SelectedPath {
    PathFeature path;
    std::size_t column = 0;  // pool column
    double d_confidence = 0.0;
    double d_coverage = 0.0;
};

// Pool entries passing the thresholds, ordered by D-confidence descending
// (ties: coverage descending, then label sequence). An empty result is a
// valid outcome, not an error.
std::vector<SelectedPath> select_paths(const PathPool& pool, const SelectionThresholds& th,
                                       const KnowledgeGraph& kg);

// Full pool as JSON lines in selection order, each with kept/rejected and the
// rule(s) that rejected it ("confidence", "coverage", or both).
void write_selection_report(std::ostream& out, const PathPool& pool,
                            const SelectionThresholds& th, const KnowledgeGraph& kg);

}  // namespace dcpath
