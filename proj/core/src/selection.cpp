#include "dcpath/selection.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace dcpath {

using json = nlohmann::json;

void SelectionThresholds::validate() const {
    for (double v : {theta_c1, theta_c2, theta_p1, theta_p2})
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("SelectionThresholds: values must lie in [0, 1]");
}

SelectionThresholds selection_preset(const std::string& name) {
    if (name == "nell995") return {0.3, 0.5, 0.01, 0.1};
    if (name == "fb15k237-lowered") return {0.2, 0.2, 0.02, 0.02};
    if (name == "fb15k237-original") return {0.2, 0.3, 0.02, 0.2};
    throw std::invalid_argument("unknown selection preset '" + name + "'");
}

std::vector<std::string> selection_preset_names() {
    return {"nell995", "fb15k237-lowered", "fb15k237-original"};
}

namespace {

std::vector<std::size_t> selection_order(const PathPool& pool, const KnowledgeGraph& kg) {
    std::vector<std::size_t> order(pool.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pool_order_less(pool[a], pool[b], kg);
    });
    return order;
}

// Empty string means kept; otherwise the failed rule(s).
std::string rejection_rule(const PathPoolEntry& e, const SelectionThresholds& th) {
    bool conf_ok = e.d_confidence() >= th.confidence_for(e.path.length());
    bool cov_ok = e.d_coverage() >= th.coverage_for(e.path.length());
    if (conf_ok && cov_ok) return {};
    if (!conf_ok && !cov_ok) return "confidence+coverage";
    return conf_ok ? "coverage" : "confidence";
}

}  // namespace

std::vector<SelectedPath> select_paths(const PathPool& pool, const SelectionThresholds& th,
                                       const KnowledgeGraph& kg) {
    th.validate();
    std::vector<SelectedPath> out;
    for (std::size_t j : selection_order(pool, kg)) {
        const auto& e = pool[j];
        if (!rejection_rule(e, th).empty()) continue;
        out.push_back({e.path, j, e.d_confidence(), e.d_coverage()});
    }
    return out;
}

void write_selection_report(std::ostream& out, const PathPool& pool,
                            const SelectionThresholds& th, const KnowledgeGraph& kg) {
    th.validate();
    for (std::size_t j : selection_order(pool, kg)) {
        const auto& e = pool[j];
        std::vector<std::string> labels;
        labels.reserve(e.path.relations.size());
        for (RelationId r : e.path.relations) labels.push_back(kg.relations().label(r));
        std::string rule = rejection_rule(e, th);
        json record{{"path", labels},
                    {"support_sum", e.support_sum},
                    {"count_sum", e.count_sum},
                    {"cover_sum", e.cover_sum},
                    {"pairs_seen", e.pairs_seen},
                    {"first_pair", e.first_pair},
                    {"column", j},
                    {"d_confidence", e.d_confidence()},
                    {"d_coverage", e.d_coverage()},
                    {"kept", rule.empty()},
                    {"rejected_by", rule}};
        out << record.dump() << '\n';
    }
}

}  // namespace dcpath
