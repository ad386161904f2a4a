#include "dcpath/kg.hpp"
#include "dcpath/task.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace dcpath {

namespace {

bool ends_with_inverse_suffix(std::string_view label) {
    return label.size() > kInverseSuffix.size() &&
           label.substr(label.size() - kInverseSuffix.size()) == kInverseSuffix;
}

}  // namespace

KnowledgeGraph KnowledgeGraph::load_triples(std::istream& in, LoadStats* stats) {
    GraphBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    std::size_t parsed = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto first = line.find('\t');
        auto second = first == std::string::npos ? std::string::npos : line.find('\t', first + 1);
        auto third = second == std::string::npos ? std::string::npos : line.find('\t', second + 1);
        if (first == std::string::npos || second == std::string::npos || third != std::string::npos)
            throw std::runtime_error("triple parse error at line " + std::to_string(line_no) +
                                     ": expected head<TAB>relation<TAB>tail");
        std::string_view head(line.data(), first);
        std::string_view rel(line.data() + first + 1, second - first - 1);
        std::string_view tail(line.data() + second + 1, line.size() - second - 1);
        if (head.empty() || rel.empty() || tail.empty())
            throw std::runtime_error("triple parse error at line " + std::to_string(line_no) +
                                     ": empty field");
        builder.add(head, rel, tail);
        ++parsed;
    }
    KnowledgeGraph kg = builder.build();
    if (stats) {
        stats->lines = line_no;
        stats->triples = kg.triple_count();
        stats->duplicates = parsed - kg.triple_count();
        stats->entities = kg.entity_count();
        stats->relations = kg.relation_count();
    }
    return kg;
}

KnowledgeGraph KnowledgeGraph::load_triples_file(const std::string& path, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triple file: " + path);
    return load_triples(in, stats);
}

void KnowledgeGraph::finalize() {
    triple_count_ = 0;
    relation_index_.assign(adjacency_.size(), {});
    for (std::size_t e = 0; e < adjacency_.size(); ++e) {
        auto& rels = adjacency_[e];
        std::sort(rels.begin(), rels.end(),
                  [](const RelationEdges& a, const RelationEdges& b) { return a.relation < b.relation; });
        for (auto& re : rels) {
            std::sort(re.neighbors.begin(), re.neighbors.end());
            re.neighbors.erase(std::unique(re.neighbors.begin(), re.neighbors.end()),
                               re.neighbors.end());
            triple_count_ += re.neighbors.size();
            relation_index_[e].push_back(re.relation);
        }
    }
}

std::span<const EntityId> KnowledgeGraph::neighbors(EntityId e, RelationId r) const {
    if (e >= adjacency_.size()) return {};
    const auto& rels = adjacency_[e];
    auto it = std::lower_bound(rels.begin(), rels.end(), r,
                               [](const RelationEdges& re, RelationId key) { return re.relation < key; });
    if (it == rels.end() || it->relation != r) return {};
    return {it->neighbors.data(), it->neighbors.size()};
}

bool KnowledgeGraph::has_triple(EntityId h, RelationId r, EntityId t) const {
    auto ns = neighbors(h, r);
    return std::binary_search(ns.begin(), ns.end(), t);
}

std::span<const RelationId> KnowledgeGraph::relations_of(EntityId e) const {
    if (e >= relation_index_.size()) return {};
    return {relation_index_[e].data(), relation_index_[e].size()};
}

std::vector<std::pair<RelationId, std::size_t>> KnowledgeGraph::out_degree(EntityId e) const {
    std::vector<std::pair<RelationId, std::size_t>> out;
    if (e >= adjacency_.size()) return out;
    for (const auto& re : adjacency_[e]) out.emplace_back(re.relation, re.neighbors.size());
    return out;
}

std::vector<Triple> KnowledgeGraph::triples() const {
    std::vector<Triple> out;
    out.reserve(triple_count_);
    for (EntityId e = 0; e < adjacency_.size(); ++e)
        for (const auto& re : adjacency_[e])
            for (EntityId t : re.neighbors) out.push_back({e, re.relation, t});
    std::sort(out.begin(), out.end());
    return out;
}

void KnowledgeGraph::serialize(std::ostream& out) const {
    for (const Triple& t : triples())
        out << entities_.label(t.head) << '\t' << relations_.label(t.relation) << '\t'
            << entities_.label(t.tail) << '\n';
}

RelationId KnowledgeGraph::inverse_of(RelationId r) const {
    if (r >= relations_.size()) return kNoRelation;
    return relations_.find(relations_.label(r) + std::string(kInverseSuffix));
}

void KnowledgeGraph::for_each_triple(
    const std::function<void(EntityId, RelationId, EntityId)>& fn) const {
    for (EntityId e = 0; e < adjacency_.size(); ++e)
        for (const auto& re : adjacency_[e])
            for (EntityId t : re.neighbors) fn(e, re.relation, t);
}

GraphBuilder& GraphBuilder::add(std::string_view head, std::string_view relation,
                                std::string_view tail) {
    EntityId h = kg_.entities_.intern(head);
    RelationId r = kg_.relations_.intern(relation);
    EntityId t = kg_.entities_.intern(tail);
    staged_.push_back({h, r, t});
    return *this;
}

KnowledgeGraph GraphBuilder::build() {
    kg_.adjacency_.assign(kg_.entities_.size(), {});
    for (const Triple& tr : staged_) {
        auto& rels = kg_.adjacency_[tr.head];
        auto it = std::find_if(rels.begin(), rels.end(),
                               [&](const auto& re) { return re.relation == tr.relation; });
        if (it == rels.end()) {
            rels.push_back({tr.relation, {tr.tail}});
        } else {
            it->neighbors.push_back(tr.tail);
        }
    }
    staged_.clear();
    kg_.finalize();
    return std::move(kg_);
}

KnowledgeGraph add_inverse_relations(const KnowledgeGraph& kg, std::size_t fanin_threshold) {
    for (RelationId r = 0; r < kg.relation_count(); ++r)
        if (ends_with_inverse_suffix(kg.relations().label(r)))
            throw std::runtime_error("add_inverse_relations applied twice: relation '" +
                                     kg.relations().label(r) + "' already carries the " +
                                     std::string(kInverseSuffix) + " suffix");

    // Max tail fan-in per relation: how many distinct heads reach the most
    // shared tail. Relations above the threshold gain no inverse triples.
    std::vector<std::map<EntityId, std::size_t>> fanin(kg.relation_count());
    kg.for_each_triple([&](EntityId, RelationId r, EntityId t) { ++fanin[r][t]; });
    std::vector<bool> filtered(kg.relation_count(), false);
    for (RelationId r = 0; r < kg.relation_count(); ++r)
        for (const auto& [tail, heads] : fanin[r])
            if (heads > fanin_threshold) {
                filtered[r] = true;
                break;
            }

    KnowledgeGraph out = kg;
    // Inverse ids are appended after all base relations, in base-id order.
    std::vector<RelationId> inverse_id(kg.relation_count(), kNoRelation);
    for (RelationId r = 0; r < kg.relation_count(); ++r) {
        if (filtered[r]) continue;
        std::string label = kg.relations().label(r) + std::string(kInverseSuffix);
        if (out.relations_.contains(label))
            throw std::runtime_error("inverse label collision: '" + label + "' already interned");
        inverse_id[r] = out.relations_.intern(label);
    }
    kg.for_each_triple([&](EntityId h, RelationId r, EntityId t) {
        if (inverse_id[r] == kNoRelation) return;
        auto& rels = out.adjacency_[t];
        auto it = std::find_if(rels.begin(), rels.end(),
                               [&](const auto& re) { return re.relation == inverse_id[r]; });
        if (it == rels.end())
            rels.push_back({inverse_id[r], {h}});
        else
            it->neighbors.push_back(h);
    });
    out.finalize();
    return out;
}

MaskedView::MaskedView(const KnowledgeGraph& kg, RelationId relation, PairSet masked_pairs)
    : kg_(&kg), masked_rel_(relation), masked_inv_(kg.inverse_of(relation)),
      masked_pairs_(std::move(masked_pairs)) {}

std::vector<EntityId> MaskedView::neighbors(EntityId e, RelationId r) const {
    std::vector<EntityId> out;
    for_each_neighbor(e, r, [&](EntityId n) { out.push_back(n); });
    return out;
}

std::size_t MaskedView::out_degree(EntityId e, RelationId r) const {
    std::size_t n = 0;
    for_each_neighbor(e, r, [&](EntityId) { ++n; });
    return n;
}

std::vector<std::pair<RelationId, std::size_t>> MaskedView::out_degree(EntityId e) const {
    std::vector<std::pair<RelationId, std::size_t>> out;
    for (RelationId r : kg_->relations_of(e)) {
        std::size_t d = out_degree(e, r);
        if (d > 0) out.emplace_back(r, d);
    }
    return out;
}

MaskedView mask_task_edges(const KnowledgeGraph& kg, RelationId relation,
                           const std::vector<std::pair<EntityId, EntityId>>& pairs) {
    if (!kg.has_relation(relation))
        throw std::invalid_argument("mask_task_edges: unknown relation id " +
                                    std::to_string(relation));
    PairSet masked(pairs.begin(), pairs.end());
    return MaskedView(kg, relation, std::move(masked));
}

std::vector<EntityId> TaskSplit::train_tails(EntityId head) const {
    std::vector<EntityId> out;
    for (const auto& [h, t] : train)
        if (h == head) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<EntityId> TaskSplit::known_tails(const KnowledgeGraph& kg, EntityId head) const {
    std::set<EntityId> tails;
    for (EntityId t : kg.neighbors(head, relation)) tails.insert(t);
    for (const auto& [h, t] : train)
        if (h == head) tails.insert(t);
    for (const auto& [h, t] : test)
        if (h == head) tails.insert(t);
    return {tails.begin(), tails.end()};
}

std::vector<std::pair<EntityId, EntityId>> TaskSplit::all_pairs() const {
    auto out = train;
    out.insert(out.end(), test.begin(), test.end());
    return out;
}

std::vector<std::pair<EntityId, EntityId>> load_pair_file(const KnowledgeGraph& kg,
                                                          const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pair file: " + path);
    std::vector<std::pair<EntityId, EntityId>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw std::runtime_error(path + ": pair parse error at line " + std::to_string(line_no) +
                                     ": expected head<TAB>tail");
        std::string head = line.substr(0, tab);
        std::string tail = line.substr(tab + 1);
        EntityId h = kg.entities().find(head);
        EntityId t = kg.entities().find(tail);
        if (h == kNoEntity)
            throw std::runtime_error(path + ": unknown entity '" + head + "' at line " +
                                     std::to_string(line_no));
        if (t == kNoEntity)
            throw std::runtime_error(path + ": unknown entity '" + tail + "' at line " +
                                     std::to_string(line_no));
        pairs.emplace_back(h, t);
    }
    return pairs;
}

TaskSplit load_task_split(const KnowledgeGraph& kg, const std::string& dir,
                          const std::string& name) {
    namespace fs = std::filesystem;
    TaskSplit task;
    task.name = name;

    fs::path base(dir);
    fs::path relation_file = base / "relation.txt";
    if (fs::exists(relation_file)) {
        std::ifstream in(relation_file);
        std::getline(in, task.relation_label);
        while (!task.relation_label.empty() &&
               (task.relation_label.back() == '\r' || task.relation_label.back() == '\n' ||
                task.relation_label.back() == ' '))
            task.relation_label.pop_back();
    } else {
        task.relation_label = name;
    }

    task.relation = kg.relations().find(task.relation_label);
    if (task.relation == kNoRelation)
        throw std::runtime_error("task " + name + ": relation '" + task.relation_label +
                                 "' not present in the graph");

    task.train = load_pair_file(kg, (base / "train_pos").string());
    task.test = load_pair_file(kg, (base / "test_pos").string());

    PairSet train_set(task.train.begin(), task.train.end());
    for (const auto& p : task.test)
        if (train_set.count(p))
            throw std::runtime_error("task " + name + ": pair appears in both train_pos and test_pos (" +
                                     kg.entities().label(p.first) + ", " +
                                     kg.entities().label(p.second) + ")");
    return task;
}

}  // namespace dcpath
