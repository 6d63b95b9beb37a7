#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/schema.hpp"

namespace hetfs {

struct NodeRecord {
    std::string id;
    std::string type;
    std::size_t line = 0;  // source line for diagnostics, 0 when synthetic
};

struct EdgeRecord {
    std::string src;
    std::string dst;
    std::string relation;
    double time = 0;
    bool has_time = false;
    std::size_t line = 0;
};

// Immutable typed graph. Node ids are dense and grouped by node type
// (sorted by external id within a type, so layouts are reproducible no
// matter how input rows were ordered). Adjacency is CSR per traversal
// direction; relation R and its inverse are exact transposes.
class Hin {
public:
    const Schema& schema() const { return schema_; }
    std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(type_of_.size()); }
    std::uint64_t num_edges() const { return num_edges_; }
    std::uint64_t relation_edge_count(RelId r) const { return rel_edge_count_.at(r); }

    TypeId type_of(NodeId u) const { return type_of_.at(u); }
    const std::string& external_id(NodeId u) const { return external_ids_.at(u); }

    NodeId node_id(const std::string& external) const {
        auto it = node_by_external_.find(external);
        if (it == node_by_external_.end()) raise(Errc::unknown_node, "node '" + external + "'");
        return it->second;
    }

    bool has_node(const std::string& external) const { return node_by_external_.count(external) > 0; }

    // [first, last) of the dense id range occupied by a node type.
    std::pair<NodeId, NodeId> type_range(TypeId t) const {
        return {type_offset_.at(t), type_offset_.at(t + 1)};
    }
    std::uint32_t type_count(TypeId t) const { return type_offset_.at(t + 1) - type_offset_.at(t); }

    // N_R(u), ascending node id.
    std::span<const NodeId> neighbors(NodeId u, Dir d) const {
        check_node(u);
        check_dir(d);
        if (type_of_[u] != schema_.dir_src(d)) return {};
        const Csr& csr = adjacency_[d];
        NodeId row = u - type_offset_[schema_.dir_src(d)];
        return std::span<const NodeId>(csr.targets.data() + csr.offsets[row],
                                       csr.offsets[row + 1] - csr.offsets[row]);
    }

    // beta_R(u) = |N_R(u)|.
    std::uint32_t structure_weight(NodeId u, Dir d) const {
        return static_cast<std::uint32_t>(neighbors(u, d).size());
    }

    // Total degree over every relation in both directions.
    std::uint64_t total_degree(NodeId u) const { return total_degree_.at(u); }

    friend Hin freeze_graph(Schema schema, const std::vector<NodeRecord>& nodes,
                            const std::vector<EdgeRecord>& edges);

private:
    struct Csr {
        std::vector<std::uint64_t> offsets;
        std::vector<NodeId> targets;
    };

    void check_node(NodeId u) const {
        if (u >= type_of_.size()) raise(Errc::unknown_node, "node id " + std::to_string(u));
    }
    void check_dir(Dir d) const {
        if (d >= adjacency_.size()) raise(Errc::unknown_relation, "direction id " + std::to_string(d));
    }

    Schema schema_;
    std::vector<TypeId> type_of_;
    std::vector<NodeId> type_offset_;  // size num_types + 1
    std::vector<std::string> external_ids_;
    std::unordered_map<std::string, NodeId> node_by_external_;
    std::vector<Csr> adjacency_;  // one per Dir
    std::vector<std::uint64_t> rel_edge_count_;
    std::vector<std::uint64_t> total_degree_;
    std::uint64_t num_edges_ = 0;
};

inline Hin freeze_graph(Schema schema, const std::vector<NodeRecord>& nodes,
                        const std::vector<EdgeRecord>& edges) {
    Hin g;
    g.schema_ = std::move(schema);
    const Schema& sc = g.schema_;

    // Assign dense ids grouped by type, lexicographic within a type.
    std::vector<std::uint32_t> order(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) order[i] = i;
    std::vector<TypeId> record_type(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        const NodeRecord& rec = nodes[i];
        auto t = sc.find_type(rec.type);
        if (!t)
            raise(Errc::unknown_type, "node '" + rec.id + "' has undeclared type '" + rec.type +
                                          "' (line " + std::to_string(rec.line) + ")");
        record_type[i] = *t;
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (record_type[a] != record_type[b]) return record_type[a] < record_type[b];
        return nodes[a].id < nodes[b].id;
    });

    g.type_of_.reserve(nodes.size());
    g.external_ids_.reserve(nodes.size());
    for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
        const NodeRecord& rec = nodes[order[rank]];
        if (!g.node_by_external_.emplace(rec.id, static_cast<NodeId>(rank)).second)
            raise(Errc::format_error, "duplicate node id '" + rec.id + "' (line " +
                                          std::to_string(rec.line) + ")");
        g.type_of_.push_back(record_type[order[rank]]);
        g.external_ids_.push_back(rec.id);
    }
    g.type_offset_.assign(sc.num_types() + 1, 0);
    for (TypeId t : g.type_of_) ++g.type_offset_[t + 1];
    for (std::size_t t = 0; t < sc.num_types(); ++t) g.type_offset_[t + 1] += g.type_offset_[t];

    // Validate and collapse duplicate edges.
    std::vector<std::vector<std::pair<NodeId, NodeId>>> per_rel(sc.num_relations());
    for (const EdgeRecord& rec : edges) {
        auto dir = sc.find_dir(rec.relation);
        if (!dir || is_inverse(*dir))
            raise(Errc::unknown_relation, "edge relation '" + rec.relation + "' (line " +
                                              std::to_string(rec.line) + ")");
        RelId r = rel_of(*dir);
        auto su = g.node_by_external_.find(rec.src);
        auto sv = g.node_by_external_.find(rec.dst);
        if (su == g.node_by_external_.end())
            raise(Errc::unknown_node, "edge endpoint '" + rec.src + "' (line " +
                                          std::to_string(rec.line) + ")");
        if (sv == g.node_by_external_.end())
            raise(Errc::unknown_node, "edge endpoint '" + rec.dst + "' (line " +
                                          std::to_string(rec.line) + ")");
        const RelationDecl& decl = sc.relation(r);
        if (g.type_of_[su->second] != decl.src)
            raise(Errc::endpoint_type_mismatch,
                  "edge (" + rec.src + ", " + rec.dst + "): source is " +
                      sc.type_name(g.type_of_[su->second]) + ", relation " + decl.name +
                      " expects " + sc.type_name(decl.src) + " (line " + std::to_string(rec.line) + ")");
        if (g.type_of_[sv->second] != decl.dst)
            raise(Errc::endpoint_type_mismatch,
                  "edge (" + rec.src + ", " + rec.dst + "): target is " +
                      sc.type_name(g.type_of_[sv->second]) + ", relation " + decl.name +
                      " expects " + sc.type_name(decl.dst) + " (line " + std::to_string(rec.line) + ")");
        per_rel[r].emplace_back(su->second, sv->second);
    }

    g.adjacency_.resize(sc.num_dirs());
    g.rel_edge_count_.assign(sc.num_relations(), 0);
    g.total_degree_.assign(g.type_of_.size(), 0);
    for (RelId r = 0; r < sc.num_relations(); ++r) {
        auto& list = per_rel[r];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.rel_edge_count_[r] = list.size();
        g.num_edges_ += list.size();

        const RelationDecl& decl = sc.relation(r);
        auto build = [&](Dir d, bool transpose) {
            TypeId src_type = transpose ? decl.dst : decl.src;
            std::uint32_t rows = g.type_offset_[src_type + 1] - g.type_offset_[src_type];
            Hin::Csr& csr = g.adjacency_[d];
            csr.offsets.assign(rows + 1, 0);
            for (auto [a, b] : list) {
                NodeId from = transpose ? b : a;
                ++csr.offsets[from - g.type_offset_[src_type] + 1];
            }
            for (std::uint32_t i = 0; i < rows; ++i) csr.offsets[i + 1] += csr.offsets[i];
            csr.targets.resize(list.size());
            std::vector<std::uint64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
            for (auto [a, b] : list) {
                NodeId from = transpose ? b : a;
                NodeId to = transpose ? a : b;
                csr.targets[cursor[from - g.type_offset_[src_type]]++] = to;
            }
            for (std::uint32_t i = 0; i < rows; ++i)
                std::sort(csr.targets.begin() + csr.offsets[i], csr.targets.begin() + csr.offsets[i + 1]);
        };
        build(forward_dir(r), false);
        build(inverse_dir(r), true);
        for (auto [a, b] : list) {
            ++g.total_degree_[a];
            ++g.total_degree_[b];
        }
    }
    return g;
}

}  // namespace hetfs
