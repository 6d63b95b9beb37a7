#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"

namespace hetfs {

// Schema-level weighted graph of relation contributions:
// mu_R = RF(R) * IRF(R), with RF the relation's share of all edges and IRF
// the log inverse fraction of nodes it touches. An inverse direction
// shares its forward relation's mu. RF and IRF are kept even when mu is
// overridden, for provenance.
class ContributionGraph {
public:
    ContributionGraph() = default;

    static ContributionGraph compute(const Hin& g) {
        if (g.num_edges() == 0) raise(Errc::empty_graph, "contribution needs at least one edge");
        const Schema& sc = g.schema();
        ContributionGraph cg;
        cg.rf_.resize(sc.num_relations());
        cg.irf_.resize(sc.num_relations());
        cg.mu_.resize(sc.num_relations());
        double m = static_cast<double>(g.num_edges());
        double n = static_cast<double>(g.num_nodes());
        for (RelId r = 0; r < sc.num_relations(); ++r) {
            const RelationDecl& decl = sc.relation(r);
            std::uint64_t touched = 0;
            for (NodeId u = 0; u < g.num_nodes(); ++u) {
                bool incident =
                    (g.type_of(u) == decl.src && !g.neighbors(u, forward_dir(r)).empty()) ||
                    (g.type_of(u) == decl.dst && !g.neighbors(u, inverse_dir(r)).empty());
                if (incident) ++touched;
            }
            cg.rf_[r] = g.relation_edge_count(r) / m;
            cg.irf_[r] = touched == 0 ? 0.0 : std::log(n / static_cast<double>(touched));
            cg.mu_[r] = cg.rf_[r] * cg.irf_[r];
        }
        return cg;
    }

    double rf(RelId r) const { return rf_.at(r); }
    double irf(RelId r) const { return irf_.at(r); }
    double mu(RelId r) const { return mu_.at(r); }
    double mu(Dir d) const { return mu_.at(rel_of(d)); }
    std::size_t num_relations() const { return mu_.size(); }

    // Returns a copy with one relation's mu replaced; accepts the forward
    // or inverse name since the pair shares a single weight.
    ContributionGraph with_override(const Schema& schema, const std::string& relation,
                                    double value) const {
        if (value < 0) raise(Errc::negative_value, "contribution must be non-negative");
        Dir d = schema.dir_id(relation);
        ContributionGraph out = *this;
        out.mu_[rel_of(d)] = value;
        return out;
    }

    void set_mu(RelId r, double value) {
        if (value < 0) raise(Errc::negative_value, "contribution must be non-negative");
        mu_.at(r) = value;
    }

    void restore(std::vector<double> rf, std::vector<double> irf, std::vector<double> mu) {
        rf_ = std::move(rf);
        irf_ = std::move(irf);
        mu_ = std::move(mu);
    }

private:
    std::vector<double> rf_;
    std::vector<double> irf_;
    std::vector<double> mu_;
};

// Deterministic DOT rendering: one node per node type, one labeled edge
// per forward relation, mu to two decimals.
inline std::string export_contribution_dot(const Schema& schema, const ContributionGraph& cg) {
    std::string out = "digraph contribution {\n";
    for (TypeId t = 0; t < schema.num_types(); ++t) {
        out += "  " + schema.type_name(t) + ";\n";
    }
    char buf[64];
    for (RelId r = 0; r < schema.num_relations(); ++r) {
        const RelationDecl& decl = schema.relation(r);
        std::snprintf(buf, sizeof(buf), "%.2f", cg.mu(r));
        out += "  " + schema.type_name(decl.src) + " -> " + schema.type_name(decl.dst) +
               " [label=\"" + buf + "\"]; // " + decl.name + "\n";
    }
    out += "}\n";
    return out;
}

}  // namespace hetfs
