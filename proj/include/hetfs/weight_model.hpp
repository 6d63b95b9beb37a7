#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hetfs/centrality.hpp"
#include "hetfs/content.hpp"
#include "hetfs/contribution.hpp"
#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"

namespace hetfs {

enum class ContentMode { per_node, pairwise, off };

inline ContentMode content_mode_from_string(const std::string& s) {
    if (s == "node") return ContentMode::per_node;
    if (s == "pair") return ContentMode::pairwise;
    if (s == "off") return ContentMode::off;
    raise(Errc::invalid_parameter, "content mode must be node, pair or off (got '" + s + "')");
}

inline const char* to_string(ContentMode m) {
    switch (m) {
        case ContentMode::per_node: return "node";
        case ContentMode::pairwise: return "pair";
        case ContentMode::off: return "off";
    }
    return "?";
}

// Everything a similarity query needs: the frozen graph plus the
// precomputed chi/alpha/mu tables, the decay factor, the content mode and
// the ablation switches that force any factor to exactly 1.
struct WeightModel {
    const Hin* hin = nullptr;
    ContentScoreTable content;
    CentralityTable centrality;
    ContributionGraph contribution;
    double c = 0.8;
    ContentMode mode = ContentMode::per_node;
    bool unit_chi = false;
    bool unit_alpha = false;
    bool unit_mu = false;

    const Hin& graph() const { return *hin; }

    void validate() const {
        if (!hin) raise(Errc::invalid_parameter, "weight model has no graph");
        if (!(c > 0.0 && c < 1.0)) raise(Errc::invalid_parameter, "decay c must lie in (0, 1)");
    }

    double alpha(NodeId u) const { return unit_alpha ? 1.0 : centrality.alpha[u]; }

    // chi as it enters a one-sided factor. In pairwise mode the per-level
    // content term is the relatedness of the two visited nodes instead, so
    // the one-sided factor carries no chi at all.
    double chi(NodeId u) const {
        if (unit_chi || mode != ContentMode::per_node) return 1.0;
        return content.chi(u);
    }

    double mu(Dir d) const { return unit_mu ? 1.0 : contribution.mu(d); }

    // Per-level content term multiplied between the two sides. Per-node
    // content is already inside each side's step factor.
    double level_content(NodeId x, NodeId y) const {
        if (mode == ContentMode::pairwise && !unit_chi) return content.relatedness(x, y);
        return 1.0;
    }

    // One side's share of the recursion-level weight for stepping from x
    // to xp along direction d:
    //
    //     sqrt(c * mu(d)) * chi(xp) * alpha(xp) / |N_{d^-1}(xp)|
    //
    // The two sides' factors at one level multiply back to the full
    // summand c * chi * chi * alpha * alpha * mu / (beta * beta). beta is
    // taken in the inverse direction: the fan of the visited node back
    // toward the previous type (an actor splits influence over the movies
    // they appeared in).
    double step_factor(NodeId x, NodeId xp, Dir d) const {
        auto nbrs = hin->neighbors(x, d);
        if (!std::binary_search(nbrs.begin(), nbrs.end(), xp))
            raise(Errc::not_neighbor, hin->external_id(xp) + " is not a " +
                                          hin->schema().dir_name(d) + " neighbor of " +
                                          hin->external_id(x));
        return side_factor(xp, d);
    }

    // step_factor without the neighborhood check; engines call this on
    // nodes they just pulled out of the adjacency.
    double side_factor(NodeId xp, Dir d) const {
        double beta = static_cast<double>(hin->structure_weight(xp, flip(d)));
        return std::sqrt(c * mu(d)) * chi(xp) * alpha(xp) / beta;
    }
};

}  // namespace hetfs
