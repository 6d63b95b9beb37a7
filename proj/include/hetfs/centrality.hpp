#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"

namespace hetfs {

// Node centrality fixed point. Records how the iteration went so callers
// can tell a converged table from a capped one.
struct CentralityTable {
    std::vector<double> alpha;
    double c_n = 0.85;
    std::uint32_t iterations = 0;
    double final_residual = 0;
    bool converged = false;
    std::vector<double> residual_history;

    double operator()(NodeId u) const { return alpha.at(u); }
};

namespace detail {

// One damped transition sweep followed by per-type mean-1 rescaling.
//
// A node distributes its centrality evenly among its neighbors, per
// relation direction: u receives alpha(u') / |N_{d^-1}(u')| from every
// neighbor u' along d (the same fan-back convention the structure weight
// uses). Nodes with no edges at all hand their mass uniformly to their own
// node type. The transition is damped by c_n against a uniform base mass,
// PageRank style; without the base term the recursion is not a contraction
// (a node touching k relations feeds back k contributions).
inline std::vector<double> centrality_step(const Hin& g, const std::vector<double>& alpha,
                                           double c_n) {
    const Schema& sc = g.schema();
    std::uint32_t n = g.num_nodes();
    std::vector<double> next(n, 0.0);

    std::vector<double> dangling_mass(sc.num_types(), 0.0);
    for (NodeId u = 0; u < n; ++u)
        if (g.total_degree(u) == 0) dangling_mass[g.type_of(u)] += alpha[u];

    for (NodeId u = 0; u < n; ++u) {
        double acc = 0;
        for (Dir d = 0; d < sc.num_dirs(); ++d) {
            if (sc.dir_src(d) != g.type_of(u)) continue;
            for (NodeId v : g.neighbors(u, d))
                acc += alpha[v] / static_cast<double>(g.structure_weight(v, flip(d)));
        }
        TypeId t = g.type_of(u);
        std::uint32_t type_n = g.type_count(t);
        if (type_n > 0) acc += dangling_mass[t] / type_n;
        next[u] = c_n * acc + (1.0 - c_n);
    }

    for (TypeId t = 0; t < sc.num_types(); ++t) {
        auto [first, last] = g.type_range(t);
        if (first == last) continue;
        double sum = 0;
        for (NodeId u = first; u < last; ++u) sum += next[u];
        double mean = sum / (last - first);
        if (mean > 0)
            for (NodeId u = first; u < last; ++u) next[u] /= mean;
        else
            for (NodeId u = first; u < last; ++u) next[u] = 1.0;
    }
    return next;
}

}  // namespace detail

inline CentralityTable compute_centrality(const Hin& g, double c_n = 0.85, double tol = 1e-8,
                                          std::uint32_t max_iter = 100) {
    if (!(c_n > 0.0 && c_n < 1.0))
        raise(Errc::invalid_parameter, "c_n must lie in (0, 1)");
    if (tol <= 0) raise(Errc::invalid_parameter, "tolerance must be positive");
    if (max_iter == 0) raise(Errc::invalid_parameter, "max_iter must be positive");

    CentralityTable table;
    table.c_n = c_n;
    table.alpha.assign(g.num_nodes(), 1.0);
    if (g.num_nodes() == 0) return table;

    for (std::uint32_t it = 0; it < max_iter; ++it) {
        std::vector<double> next = detail::centrality_step(g, table.alpha, c_n);
        double residual = 0;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            residual = std::max(residual, std::abs(next[u] - table.alpha[u]));
        table.alpha = std::move(next);
        table.iterations = it + 1;
        table.final_residual = residual;
        table.residual_history.push_back(residual);
        if (residual <= tol) {
            table.converged = true;
            break;
        }
    }
    return table;
}

}  // namespace hetfs
