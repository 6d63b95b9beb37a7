#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"
#include "hetfs/rng.hpp"

namespace hetfs {

struct SimRankConfig {
    double c = 0.8;
    std::uint32_t iterations = 10;
    double tol = 1e-9;

    void validate() const {
        if (!(c > 0.0 && c < 1.0)) raise(Errc::invalid_parameter, "SimRank c must lie in (0, 1)");
        if (iterations == 0) raise(Errc::invalid_parameter, "SimRank needs at least one iteration");
    }
};

namespace detail {

// Typing ignored: the union of every relation's neighbors in both
// directions, deduplicated.
inline std::vector<std::vector<NodeId>> merged_neighbors(const Hin& g) {
    std::vector<std::vector<NodeId>> nbr(g.num_nodes());
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        for (Dir d = 0; d < g.schema().num_dirs(); ++d) {
            if (g.schema().dir_src(d) != g.type_of(u)) continue;
            auto span = g.neighbors(u, d);
            nbr[u].insert(nbr[u].end(), span.begin(), span.end());
        }
        std::sort(nbr[u].begin(), nbr[u].end());
        nbr[u].erase(std::unique(nbr[u].begin(), nbr[u].end()), nbr[u].end());
    }
    return nbr;
}

}  // namespace detail

// Dense all-pairs SimRank by fixed-point iteration from the identity, the
// diagonal re-pinned at 1 every round. Desk-scale: quadratic memory.
class SimRankTable {
public:
    SimRankTable(std::uint32_t n) : n_(n), scores_(static_cast<std::size_t>(n) * n, 0.0) {}

    double at(NodeId u, NodeId v) const { return scores_[static_cast<std::size_t>(u) * n_ + v]; }
    double& at(NodeId u, NodeId v) { return scores_[static_cast<std::size_t>(u) * n_ + v]; }
    std::uint32_t size() const { return n_; }
    std::uint32_t iterations_run = 0;
    double final_delta = 0;

private:
    std::uint32_t n_;
    std::vector<double> scores_;
};

inline SimRankTable simrank_power(const Hin& g, const SimRankConfig& cfg = {}) {
    cfg.validate();
    if (g.num_nodes() == 0) raise(Errc::empty_graph, "SimRank needs a non-empty graph");
    std::uint32_t n = g.num_nodes();
    auto nbr = detail::merged_neighbors(g);

    SimRankTable cur(n);
    for (NodeId u = 0; u < n; ++u) cur.at(u, u) = 1.0;

    SimRankTable next = cur;
    for (std::uint32_t it = 0; it < cfg.iterations; ++it) {
        double delta = 0;
        for (NodeId u = 0; u < n; ++u) {
            next.at(u, u) = 1.0;
            for (NodeId v = u + 1; v < n; ++v) {
                double s = 0;
                if (!nbr[u].empty() && !nbr[v].empty()) {
                    double sum = 0;
                    for (NodeId up : nbr[u])
                        for (NodeId vp : nbr[v]) sum += cur.at(up, vp);
                    s = cfg.c * sum / (static_cast<double>(nbr[u].size()) * nbr[v].size());
                }
                delta = std::max(delta, std::abs(s - cur.at(u, v)));
                next.at(u, v) = s;
                next.at(v, u) = s;
            }
        }
        std::swap(cur, next);
        cur.iterations_run = it + 1;
        cur.final_delta = delta;
        if (delta <= cfg.tol) break;
    }
    return cur;
}

// Random-surfer estimate of one pair: both surfers walk the merged
// neighbor sets; a first meeting after L steps contributes c^L. Converges
// to the power-method value as walks grow.
inline double simrank_montecarlo(const Hin& g, NodeId u, NodeId v, std::uint64_t walks,
                                 std::uint64_t seed, const SimRankConfig& cfg = {}) {
    cfg.validate();
    if (walks == 0) raise(Errc::invalid_walk_count, "walks must be at least 1");
    if (u == v) return 1.0;
    auto nbr = detail::merged_neighbors(g);

    double total = 0;
    for (std::uint64_t w = 0; w < walks; ++w) {
        Rng rng(stream_seed(seed, w));
        NodeId a = u, b = v;
        double value = cfg.c;
        for (std::uint32_t step = 1; step <= cfg.iterations; ++step) {
            if (nbr[a].empty() || nbr[b].empty()) break;
            a = nbr[a][rng.next_below(nbr[a].size())];
            b = nbr[b][rng.next_below(nbr[b].size())];
            if (a == b) {
                total += value;
                break;
            }
            value *= cfg.c;
        }
    }
    return total / static_cast<double>(walks);
}

}  // namespace hetfs
