#pragma once

#include <cstdint>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"
#include "hetfs/metapath.hpp"

namespace hetfs {

namespace detail {

// Path-instance counts from one source through the full relation sequence.
// Doubles carry the integer counts exactly up to 2^53.
inline std::vector<double> path_counts(const Hin& g, NodeId u, const MetaPath& p) {
    auto [first, last] = g.type_range(p.types[0]);
    std::vector<double> cur(last - first, 0.0);
    cur[u - first] = 1.0;
    NodeId cur_first = first;
    for (std::size_t i = 0; i < p.dirs.size(); ++i) {
        auto [nf, nl] = g.type_range(p.types[i + 1]);
        std::vector<double> next(nl - nf, 0.0);
        for (std::size_t x = 0; x < cur.size(); ++x) {
            if (cur[x] == 0) continue;
            for (NodeId xp : g.neighbors(static_cast<NodeId>(cur_first + x), p.dirs[i]))
                next[xp - nf] += cur[x];
        }
        cur = std::move(next);
        cur_first = nf;
    }
    return cur;
}

inline void check_pathsim_args(const Hin& g, NodeId u, NodeId v, const MetaPath& p) {
    if (!p.symmetric) raise(Errc::asymmetric_metapath, "PathSim requires a symmetric meta-path");
    if (g.type_of(u) != p.endpoint_type() || g.type_of(v) != p.endpoint_type())
        raise(Errc::type_mismatch, "nodes do not match the meta-path endpoint type");
}

}  // namespace detail

// PathSim: 2 * p(u,v) / (p(u,u) + p(v,v)) with p the path-instance count
// along the meta-path. Comparison baseline.
inline double pathsim(const Hin& g, NodeId u, NodeId v, const MetaPath& p) {
    detail::check_pathsim_args(g, u, v, p);
    auto [first, last] = g.type_range(p.endpoint_type());
    (void)last;
    std::vector<double> from_u = detail::path_counts(g, u, p);
    double p_uv = from_u[v - first];
    double p_uu = from_u[u - first];
    double p_vv = u == v ? p_uu : detail::path_counts(g, v, p)[v - first];
    double denom = p_uu + p_vv;
    return denom == 0 ? 0.0 : 2.0 * p_uv / denom;
}

// Single-source PathSim scores over the endpoint type. Self-counts are
// computed per candidate with a non-zero instance count.
inline std::vector<double> pathsim_single_source(const Hin& g, NodeId u, const MetaPath& p) {
    detail::check_pathsim_args(g, u, u, p);
    auto [first, last] = g.type_range(p.endpoint_type());
    std::vector<double> counts = detail::path_counts(g, u, p);
    double p_uu = counts[u - first];
    std::vector<double> out(last - first, 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        NodeId v = static_cast<NodeId>(first + i);
        double p_vv = v == u ? p_uu : detail::path_counts(g, v, p)[i];
        double denom = p_uu + p_vv;
        out[i] = denom == 0 ? 0.0 : 2.0 * counts[i] / denom;
    }
    return out;
}

// Meta-path-free aggregation: the sum of per-path PathSim scores over all
// enumerated length-2 symmetric meta-paths.
inline std::vector<double> pathsim_free_single_source(const Hin& g, NodeId u,
                                                      std::size_t max_len = 2) {
    MetaPathSet mps = enumerate_symmetric_metapaths(g.schema(), g.type_of(u), max_len);
    auto [first, last] = g.type_range(g.type_of(u));
    std::vector<double> total(last - first, 0.0);
    for (const MetaPath& p : mps.paths) {
        std::vector<double> one = pathsim_single_source(g, u, p);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += one[i];
    }
    return total;
}

}  // namespace hetfs
