#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"
#include "hetfs/metapath.hpp"
#include "hetfs/rng.hpp"
#include "hetfs/weight_model.hpp"

namespace hetfs {

// Similarity semantics shared by all three engines: the score of (u, v)
// under a symmetric meta-path of length 2h is the sum over all tours --
// pairs of h-step walks from u and from v along R1..Rh that end on the
// same middle node -- of the product of both sides' step factors, the
// middle node counted once per side. The diagonal is pinned at 1. Scores
// over a meta-path set add up per path.

namespace detail {

inline void check_query_types(const WeightModel& wm, const MetaPathSet& mps, NodeId u) {
    wm.validate();
    for (const MetaPath& p : mps.paths)
        if (!p.symmetric) raise(Errc::asymmetric_metapath, "engine requires symmetric meta-paths");
    if (wm.graph().type_of(u) != mps.endpoint_type())
        raise(Errc::type_mismatch, "node " + wm.graph().external_id(u) + " is of type '" +
                                       wm.graph().schema().type_name(wm.graph().type_of(u)) +
                                       "', meta-paths start at '" +
                                       wm.graph().schema().type_name(mps.endpoint_type()) + "'");
}

inline double bruteforce_level(const WeightModel& wm, const MetaPath& p, std::size_t level,
                               NodeId x, NodeId y) {
    std::size_t h = p.length() / 2;
    if (level == h) return x == y ? 1.0 : 0.0;
    Dir d = p.dirs[level];
    const Hin& g = wm.graph();
    double acc = 0;
    for (NodeId xp : g.neighbors(x, d)) {
        double fx = wm.side_factor(xp, d);
        for (NodeId yp : g.neighbors(y, d)) {
            double w = fx * wm.side_factor(yp, d) * wm.level_content(xp, yp);
            if (w != 0) acc += w * bruteforce_level(wm, p, level + 1, xp, yp);
        }
    }
    return acc;
}

// Forward pass: mass[x] after level i is the sum over i-step walks
// u -> x of the per-node step factors.
inline std::vector<double> forward_pass(const WeightModel& wm, const MetaPath& p, NodeId u,
                                        std::size_t levels) {
    const Hin& g = wm.graph();
    auto [first, last] = g.type_range(p.types[0]);
    std::vector<double> cur(last - first, 0.0);
    cur[u - first] = 1.0;
    NodeId cur_first = first;
    for (std::size_t i = 0; i < levels; ++i) {
        Dir d = p.dirs[i];
        auto [nf, nl] = g.type_range(p.types[i + 1]);
        std::vector<double> next(nl - nf, 0.0);
        for (NodeId x = 0; x < cur.size(); ++x) {
            if (cur[x] == 0) continue;
            for (NodeId xp : g.neighbors(cur_first + x, d)) next[xp - nf] += cur[x];
        }
        for (NodeId xp = 0; xp < next.size(); ++xp)
            if (next[xp] != 0) next[xp] *= wm.side_factor(nf + xp, d);
        cur = std::move(next);
        cur_first = nf;
    }
    return cur;
}

// Backward pass: folds a mass vector over the middle type back to the
// endpoint type, applying each visited node's step factor.
inline std::vector<double> backward_pass(const WeightModel& wm, const MetaPath& p,
                                         std::vector<double> mass, std::size_t levels) {
    const Hin& g = wm.graph();
    for (std::size_t i = levels; i-- > 0;) {
        Dir d = p.dirs[i];
        auto [xf, xl] = g.type_range(p.types[i + 1]);
        auto [yf, yl] = g.type_range(p.types[i]);
        std::vector<double> prev(yl - yf, 0.0);
        for (NodeId x = 0; x < mass.size(); ++x) {
            if (mass[x] == 0) continue;
            double w = mass[x] * wm.side_factor(xf + x, d);
            for (NodeId y : g.neighbors(xf + x, flip(d))) prev[y - yf] += w;
        }
        mass = std::move(prev);
    }
    return mass;
}

}  // namespace detail

// Reference engine: full recursion over neighbor pairs, level by level,
// one pair at a time. Exponential in the path half-length but exact.
// Supports every content mode.
inline double hetfs_bruteforce(const WeightModel& wm, NodeId u, NodeId v, const MetaPathSet& mps) {
    detail::check_query_types(wm, mps, u);
    if (wm.graph().type_of(v) != mps.endpoint_type())
        raise(Errc::type_mismatch, "node " + wm.graph().external_id(v) + " does not match the meta-paths");
    if (u == v) return 1.0;
    double total = 0;
    for (const MetaPath& p : mps.paths) total += detail::bruteforce_level(wm, p, 0, u, v);
    return total;
}

// Factorized single-source scores over every node of the endpoint type,
// indexed by dense id minus the type's first id. One forward and one
// backward sparse sweep per meta-path, so each edge is touched at most
// once per level. Agrees with hetfs_bruteforce pointwise; pairwise content
// does not factorize and is rejected.
inline std::vector<double> hetfs_single_source(const WeightModel& wm, NodeId u,
                                               const MetaPathSet& mps) {
    detail::check_query_types(wm, mps, u);
    if (wm.mode == ContentMode::pairwise)
        raise(Errc::unsupported_content_mode,
              "pairwise content does not factorize; use the brute-force or Monte-Carlo engine");
    const Hin& g = wm.graph();
    auto [first, last] = g.type_range(mps.endpoint_type());
    std::vector<double> scores(last - first, 0.0);
    for (const MetaPath& p : mps.paths) {
        std::size_t h = p.length() / 2;
        std::vector<double> reach = detail::forward_pass(wm, p, u, h);
        std::vector<double> side = detail::backward_pass(wm, p, std::move(reach), h);
        for (std::size_t i = 0; i < scores.size(); ++i) scores[i] += side[i];
    }
    scores[u - first] = 1.0;
    return scores;
}

namespace detail {

struct WalkSide {
    std::vector<NodeId> nodes;  // visited nodes, one per level
    double factor = 1.0;        // product of step factors
    double correction = 1.0;    // product of branch counts (importance weight)
    bool complete = false;
};

inline WalkSide walk_side(const WeightModel& wm, const MetaPath& p, NodeId start, std::size_t h,
                          Rng& rng) {
    WalkSide side;
    side.nodes.reserve(h);
    const Hin& g = wm.graph();
    NodeId at = start;
    for (std::size_t i = 0; i < h; ++i) {
        auto nbrs = g.neighbors(at, p.dirs[i]);
        if (nbrs.empty()) return side;
        at = nbrs[rng.next_below(nbrs.size())];
        side.nodes.push_back(at);
        side.factor *= wm.side_factor(at, p.dirs[i]);
        side.correction *= static_cast<double>(nbrs.size());
    }
    side.complete = true;
    return side;
}

// Deterministic chunked reduction: walk w always uses stream_seed(seed, w)
// and partial sums are combined in chunk order, so the estimate does not
// depend on the number of workers.
template <typename WalkFn>
double run_walk_chunks(std::uint64_t walks, WalkFn&& fn) {
    constexpr std::uint64_t kChunk = 4096;
    std::uint64_t chunks = (walks + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    unsigned workers = std::min<std::uint64_t>(std::thread::hardware_concurrency(), chunks);
    if (workers <= 1 || walks < 2 * kChunk) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            double sum = 0;
            for (std::uint64_t w = c * kChunk; w < std::min(walks, (c + 1) * kChunk); ++w)
                sum += fn(w);
            partial[c] = sum;
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            while (true) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                double sum = 0;
                for (std::uint64_t w = c * kChunk; w < std::min(walks, (c + 1) * kChunk); ++w)
                    sum += fn(w);
                partial[c] = sum;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    double total = 0;
    for (double s : partial) total += s;
    return total;
}

}  // namespace detail

// Random surfer-pairs estimator for one pair: two surfers walk the
// meta-path's half from u and from v with uniform steps; a sample that
// lands both on the same middle node contributes the tour weight times
// the inverse of its sampling probability. Unbiased for the exact score.
inline double hetfs_montecarlo_pair(const WeightModel& wm, NodeId u, NodeId v,
                                    const MetaPathSet& mps, std::uint64_t walks,
                                    std::uint64_t seed) {
    detail::check_query_types(wm, mps, u);
    if (wm.graph().type_of(v) != mps.endpoint_type())
        raise(Errc::type_mismatch, "node " + wm.graph().external_id(v) + " does not match the meta-paths");
    if (walks == 0) raise(Errc::invalid_walk_count, "walks must be at least 1");
    if (u == v) return 1.0;

    double total = detail::run_walk_chunks(walks, [&](std::uint64_t w) {
        Rng rng(stream_seed(seed, w));
        double sample = 0;
        for (const MetaPath& p : mps.paths) {
            std::size_t h = p.length() / 2;
            detail::WalkSide a = detail::walk_side(wm, p, u, h, rng);
            if (!a.complete) continue;
            detail::WalkSide b = detail::walk_side(wm, p, v, h, rng);
            if (!b.complete || a.nodes.back() != b.nodes.back()) continue;
            double content = 1.0;
            for (std::size_t i = 0; i < h; ++i)
                content *= wm.level_content(a.nodes[i], b.nodes[i]);
            sample += a.factor * b.factor * a.correction * b.correction * content;
        }
        return sample;
    });
    return total / static_cast<double>(walks);
}

namespace detail {

// All endpoint nodes reachable backwards from a middle node, with the
// summed product of step factors along the way. This is the exact
// backward fan used by the single-sided estimator.
inline std::vector<std::pair<NodeId, double>> backward_fan(const WeightModel& wm,
                                                           const MetaPath& p, NodeId middle,
                                                           std::size_t h) {
    const Hin& g = wm.graph();
    auto [mf, ml] = g.type_range(p.types[h]);
    std::vector<double> mass(ml - mf, 0.0);
    mass[middle - mf] = 1.0;
    std::vector<double> side = backward_pass(wm, p, std::move(mass), h);
    auto [ef, el] = g.type_range(p.types[0]);
    (void)el;
    std::vector<std::pair<NodeId, double>> fan;
    for (std::size_t i = 0; i < side.size(); ++i)
        if (side[i] != 0) fan.emplace_back(static_cast<NodeId>(ef + i), side[i]);
    return fan;
}

// Pairwise content cannot reuse a per-middle-node fan (each level couples
// the two sides), so enumerate backward paths explicitly.
template <typename Emit>
inline void enumerate_backward_paths(const WeightModel& wm, const MetaPath& p,
                                     std::vector<NodeId>& stack, std::size_t level, double factor,
                                     Emit&& emit) {
    const Hin& g = wm.graph();
    if (level == 0) {
        emit(stack, factor);
        return;
    }
    NodeId at = stack[level];  // node at this level (stack[i] = node at level i)
    Dir d = p.dirs[level - 1];
    double step = wm.side_factor(at, d);
    for (NodeId prev : g.neighbors(at, flip(d))) {
        stack[level - 1] = prev;
        enumerate_backward_paths(wm, p, stack, level - 1, factor * step, emit);
    }
}

}  // namespace detail

// Single-sided desk-scale estimator: walks only the u side, then scatters
// the corrected sample weight over every endpoint reachable backwards from
// the meeting node. Returns scores indexed like hetfs_single_source.
inline std::vector<double> hetfs_montecarlo_all(const WeightModel& wm, NodeId u,
                                                const MetaPathSet& mps, std::uint64_t walks,
                                                std::uint64_t seed) {
    detail::check_query_types(wm, mps, u);
    if (walks == 0) raise(Errc::invalid_walk_count, "walks must be at least 1");
    const Hin& g = wm.graph();
    auto [first, last] = g.type_range(mps.endpoint_type());
    std::vector<double> scores(last - first, 0.0);

    // Memoized backward fans, keyed per path index and middle node.
    std::vector<std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>>> fans(
        mps.paths.size());

    for (std::uint64_t w = 0; w < walks; ++w) {
        Rng rng(stream_seed(seed, w));
        for (std::size_t pi = 0; pi < mps.paths.size(); ++pi) {
            const MetaPath& p = mps.paths[pi];
            std::size_t h = p.length() / 2;
            detail::WalkSide a = detail::walk_side(wm, p, u, h, rng);
            if (!a.complete) continue;
            NodeId middle = a.nodes.back();
            double base = a.factor * a.correction;
            if (wm.mode != ContentMode::pairwise) {
                auto it = fans[pi].find(middle);
                if (it == fans[pi].end())
                    it = fans[pi].emplace(middle, detail::backward_fan(wm, p, middle, h)).first;
                for (auto [v, bw] : it->second) scores[v - first] += base * bw;
            } else {
                std::vector<NodeId> stack(h + 1);
                stack[h] = middle;
                detail::enumerate_backward_paths(
                    wm, p, stack, h, 1.0, [&](const std::vector<NodeId>& nodes, double factor) {
                        double content = 1.0;
                        for (std::size_t i = 1; i <= h; ++i)
                            content *= wm.level_content(a.nodes[i - 1], nodes[i]);
                        scores[nodes[0] - first] += base * factor * content;
                    });
            }
        }
    }
    for (double& s : scores) s /= static_cast<double>(walks);
    scores[u - first] = 1.0;
    return scores;
}

enum class EngineKind { exact, montecarlo };

struct TopKEntry {
    NodeId node;
    double score;
};

struct TopKResult {
    NodeId query = 0;
    EngineKind engine = EngineKind::exact;
    double elapsed_ms = 0;
    std::vector<TopKEntry> entries;  // descending score, ties by ascending id
};

struct QueryOptions {
    std::uint32_t k = 10;
    EngineKind engine = EngineKind::exact;
    double epsilon = 0.000005;
    std::uint64_t walks = 100000;
    std::uint64_t seed = 1;
};

// Single-source scores -> bounded min-heap top-k. Keeps entries with
// score >= epsilon, never the query node itself.
inline TopKResult topk(const WeightModel& wm, NodeId u, const MetaPathSet& mps,
                       const QueryOptions& opt) {
    if (opt.k == 0) raise(Errc::invalid_parameter, "k must be at least 1");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> scores = opt.engine == EngineKind::exact
                                     ? hetfs_single_source(wm, u, mps)
                                     : hetfs_montecarlo_all(wm, u, mps, opt.walks, opt.seed);
    auto [first, last] = wm.graph().type_range(mps.endpoint_type());
    (void)last;

    auto better = [](const TopKEntry& a, const TopKEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.node < b.node;
    };
    std::vector<TopKEntry> heap;  // heap front = worst kept entry
    heap.reserve(opt.k + 1);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        NodeId v = static_cast<NodeId>(first + i);
        if (v == u || scores[i] < opt.epsilon) continue;
        TopKEntry cand{v, scores[i]};
        if (heap.size() < opt.k) {
            heap.push_back(cand);
            std::push_heap(heap.begin(), heap.end(), better);
        } else if (better(cand, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), better);
            heap.back() = cand;
            std::push_heap(heap.begin(), heap.end(), better);
        }
    }
    std::sort(heap.begin(), heap.end(), better);

    TopKResult result;
    result.query = u;
    result.engine = opt.engine;
    result.entries = std::move(heap);
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// Top-k under every symmetric meta-path up to max_len: the meta-path-free
// query of the running examples.
inline TopKResult metapath_free_query(const WeightModel& wm, NodeId u, std::size_t max_len,
                                      const QueryOptions& opt) {
    MetaPathSet mps =
        enumerate_symmetric_metapaths(wm.graph().schema(), wm.graph().type_of(u), max_len);
    return topk(wm, u, mps, opt);
}

}  // namespace hetfs
