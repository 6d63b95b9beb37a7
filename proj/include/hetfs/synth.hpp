#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "hetfs/dataset.hpp"
#include "hetfs/error.hpp"
#include "hetfs/rng.hpp"

namespace hetfs {

// Recipe for a reproducible random HIN. The same seed always produces the
// same Dataset, byte for byte once written out.
struct SynthSpec {
    struct TypeSpec {
        std::string name;
        std::uint32_t count = 0;
    };
    struct RelSpec {
        std::string name;
        std::string src;
        std::string dst;
        std::uint64_t edges = 0;
    };
    std::vector<TypeSpec> types;
    std::vector<RelSpec> relations;
    double skew = 0.0;  // 0 = uniform endpoints, 1 = Zipf-like
    std::uint64_t seed = 0;
};

namespace detail {

// Endpoint sampler interpolating uniform (skew 0) and a power law (weight
// of the i-th node proportional to (i+1)^-skew).
class SkewSampler {
public:
    SkewSampler(std::uint32_t n, double skew) : cumulative_(n) {
        double total = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            total += std::pow(static_cast<double>(i + 1), -skew);
            cumulative_[i] = total;
        }
        for (double& c : cumulative_) c /= total;
    }

    std::uint32_t operator()(Rng& rng) const {
        double x = rng.next_double();
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), x);
        if (it == cumulative_.end()) --it;
        return static_cast<std::uint32_t>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace detail

inline Dataset generate_synthetic_hin(const SynthSpec& spec) {
    Dataset ds;
    for (const auto& t : spec.types) {
        if (t.count == 0) raise(Errc::invalid_parameter, "type '" + t.name + "' has zero nodes");
        ds.schema.add_node_type(t.name);
    }
    for (const auto& r : spec.relations) ds.schema.add_relation(r.name, r.src, r.dst);

    auto node_name = [](const std::string& type, std::uint32_t i) {
        return type + std::to_string(i);
    };
    for (const auto& t : spec.types)
        for (std::uint32_t i = 0; i < t.count; ++i)
            ds.nodes.push_back(NodeRecord{node_name(t.name, i), t.name});

    Rng rng(spec.seed == 0 ? 0x5eedULL : spec.seed);
    for (const auto& r : spec.relations) {
        std::uint32_t n_src = 0, n_dst = 0;
        for (const auto& t : spec.types) {
            if (t.name == r.src) n_src = t.count;
            if (t.name == r.dst) n_dst = t.count;
        }
        std::uint64_t pairs = static_cast<std::uint64_t>(n_src) * n_dst;
        if (r.edges > pairs)
            raise(Errc::infeasible_spec, "relation '" + r.name + "' asks for " +
                                             std::to_string(r.edges) + " edges but only " +
                                             std::to_string(pairs) + " distinct pairs exist");

        std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
        chosen.reserve(r.edges);
        if (r.edges * 2 >= pairs) {
            // Dense request: enumerate all pairs, shuffle, take a prefix.
            std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
            all.reserve(pairs);
            for (std::uint32_t a = 0; a < n_src; ++a)
                for (std::uint32_t b = 0; b < n_dst; ++b) all.emplace_back(a, b);
            for (std::size_t i = all.size(); i > 1; --i)
                std::swap(all[i - 1], all[rng.next_below(i)]);
            chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r.edges));
        } else {
            detail::SkewSampler pick_src(n_src, spec.skew);
            detail::SkewSampler pick_dst(n_dst, spec.skew);
            std::unordered_set<std::uint64_t> used;
            used.reserve(r.edges * 2);
            while (chosen.size() < r.edges) {
                std::uint32_t a = pick_src(rng);
                std::uint32_t b = pick_dst(rng);
                if (used.insert((static_cast<std::uint64_t>(a) << 32) | b).second)
                    chosen.emplace_back(a, b);
            }
        }
        std::sort(chosen.begin(), chosen.end());
        for (auto [a, b] : chosen)
            ds.edges.push_back(EdgeRecord{node_name(r.src, a), node_name(r.dst, b), r.name});
    }
    return ds;
}

}  // namespace hetfs
