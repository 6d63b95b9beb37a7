#pragma once

#include <hetfs/dataset.hpp>
#include <hetfs/hin.hpp>
#include <hetfs/synth.hpp>

// Movie fixture used across suites: three movies, two actors, one
// director.
//   MA: m1-a1, m2-a1, m2-a2, m3-a2
//   MD: m1-d1, m2-d1
inline hetfs::Dataset g1_dataset() {
    hetfs::Dataset ds;
    ds.schema.add_node_type("M");
    ds.schema.add_node_type("A");
    ds.schema.add_node_type("D");
    ds.schema.add_relation("MA", "M", "A");
    ds.schema.add_relation("MD", "M", "D");
    for (const char* id : {"m1", "m2", "m3"}) ds.nodes.push_back({id, "M"});
    for (const char* id : {"a1", "a2"}) ds.nodes.push_back({id, "A"});
    ds.nodes.push_back({"d1", "D"});
    ds.edges.push_back({"m1", "a1", "MA"});
    ds.edges.push_back({"m2", "a1", "MA"});
    ds.edges.push_back({"m2", "a2", "MA"});
    ds.edges.push_back({"m3", "a2", "MA"});
    ds.edges.push_back({"m1", "d1", "MD"});
    ds.edges.push_back({"m2", "d1", "MD"});
    return ds;
}

inline hetfs::Hin g1_hin() {
    hetfs::Dataset ds = g1_dataset();
    return hetfs::freeze_graph(ds.schema, ds.nodes, ds.edges);
}

// Small random HIN for property tests: 2-4 types, 2-4 relations, <= 60
// nodes. Deterministic per seed.
inline hetfs::Dataset random_small_hin(std::uint64_t seed) {
    hetfs::Rng rng(seed * 7919 + 13);
    hetfs::SynthSpec spec;
    std::size_t ntypes = 2 + rng.next_below(3);
    static const char* names[] = {"T", "U", "V", "W"};
    std::uint32_t total_nodes = 0;
    for (std::size_t t = 0; t < ntypes; ++t) {
        std::uint32_t count = 4 + static_cast<std::uint32_t>(rng.next_below(12));
        spec.types.push_back({names[t], count});
        total_nodes += count;
    }
    std::size_t nrels = 2 + rng.next_below(3);
    for (std::size_t r = 0; r < nrels; ++r) {
        const auto& src = spec.types[rng.next_below(spec.types.size())];
        const auto& dst = spec.types[rng.next_below(spec.types.size())];
        std::uint64_t pairs = static_cast<std::uint64_t>(src.count) * dst.count;
        std::uint64_t edges = 1 + rng.next_below(std::min<std::uint64_t>(pairs, 3ull * src.count));
        spec.relations.push_back({"R" + std::to_string(r), src.name, dst.name, edges});
    }
    spec.skew = 0.3 * static_cast<double>(rng.next_below(3));
    spec.seed = seed;
    (void)total_nodes;
    return hetfs::generate_synthetic_hin(spec);
}
