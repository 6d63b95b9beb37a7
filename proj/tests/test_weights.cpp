#include <doctest.h>

#include <hetfs/centrality.hpp>
#include <hetfs/contribution.hpp>

#include <cmath>

#include "fixtures.hpp"

using namespace hetfs;
using doctest::Approx;

namespace {

// Independent oracle: the same fixed point computed through an explicit
// dense transition matrix instead of CSR sweeps.
std::vector<double> dense_centrality_oracle(const Hin& g, double c_n, double tol,
                                            std::uint32_t max_iter) {
    std::uint32_t n = g.num_nodes();
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    for (NodeId u = 0; u < n; ++u) {
        for (Dir d = 0; d < g.schema().num_dirs(); ++d) {
            if (g.schema().dir_src(d) != g.type_of(u)) continue;
            for (NodeId v : g.neighbors(u, d))
                M[u][v] += 1.0 / static_cast<double>(g.structure_weight(v, flip(d)));
        }
    }
    std::vector<double> alpha(n, 1.0);
    for (std::uint32_t it = 0; it < max_iter; ++it) {
        std::vector<double> dangling(g.schema().num_types(), 0.0);
        for (NodeId u = 0; u < n; ++u)
            if (g.total_degree(u) == 0) dangling[g.type_of(u)] += alpha[u];
        std::vector<double> next(n, 0.0);
        for (NodeId u = 0; u < n; ++u) {
            double acc = 0;
            for (NodeId v = 0; v < n; ++v) acc += M[u][v] * alpha[v];
            acc += dangling[g.type_of(u)] / g.type_count(g.type_of(u));
            next[u] = c_n * acc + (1 - c_n);
        }
        for (TypeId t = 0; t < g.schema().num_types(); ++t) {
            auto [first, last] = g.type_range(t);
            double sum = 0;
            for (NodeId u = first; u < last; ++u) sum += next[u];
            double mean = sum / (last - first);
            for (NodeId u = first; u < last; ++u) next[u] /= mean;
        }
        double residual = 0;
        for (NodeId u = 0; u < n; ++u) residual = std::max(residual, std::abs(next[u] - alpha[u]));
        alpha = std::move(next);
        if (residual <= tol) break;
    }
    return alpha;
}

Hin cycle5() {
    Dataset ds;
    ds.schema.add_node_type("T");
    ds.schema.add_relation("E", "T", "T");
    for (int i = 0; i < 5; ++i) ds.nodes.push_back({"n" + std::to_string(i), "T"});
    for (int i = 0; i < 5; ++i)
        ds.edges.push_back({"n" + std::to_string(i), "n" + std::to_string((i + 1) % 5), "E"});
    return freeze_graph(ds.schema, ds.nodes, ds.edges);
}

Hin star5() {
    Dataset ds;
    ds.schema.add_node_type("T");
    ds.schema.add_relation("S", "T", "T");
    ds.nodes.push_back({"hub", "T"});
    for (int i = 0; i < 4; ++i) ds.nodes.push_back({"leaf" + std::to_string(i), "T"});
    for (int i = 0; i < 4; ++i) ds.edges.push_back({"hub", "leaf" + std::to_string(i), "S"});
    return freeze_graph(ds.schema, ds.nodes, ds.edges);
}

}  // namespace

TEST_CASE("a symmetric cycle pins every centrality at 1") {
    Hin g = cycle5();
    CentralityTable table = compute_centrality(g, 0.85, 1e-10, 200);
    CHECK(table.converged);
    for (NodeId u = 0; u < g.num_nodes(); ++u) CHECK(table.alpha[u] == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("star hub outranks the leaves and matches the dense oracle") {
    Hin g = star5();
    CentralityTable table = compute_centrality(g, 0.85, 1e-10, 500);
    std::vector<double> oracle = dense_centrality_oracle(g, 0.85, 1e-10, 500);
    NodeId hub = g.node_id("hub");
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        CHECK(table.alpha[u] == Approx(oracle[u]).epsilon(1e-9));
        if (u != hub) CHECK(table.alpha[hub] > table.alpha[u]);
    }
}

TEST_CASE("random HINs match the dense oracle") {
    for (std::uint64_t seed : {2u, 9u, 23u}) {
        Dataset ds = random_small_hin(seed);
        Hin g = freeze_graph(ds.schema, ds.nodes, ds.edges);
        CentralityTable table = compute_centrality(g, 0.85, 1e-10, 400);
        std::vector<double> oracle = dense_centrality_oracle(g, 0.85, 1e-10, 400);
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            CHECK(table.alpha[u] == Approx(oracle[u]).epsilon(1e-8));
    }
}

TEST_CASE("an edgeless graph is uniformly central") {
    Dataset ds = g1_dataset();
    ds.edges.clear();
    Hin g = freeze_graph(ds.schema, ds.nodes, ds.edges);
    CentralityTable table = compute_centrality(g);
    CHECK(table.converged);
    for (NodeId u = 0; u < g.num_nodes(); ++u) CHECK(table.alpha[u] == Approx(1.0));
}

TEST_CASE("centrality parameter validation") {
    Hin g = g1_hin();
    for (double bad : {0.0, 1.0, -0.2, 1.7}) {
        try {
            compute_centrality(g, bad);
            FAIL("expected InvalidParameter");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::invalid_parameter);
        }
    }
}

TEST_CASE("changing c_n changes the fixed point") {
    Hin g = star5();
    CentralityTable a = compute_centrality(g, 0.85, 1e-12, 500);
    CentralityTable b = compute_centrality(g, 0.5, 1e-12, 500);
    double diff = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) diff = std::max(diff, std::abs(a.alpha[u] - b.alpha[u]));
    CHECK(diff > 1e-6);
}

TEST_CASE("converged tables are one-step fixed points") {
    for (const Hin& g : {g1_hin(), cycle5(), star5()}) {
        CentralityTable table = compute_centrality(g, 0.85, 1e-10, 500);
        REQUIRE(table.converged);
        std::vector<double> again = detail::centrality_step(g, table.alpha, table.c_n);
        double residual = 0;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            residual = std::max(residual, std::abs(again[u] - table.alpha[u]));
        CHECK(residual <= 1e-10);
        // The stored residual is the recomputed one-step residual of the
        // second-to-last iterate; for a converged table both are <= tol.
        CHECK(table.final_residual <= 1e-10);
        CHECK(table.residual_history.back() == table.final_residual);
    }
}

TEST_CASE("normalization is idempotent under uniform rescaling") {
    Hin g = star5();
    CentralityTable table = compute_centrality(g, 0.85, 1e-10, 500);
    // Scale all alpha by a constant, renormalize per type: identical table.
    std::vector<double> scaled = table.alpha;
    for (double& a : scaled) a *= 7.5;
    for (TypeId t = 0; t < g.schema().num_types(); ++t) {
        auto [first, last] = g.type_range(t);
        double sum = 0;
        for (NodeId u = first; u < last; ++u) sum += scaled[u];
        double mean = sum / (last - first);
        for (NodeId u = first; u < last; ++u) scaled[u] /= mean;
    }
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        CHECK(scaled[u] == Approx(table.alpha[u]).epsilon(1e-12));
}

TEST_CASE("per-type means stay at one") {
    for (std::uint64_t seed : {4u, 31u}) {
        Dataset ds = random_small_hin(seed);
        Hin g = freeze_graph(ds.schema, ds.nodes, ds.edges);
        CentralityTable table = compute_centrality(g);
        for (TypeId t = 0; t < g.schema().num_types(); ++t) {
            auto [first, last] = g.type_range(t);
            if (first == last) continue;
            double sum = 0;
            for (NodeId u = first; u < last; ++u) {
                CHECK(table.alpha[u] >= 0.0);
                sum += table.alpha[u];
            }
            CHECK(sum / (last - first) == Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("edge contribution reproduces the G1 hand values") {
    Hin g = g1_hin();
    ContributionGraph cg = ContributionGraph::compute(g);
    // mu = (m_R / m) * ln(n / n_R): MA touches 5 of 6 nodes, MD 3 of 6.
    CHECK(cg.mu(RelId{0}) == Approx((4.0 / 6.0) * std::log(6.0 / 5.0)).epsilon(1e-12));
    CHECK(cg.mu(RelId{1}) == Approx((2.0 / 6.0) * std::log(2.0)).epsilon(1e-12));
    CHECK(cg.rf(0) + cg.rf(1) == Approx(1.0));
    // Inverse directions share the forward weight.
    CHECK(cg.mu(g.schema().dir_id("MA^-1")) == cg.mu(g.schema().dir_id("MA")));
}

TEST_CASE("a relation touching every node has zero contribution") {
    Dataset ds;
    ds.schema.add_node_type("X");
    ds.schema.add_node_type("Y");
    ds.schema.add_relation("XY", "X", "Y");
    ds.nodes = {{"x1", "X"}, {"x2", "X"}, {"y1", "Y"}, {"y2", "Y"}};
    ds.edges = {{"x1", "y1", "XY"}, {"x2", "y2", "XY"}};
    Hin g = freeze_graph(ds.schema, ds.nodes, ds.edges);
    ContributionGraph cg = ContributionGraph::compute(g);
    CHECK(cg.irf(0) == Approx(0.0));
    CHECK(cg.mu(RelId{0}) == Approx(0.0));
}

TEST_CASE("contribution requires a non-empty graph") {
    Dataset ds = g1_dataset();
    ds.edges.clear();
    Hin g = freeze_graph(ds.schema, ds.nodes, ds.edges);
    try {
        ContributionGraph::compute(g);
        FAIL("expected EmptyGraph");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_graph);
    }
}

TEST_CASE("override replaces mu and keeps provenance") {
    Hin g = g1_hin();
    ContributionGraph cg = ContributionGraph::compute(g);
    double rf_before = cg.rf(0), irf_before = cg.irf(0);

    ContributionGraph out = cg.with_override(g.schema(), "MA", 1.0);
    CHECK(out.mu(RelId{0}) == 1.0);
    CHECK(out.rf(0) == rf_before);
    CHECK(out.irf(0) == irf_before);
    CHECK(cg.mu(RelId{0}) != 1.0);  // original untouched

    ContributionGraph zeroed = cg.with_override(g.schema(), "MD", 0.0);
    CHECK(zeroed.mu(RelId{1}) == 0.0);

    try {
        cg.with_override(g.schema(), "XY", 1.0);
        FAIL("expected UnknownRelation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_relation);
    }
    try {
        cg.with_override(g.schema(), "MA", -0.5);
        FAIL("expected NegativeValue");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::negative_value);
    }
}

TEST_CASE("DOT export is deterministic and two-decimal") {
    Hin g = g1_hin();
    ContributionGraph cg = ContributionGraph::compute(g);
    std::string dot = export_contribution_dot(g.schema(), cg);
    CHECK(dot.find("M -> A [label=\"0.12\"]") != std::string::npos);
    CHECK(dot.find("M -> D [label=\"0.23\"]") != std::string::npos);

    std::string dot2 = export_contribution_dot(g.schema(), cg.with_override(g.schema(), "MD", 0.5));
    CHECK(dot2.find("M -> D [label=\"0.50\"]") != std::string::npos);

    Schema empty_schema;
    empty_schema.add_node_type("M");
    empty_schema.add_node_type("A");
    std::string nodes_only = export_contribution_dot(empty_schema, ContributionGraph{});
    CHECK(nodes_only.find("M;") != std::string::npos);
    CHECK(nodes_only.find("->") == std::string::npos);
}
