#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hetfs/dataset.hpp"
#include "hetfs/engine.hpp"
#include "hetfs/error.hpp"
#include "hetfs/metrics.hpp"
#include "hetfs/rng.hpp"
#include "hetfs/weight_model.hpp"

namespace hetfs {

// How to hold out target-relation edges: everything after a timestamp, or
// a seeded random share.
struct SplitSpec {
    enum class Mode { time, random };
    Mode mode = Mode::random;
    double ts = 0;             // time mode: edges with time > ts are test
    double train_ratio = 0.7;  // random mode
    std::uint64_t seed = 1;
    std::string target_relation;
};

struct SplitResult {
    Dataset train;
    std::vector<EdgeRecord> held_out;
};

inline SplitResult split_dataset(const Dataset& full, const SplitSpec& spec) {
    if (!full.schema.find_dir(spec.target_relation))
        raise(Errc::unknown_relation, "target relation '" + spec.target_relation + "'");
    if (spec.mode == SplitSpec::Mode::random &&
        !(spec.train_ratio > 0.0 && spec.train_ratio < 1.0))
        raise(Errc::invalid_parameter, "train ratio must lie in (0, 1)");

    SplitResult out;
    out.train.schema = full.schema;
    out.train.nodes = full.nodes;
    out.train.texts = full.texts;

    std::vector<std::size_t> target_rows;
    for (std::size_t i = 0; i < full.edges.size(); ++i) {
        if (full.edges[i].relation == spec.target_relation)
            target_rows.push_back(i);
        else
            out.train.edges.push_back(full.edges[i]);
    }

    std::vector<bool> hold(target_rows.size(), false);
    if (spec.mode == SplitSpec::Mode::time) {
        for (std::size_t i = 0; i < target_rows.size(); ++i) {
            const EdgeRecord& e = full.edges[target_rows[i]];
            if (!e.has_time)
                raise(Errc::invalid_parameter, "time split needs a time column on every '" +
                                                   spec.target_relation + "' edge");
            hold[i] = e.time > spec.ts;
        }
    } else {
        std::vector<std::size_t> order(target_rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(spec.seed);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
        std::size_t keep = static_cast<std::size_t>(spec.train_ratio * order.size());
        for (std::size_t i = keep; i < order.size(); ++i) hold[order[i]] = true;
    }
    for (std::size_t i = 0; i < target_rows.size(); ++i) {
        if (hold[i])
            out.held_out.push_back(full.edges[target_rows[i]]);
        else
            out.train.edges.push_back(full.edges[target_rows[i]]);
    }
    return out;
}

namespace detail {

// Unordered same-type pairs joined through a shared neighbor along the
// given relation: the derived links the harness predicts (co-authorship
// through papers, co-listening through artists, ...).
inline std::set<std::pair<NodeId, NodeId>> colink_pairs(const Hin& g, RelId rel) {
    std::set<std::pair<NodeId, NodeId>> pairs;
    const RelationDecl& decl = g.schema().relation(rel);
    auto [tf, tl] = g.type_range(decl.dst);
    for (NodeId w = tf; w < tl; ++w) {
        auto span = g.neighbors(w, inverse_dir(rel));
        for (std::size_t i = 0; i < span.size(); ++i)
            for (std::size_t j = i + 1; j < span.size(); ++j)
                pairs.emplace(span[i], span[j]);
    }
    return pairs;
}

}  // namespace detail

struct LinkPredictionOptions {
    std::uint32_t k = 10;                 // per-node prediction cutoff for F1
    std::size_t max_candidates = 10000;   // above this, sample negatives
    std::size_t negatives_per_positive = 100;
    std::uint64_t seed = 1;
    bool sanity_random_scores = false;    // null model: AUC should sit near 0.5
    std::size_t free_length = 2;
};

struct LinkPredictionReport {
    double auc = 0;
    double mrr = 0;
    double f1 = 0;
    std::size_t positive_pairs = 0;
    std::size_t query_nodes = 0;
    std::size_t scored_pairs = 0;
};

// Link prediction over derived co-links of the target relation. The weight
// model must be built from the training split only; every scored pair is
// checked against the training co-link set (leak guard).
inline LinkPredictionReport link_prediction_eval(const WeightModel& wm_train,
                                                 const Hin& full_hin, RelId target,
                                                 const LinkPredictionOptions& opt = {}) {
    const Hin& train = wm_train.graph();
    if (train.num_nodes() != full_hin.num_nodes())
        raise(Errc::invalid_parameter, "train and full graphs must share one node set");
    auto train_links = detail::colink_pairs(train, target);
    auto full_links = detail::colink_pairs(full_hin, target);

    std::vector<std::pair<NodeId, NodeId>> positives;
    for (const auto& pr : full_links)
        if (!train_links.count(pr)) positives.push_back(pr);
    if (positives.empty()) raise(Errc::empty_test_set, "no new links in the test split");

    std::map<NodeId, std::set<NodeId>> positive_of;
    for (auto [a, b] : positives) {
        positive_of[a].insert(b);
        positive_of[b].insert(a);
    }

    TypeId node_type = train.schema().relation(target).src;
    auto [tf, tl] = train.type_range(node_type);
    std::size_t type_size = tl - tf;
    bool sample_negatives = positives.size() * (type_size - 1) > opt.max_candidates;

    std::vector<ScoredCandidate> pooled;
    std::vector<std::vector<ScoredCandidate>> per_query;
    std::set<std::pair<NodeId, NodeId>> pooled_seen;
    Rng rng(opt.seed);
    double f1_tp = 0, f1_fp = 0, f1_fn = 0;
    MetaPathSet mps = enumerate_symmetric_metapaths(train.schema(), node_type, opt.free_length);

    for (const auto& [u, pos_set] : positive_of) {
        std::vector<double> scores;
        if (!opt.sanity_random_scores) scores = hetfs_single_source(wm_train, u, mps);

        std::vector<NodeId> candidates;
        if (sample_negatives) {
            candidates.assign(pos_set.begin(), pos_set.end());
            std::size_t want = pos_set.size() * opt.negatives_per_positive;
            std::unordered_set<NodeId> chosen(pos_set.begin(), pos_set.end());
            chosen.insert(u);
            for (std::size_t tries = 0; tries < want * 20 && candidates.size() < pos_set.size() + want;
                 ++tries) {
                NodeId v = static_cast<NodeId>(tf + rng.next_below(type_size));
                auto key = std::minmax(u, v);
                if (v == u || chosen.count(v)) continue;
                if (train_links.count({key.first, key.second})) continue;
                chosen.insert(v);
                candidates.push_back(v);
            }
        } else {
            for (NodeId v = tf; v < tl; ++v) {
                auto key = std::minmax(u, v);
                if (v == u || train_links.count({key.first, key.second})) continue;
                candidates.push_back(v);
            }
        }

        std::vector<ScoredCandidate> list;
        list.reserve(candidates.size());
        for (NodeId v : candidates) {
            auto key = std::minmax(u, v);
            if (train_links.count({key.first, key.second}))
                raise(Errc::invalid_parameter, "leak guard: scored a training link");
            ScoredCandidate sc;
            sc.id = v;
            sc.positive = pos_set.count(v) > 0;
            sc.score = opt.sanity_random_scores ? rng.next_double() : scores[v - tf];
            list.push_back(sc);
            if (pooled_seen.emplace(key.first, key.second).second) pooled.push_back(sc);
        }

        std::sort(list.begin(), list.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.id < b.id;
        });
        std::size_t cut = std::min<std::size_t>(opt.k, list.size());
        for (std::size_t r = 0; r < list.size(); ++r) {
            bool predicted = r < cut;
            if (predicted && list[r].positive) f1_tp += 1;
            if (predicted && !list[r].positive) f1_fp += 1;
            if (!predicted && list[r].positive) f1_fn += 1;
        }
        per_query.push_back(std::move(list));
    }

    LinkPredictionReport report;
    report.positive_pairs = positives.size();
    report.query_nodes = per_query.size();
    report.scored_pairs = pooled.size();
    report.auc = auc_score(std::move(pooled));
    report.mrr = mean_reciprocal_rank(per_query);
    double f1_denom = 2 * f1_tp + f1_fp + f1_fn;
    report.f1 = f1_denom == 0 ? 0.0 : 2 * f1_tp / f1_denom;
    return report;
}

// Labels for one node type, vocabulary in first-appearance order.
struct LabeledNodes {
    std::vector<std::string> vocabulary;
    std::map<NodeId, Label> labels;

    Label intern(const std::string& name) {
        for (std::size_t i = 0; i < vocabulary.size(); ++i)
            if (vocabulary[i] == name) return static_cast<Label>(i);
        vocabulary.push_back(name);
        return static_cast<Label>(vocabulary.size() - 1);
    }
};

// Accumulates meta-path-free similarity onto the labels of every other
// labeled node and takes the argmax (ties: first label in vocabulary
// order). Nodes with no similarity mass on any label stay unlabeled.
inline std::vector<Label> similarity_label_transfer(const WeightModel& wm,
                                                    const LabeledNodes& labeled,
                                                    std::size_t free_length = 2) {
    if (labeled.labels.empty()) raise(Errc::empty_input, "no labeled nodes");
    const Hin& g = wm.graph();
    TypeId node_type = g.type_of(labeled.labels.begin()->first);
    for (const auto& [u, label] : labeled.labels) {
        (void)label;
        if (g.type_of(u) != node_type)
            raise(Errc::type_mismatch, "labeled nodes span more than one node type");
    }

    auto [tf, tl] = g.type_range(node_type);
    MetaPathSet mps = enumerate_symmetric_metapaths(g.schema(), node_type, free_length);
    std::vector<Label> out(tl - tf, kUnlabeled);
    std::vector<double> label_score(labeled.vocabulary.size(), 0.0);
    for (NodeId u = tf; u < tl; ++u) {
        std::vector<double> scores = hetfs_single_source(wm, u, mps);
        std::fill(label_score.begin(), label_score.end(), 0.0);
        for (const auto& [v, label] : labeled.labels) {
            if (v == u) continue;
            label_score[static_cast<std::size_t>(label)] += scores[v - tf];
        }
        Label best = kUnlabeled;
        double best_score = 0;
        for (std::size_t l = 0; l < label_score.size(); ++l) {
            if (label_score[l] > best_score) {
                best_score = label_score[l];
                best = static_cast<Label>(l);
            }
        }
        out[u - tf] = best;  // stays unlabeled when every label scored zero
    }
    return out;
}

}  // namespace hetfs
