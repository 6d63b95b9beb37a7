#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "hetfs/error.hpp"

namespace hetfs {

// Label vectors use -1 as the "unlabeled" sentinel.
using Label = std::int32_t;
constexpr Label kUnlabeled = -1;

struct ScoredCandidate {
    double score = 0;
    std::uint32_t id = 0;  // tie-break key, ascending
    bool positive = false;
};

// Tie-corrected AUC over pooled scored candidates: the probability that a
// positive outranks a negative, ties counted half.
inline double auc_score(std::vector<ScoredCandidate> items) {
    std::size_t positives = 0;
    for (const auto& it : items) positives += it.positive ? 1 : 0;
    std::size_t negatives = items.size() - positives;
    if (positives == 0 || negatives == 0)
        raise(Errc::empty_input, "AUC needs both positives and negatives");

    std::sort(items.begin(), items.end(),
              [](const ScoredCandidate& a, const ScoredCandidate& b) { return a.score < b.score; });
    // Average ranks within tie groups (1-based ranks).
    double rank_sum_pos = 0;
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        while (j < items.size() && items[j].score == items[i].score) ++j;
        double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t)
            if (items[t].positive) rank_sum_pos += avg_rank;
        i = j;
    }
    double u_stat = rank_sum_pos - static_cast<double>(positives) * (positives + 1) / 2.0;
    return u_stat / (static_cast<double>(positives) * static_cast<double>(negatives));
}

// Reciprocal rank of the first positive in one candidate list (descending
// score, ties by ascending id); 0 if no positive appears within max_rank.
inline double reciprocal_rank(std::vector<ScoredCandidate> list, std::size_t max_rank = 0) {
    std::sort(list.begin(), list.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    std::size_t limit = max_rank == 0 ? list.size() : std::min(max_rank, list.size());
    for (std::size_t r = 0; r < limit; ++r)
        if (list[r].positive) return 1.0 / static_cast<double>(r + 1);
    return 0.0;
}

inline double mean_reciprocal_rank(const std::vector<std::vector<ScoredCandidate>>& per_query,
                                   std::size_t max_rank = 0) {
    if (per_query.empty()) raise(Errc::empty_input, "MRR needs at least one query");
    double sum = 0;
    for (const auto& list : per_query) sum += reciprocal_rank(list, max_rank);
    return sum / static_cast<double>(per_query.size());
}

struct ClusterAgreement {
    double nmi = 0;
    double ari = 0;
};

// NMI (arithmetic-mean normalization) and adjusted Rand index between two
// labelings over the same node set; entries unlabeled on either side are
// ignored.
inline ClusterAgreement clustering_metrics(const std::vector<Label>& pred,
                                           const std::vector<Label>& truth) {
    if (pred.size() != truth.size())
        raise(Errc::invalid_parameter, "labelings cover different node sets");
    std::map<std::pair<Label, Label>, double> joint;
    std::map<Label, double> pa, pb;
    double n = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == kUnlabeled || truth[i] == kUnlabeled) continue;
        joint[{pred[i], truth[i]}] += 1;
        pa[pred[i]] += 1;
        pb[truth[i]] += 1;
        n += 1;
    }
    if (n == 0) raise(Errc::empty_input, "no commonly labeled nodes");

    double mutual = 0, ha = 0, hb = 0;
    for (auto& [key, nij] : joint) {
        double pij = nij / n;
        mutual += pij * std::log(pij * n * n / (pa[key.first] * pb[key.second]));
    }
    for (auto& [a, na] : pa) ha -= na / n * std::log(na / n);
    for (auto& [b, nb] : pb) hb -= nb / n * std::log(nb / n);

    ClusterAgreement out;
    double hmean = (ha + hb) / 2.0;
    out.nmi = hmean > 0 ? mutual / hmean : 1.0;  // both single-cluster: identical

    auto choose2 = [](double x) { return x * (x - 1) / 2.0; };
    double sum_ij = 0, sum_a = 0, sum_b = 0;
    for (auto& [key, nij] : joint) sum_ij += choose2(nij);
    for (auto& [a, na] : pa) sum_a += choose2(na);
    for (auto& [b, nb] : pb) sum_b += choose2(nb);
    double expected = sum_a * sum_b / choose2(n);
    double maximum = (sum_a + sum_b) / 2.0;
    out.ari = maximum == expected ? 1.0 : (sum_ij - expected) / (maximum - expected);
    return out;
}

struct F1Report {
    double micro_f1 = 0;
    double macro_f1 = 0;
};

// Micro/macro F1 over one-vs-rest class counts. A node's unlabeled sentinel
// is an absent assertion, never a class; classes missing from both pred
// and truth are excluded from the macro average.
inline F1Report classification_metrics(const std::vector<Label>& pred,
                                       const std::vector<Label>& truth) {
    if (pred.size() != truth.size())
        raise(Errc::invalid_parameter, "labelings cover different node sets");
    if (pred.empty()) raise(Errc::empty_input, "empty labelings");

    std::map<Label, std::array<double, 3>> counts;  // class -> {tp, fp, fn}
    for (std::size_t i = 0; i < pred.size(); ++i) {
        Label p = pred[i], t = truth[i];
        if (p == t && p != kUnlabeled) {
            counts[p][0] += 1;
        } else {
            if (p != kUnlabeled) counts[p][1] += 1;
            if (t != kUnlabeled) counts[t][2] += 1;
        }
    }
    if (counts.empty()) raise(Errc::empty_input, "no labeled nodes");

    double tp = 0, fp = 0, fn = 0, macro = 0;
    for (auto& [label, c] : counts) {
        tp += c[0];
        fp += c[1];
        fn += c[2];
        double denom = 2 * c[0] + c[1] + c[2];
        macro += denom == 0 ? 0.0 : 2 * c[0] / denom;
    }
    F1Report out;
    double denom = 2 * tp + fp + fn;
    out.micro_f1 = denom == 0 ? 0.0 : 2 * tp / denom;
    out.macro_f1 = macro / static_cast<double>(counts.size());
    return out;
}

}  // namespace hetfs
