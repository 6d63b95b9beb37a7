#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hetfs/dataset.hpp"
#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"

namespace hetfs {

// Fixed English stop-word list. A stopwords file can replace it at the
// pipeline level; the tokenizer itself just takes a set.
inline const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",     "about", "above", "after", "again",  "all",   "am",    "an",    "and",   "any",
        "are",   "as",    "at",    "be",    "because", "been",  "before", "being", "below", "between",
        "both",  "but",   "by",    "can",   "cannot", "could", "did",   "do",    "does",  "doing",
        "down",  "during", "each", "few",   "for",    "from",  "further", "had",  "has",   "have",
        "having", "he",   "her",   "here",  "hers",   "him",   "his",   "how",   "i",     "if",
        "in",    "into",  "is",    "it",    "its",    "itself", "just",  "me",    "more",  "most",
        "my",    "no",    "nor",   "not",   "now",    "of",    "off",   "on",    "once",  "only",
        "or",    "other", "our",   "ours",  "out",    "over",  "own",   "same",  "she",   "should",
        "so",    "some",  "such",  "than",  "that",   "the",   "their", "theirs", "them", "then",
        "there", "these", "they",  "this",  "those",  "through", "to",  "too",   "under", "until",
        "up",    "very",  "was",   "we",    "were",   "what",  "when",  "where", "which", "while",
        "who",   "whom",  "why",   "will",  "with",   "would", "you",   "your",  "yours",
    };
    return words;
}

struct TokenizerOptions {
    const std::unordered_set<std::string>* stopwords = nullptr;  // default list if null
    bool suffix_stem = false;  // crude -ing/-ed/-es/-s stripping, off by default
};

namespace detail {

inline std::string strip_suffix(std::string token) {
    static const std::array<std::string_view, 4> suffixes = {"ing", "ed", "es", "s"};
    for (std::string_view suf : suffixes) {
        if (token.size() > suf.size() + 2 && token.ends_with(suf)) {
            token.erase(token.end() - static_cast<std::ptrdiff_t>(suf.size()), token.end());
            break;
        }
    }
    return token;
}

}  // namespace detail

// Lowercases, splits on non-alphanumeric characters, drops stop words and
// tokens shorter than two characters.
inline std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& opt = {}) {
    const auto& stop = opt.stopwords ? *opt.stopwords : default_stopwords();
    std::vector<std::string> out;
    std::string token;
    auto flush = [&] {
        if (token.size() >= 2 && !stop.count(token)) {
            out.push_back(opt.suffix_stem ? detail::strip_suffix(token) : token);
        }
        token.clear();
    };
    for (unsigned char ch : text) {
        if (std::isalnum(ch))
            token += static_cast<char>(std::tolower(ch));
        else
            flush();
    }
    flush();
    return out;
}

using TermId = std::uint32_t;

using SparseVector = std::vector<std::pair<TermId, double>>;  // sorted by term id

inline double dot(const SparseVector& a, const SparseVector& b) {
    double sum = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else
            sum += (ia++)->second * (ib++)->second;
    }
    return sum;
}

inline double norm(const SparseVector& v) {
    double sum = 0;
    for (auto [t, w] : v) sum += w * w;
    return std::sqrt(sum);
}

// Shared term dictionary so vectors from different fields can be merged by
// term when computing pairwise relatedness.
class TermDictionary {
public:
    TermId intern(const std::string& term) {
        auto [it, inserted] = ids_.emplace(term, static_cast<TermId>(terms_.size()));
        if (inserted) terms_.push_back(term);
        return it->second;
    }
    const std::string& term(TermId id) const { return terms_.at(id); }
    std::size_t size() const { return terms_.size(); }

private:
    std::unordered_map<std::string, TermId> ids_;
    std::vector<std::string> terms_;
};

// tf-idf over one corpus: weight(term, doc) = tf * ln(D / df).
class TfIdfModel {
public:
    TfIdfModel() = default;

    TfIdfModel(const Corpus& corpus, TermDictionary& dict, const TokenizerOptions& opt = {}) {
        if (corpus.empty()) raise(Errc::empty_corpus, "tf-idf needs at least one document");
        doc_count_ = corpus.size();
        std::vector<std::unordered_map<TermId, std::uint32_t>> tf(corpus.size());
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            for (const std::string& tok : tokenize(corpus[d].text, opt)) ++tf[d][dict.intern(tok)];
            for (auto [id, n] : tf[d]) {
                (void)n;
                ++df_[id];
            }
        }
        vectors_.resize(corpus.size());
        nodes_.resize(corpus.size());
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            nodes_[d] = corpus[d].node;
            SparseVector vec;
            vec.reserve(tf[d].size());
            for (auto [id, count] : tf[d]) {
                double w = count * idf(id);
                if (w != 0) vec.emplace_back(id, w);
            }
            std::sort(vec.begin(), vec.end());
            vectors_[d] = std::move(vec);
        }
    }

    double idf(TermId id) const {
        auto it = df_.find(id);
        if (it == df_.end()) return 0;
        return std::log(static_cast<double>(doc_count_) / it->second);
    }

    std::uint32_t df(TermId id) const {
        auto it = df_.find(id);
        return it == df_.end() ? 0 : it->second;
    }

    std::size_t doc_count() const { return doc_count_; }
    std::size_t size() const { return vectors_.size(); }
    NodeId node(std::size_t d) const { return nodes_.at(d); }
    const SparseVector& vector(std::size_t d) const { return vectors_.at(d); }

private:
    std::size_t doc_count_ = 0;
    std::unordered_map<TermId, std::uint32_t> df_;
    std::vector<NodeId> nodes_;
    std::vector<SparseVector> vectors_;
};

// chi(u) per node plus the merged tf-idf vector kept for pairwise mode.
// chi of a node with content is the sum over fields of its vector norm,
// rescaled so each node type's mean is 1; content-less nodes sit at 1.
class ContentScoreTable {
public:
    ContentScoreTable() = default;

    explicit ContentScoreTable(std::uint32_t num_nodes)
        : chi_(num_nodes, 1.0), vectors_(num_nodes), has_content_(num_nodes, 0) {}

    static ContentScoreTable build(const Hin& g, const std::map<std::string, Corpus>& corpora,
                                   const TokenizerOptions& opt = {}) {
        ContentScoreTable table(g.num_nodes());
        TermDictionary dict;
        std::vector<double> raw(g.num_nodes(), 0.0);
        for (const auto& [field, corpus] : corpora) {
            if (corpus.empty()) continue;
            TfIdfModel model(corpus, dict, opt);
            for (std::size_t d = 0; d < model.size(); ++d) {
                NodeId u = model.node(d);
                raw[u] += norm(model.vector(d));
                table.has_content_[u] = 1;
                merge_into(table.vectors_[u], model.vector(d));
            }
        }
        // Per-type mean-1 normalization over nodes that have content. A
        // type whose raw scores are all zero (e.g. identical documents,
        // every idf zero) falls back to chi = 1.
        for (TypeId t = 0; t < g.schema().num_types(); ++t) {
            auto [first, last] = g.type_range(t);
            double sum = 0;
            std::uint32_t with_content = 0;
            for (NodeId u = first; u < last; ++u)
                if (table.has_content_[u]) {
                    sum += raw[u];
                    ++with_content;
                }
            if (with_content == 0) continue;
            double mean = sum / with_content;
            for (NodeId u = first; u < last; ++u)
                if (table.has_content_[u]) table.chi_[u] = mean > 0 ? raw[u] / mean : 1.0;
        }
        return table;
    }

    double chi(NodeId u) const { return chi_.at(u); }
    bool has_content(NodeId u) const { return has_content_.at(u); }
    const SparseVector& vector(NodeId u) const { return vectors_.at(u); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(chi_.size()); }

    // Dot product of the merged tf-idf vectors; 1 (neutral) when either
    // side has no content. Unbounded above by design.
    double relatedness(NodeId u, NodeId v) const {
        if (!has_content_.at(u) || !has_content_.at(v)) return 1.0;
        return dot(vectors_[u], vectors_[v]);
    }

    // Direct access for persistence.
    const std::vector<double>& chi_values() const { return chi_; }
    const std::vector<SparseVector>& vectors() const { return vectors_; }
    const std::vector<std::uint8_t>& content_flags() const { return has_content_; }

    // Used by snapshot loading.
    void restore(std::vector<double> chi, std::vector<SparseVector> vectors,
                 std::vector<std::uint8_t> flags) {
        chi_ = std::move(chi);
        vectors_ = std::move(vectors);
        has_content_ = std::move(flags);
    }

private:
    static void merge_into(SparseVector& target, const SparseVector& extra) {
        SparseVector merged;
        merged.reserve(target.size() + extra.size());
        auto ia = target.begin();
        auto ib = extra.begin();
        while (ia != target.end() || ib != extra.end()) {
            if (ib == extra.end() || (ia != target.end() && ia->first < ib->first))
                merged.push_back(*ia++);
            else if (ia == target.end() || ib->first < ia->first)
                merged.push_back(*ib++);
            else {
                merged.emplace_back(ia->first, ia->second + ib->second);
                ++ia;
                ++ib;
            }
        }
        target = std::move(merged);
    }

    std::vector<double> chi_;
    std::vector<SparseVector> vectors_;
    std::vector<std::uint8_t> has_content_;
};

}  // namespace hetfs
