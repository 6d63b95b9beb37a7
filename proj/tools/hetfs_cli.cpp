// hetfs: similarity search over heterogeneous information networks.
//
// Pipeline: synth/ingest -> precompute -> query/repl/eval.
// Results go to stdout and are deterministic under a fixed seed; timings,
// progress and warnings go to stderr.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hetfs/config.hpp>
#include <hetfs/content.hpp>
#include <hetfs/contribution.hpp>
#include <hetfs/dataset.hpp>
#include <hetfs/engine.hpp>
#include <hetfs/eval.hpp>
#include <hetfs/pathsim.hpp>
#include <hetfs/simrank.hpp>
#include <hetfs/snapshot.hpp>
#include <hetfs/synth.hpp>

namespace fs = std::filesystem;
using namespace hetfs;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string format_score(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

DatasetPaths dataset_paths(const ProjectConfig& cfg) {
    return DatasetPaths{cfg.schema_file, cfg.nodes_file, cfg.edges_file, cfg.text_file};
}

TokenizerOptions tokenizer_options(const ProjectConfig& cfg,
                                   std::unordered_set<std::string>& storage) {
    TokenizerOptions opt;
    if (!cfg.stopwords_file.empty()) {
        std::ifstream in(cfg.stopwords_file);
        if (!in) raise(Errc::io_error, "cannot open stopwords '" + cfg.stopwords_file + "'");
        std::string word;
        while (std::getline(in, word)) {
            if (!word.empty() && word.back() == '\r') word.pop_back();
            if (!word.empty()) storage.insert(word);
        }
        opt.stopwords = &storage;
    }
    return opt;
}

struct LoadedModel {
    LoadedDataset data;
    WeightModel wm;
    double load_ms = 0;

    explicit LoadedModel(const ProjectConfig& cfg) {
        auto t0 = std::chrono::steady_clock::now();
        data = load_snapshot(cfg.workdir);
        wm.hin = &data.hin;
        load_weight_tables(cfg.workdir, data.hin, wm.centrality, wm.contribution, wm.content);
        wm.c = cfg.c;
        wm.mode = content_mode_from_string(cfg.content_mode);
        load_ms = ms_since(t0);
    }
};

MetaPathSet resolve_paths(const Hin& g, NodeId u, const std::string& mp_arg,
                          std::size_t free_len) {
    if (!mp_arg.empty()) {
        std::vector<MetaPath> paths;
        std::stringstream ss(mp_arg);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) paths.push_back(parse_metapath(token, g.schema()));
        }
        return MetaPathSet::of(std::move(paths));
    }
    return enumerate_symmetric_metapaths(g.schema(), g.type_of(u), free_len);
}

void apply_ablations(WeightModel& wm, const std::vector<std::string>& ablate) {
    for (const std::string& a : ablate) {
        if (a == "node")
            wm.unit_alpha = true;
        else if (a == "semantics")
            wm.unit_mu = true;
        else if (a == "content")
            wm.mode = ContentMode::off;
        else
            raise(Errc::invalid_parameter, "unknown ablation '" + a + "' (node|semantics|content)");
    }
}

void print_result_tsv(std::ostream& out, const Hin& g, const TopKResult& result) {
    out << "rank\tnode_id\tscore\n";
    for (std::size_t i = 0; i < result.entries.size(); ++i)
        out << (i + 1) << "\t" << g.external_id(result.entries[i].node) << "\t"
            << format_score(result.entries[i].score) << "\n";
}

void print_result_json(std::ostream& out, const Hin& g, const TopKResult& result,
                       const std::string& engine_name) {
    nlohmann::json doc;
    doc["query"] = g.external_id(result.query);
    doc["engine"] = engine_name;
    doc["results"] = nlohmann::json::array();
    for (std::size_t i = 0; i < result.entries.size(); ++i)
        doc["results"].push_back({{"rank", i + 1},
                                  {"node", g.external_id(result.entries[i].node)},
                                  {"score", result.entries[i].score}});
    out << doc.dump(2) << "\n";
}

// Baseline rankings share the TopKResult shape so the printers above apply.
TopKResult baseline_topk(const ProjectConfig& cfg, const LoadedModel& model, NodeId u,
                         const std::string& mp_arg, std::size_t free_len) {
    const Hin& g = model.data.hin;
    auto t0 = std::chrono::steady_clock::now();
    TopKResult result;
    result.query = u;

    std::vector<std::pair<NodeId, double>> candidates;
    if (cfg.engine == "pathsim") {
        MetaPathSet mps = resolve_paths(g, u, mp_arg, free_len);
        auto [first, last] = g.type_range(g.type_of(u));
        std::vector<double> total(last - first, 0.0);
        for (const MetaPath& p : mps.paths) {
            std::vector<double> one = pathsim_single_source(g, u, p);
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += one[i];
        }
        for (NodeId v = first; v < last; ++v)
            if (v != u) candidates.emplace_back(v, total[v - first]);
    } else {  // simrank: typing ignored, whole graph ranked
        SimRankConfig sr;
        sr.c = cfg.c;
        SimRankTable table = simrank_power(g, sr);
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            if (v != u) candidates.emplace_back(v, table.at(u, v));
    }
    for (auto [v, score] : candidates)
        if (score >= cfg.epsilon) result.entries.push_back({v, score});
    std::sort(result.entries.begin(), result.entries.end(),
              [](const TopKEntry& a, const TopKEntry& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.node < b.node;
              });
    if (result.entries.size() > cfg.k) result.entries.resize(cfg.k);
    result.elapsed_ms = ms_since(t0);
    return result;
}

int cmd_ingest(const ProjectConfig& cfg) {
    LoadedDataset loaded = load_dataset(dataset_paths(cfg));
    save_snapshot(cfg.workdir, loaded.hin, loaded.corpora);

    const Schema& sc = loaded.hin.schema();
    std::string line = "nodes:";
    for (TypeId t = 0; t < sc.num_types(); ++t)
        line += " " + sc.type_name(t) + "=" + std::to_string(loaded.hin.type_count(t));
    line += "; edges:";
    for (RelId r = 0; r < sc.num_relations(); ++r)
        line += " " + sc.relation(r).name + "=" +
                std::to_string(loaded.hin.relation_edge_count(r));
    std::cout << line << "\n";
    std::cout << "corpora: " << loaded.corpora.size() << "\n";
    return 0;
}

int cmd_precompute(const ProjectConfig& cfg) {
    LoadedDataset loaded = load_snapshot(cfg.workdir);
    const Hin& g = loaded.hin;
    if (g.num_edges() == 0) raise(Errc::empty_graph, "snapshot has no edges");

    std::unordered_set<std::string> stop_storage;
    TokenizerOptions tok = tokenizer_options(cfg, stop_storage);
    ContentScoreTable content = ContentScoreTable::build(g, loaded.corpora, tok);
    CentralityTable centrality = compute_centrality(g, cfg.c_n, cfg.tol, cfg.max_iter);
    ContributionGraph contrib = ContributionGraph::compute(g);
    for (RelId r = 0; r < g.schema().num_relations(); ++r)
        if (contrib.mu(r) == 0.0)
            std::cerr << "warning: mu=0 for relation " << g.schema().relation(r).name
                      << " (IRF=0: every node touches it)\n";

    save_weight_tables(cfg.workdir, g, centrality, contrib, content);
    std::cout << "centrality: iterations=" << centrality.iterations
              << " residual=" << io::format_double(centrality.final_residual)
              << " converged=" << (centrality.converged ? "yes" : "no") << "\n";
    for (RelId r = 0; r < g.schema().num_relations(); ++r)
        std::cout << "contribution: " << g.schema().relation(r).name << " mu="
                  << io::format_double(contrib.mu(r)) << "\n";
    return 0;
}

int cmd_query(const ProjectConfig& cfg, const std::string& node, const std::string& mp_arg,
              std::size_t free_len, bool json, const std::vector<std::string>& ablate) {
    LoadedModel model(cfg);
    std::cerr << "load_ms=" << model.load_ms << "\n";
    apply_ablations(model.wm, ablate);
    const Hin& g = model.data.hin;
    NodeId u = g.node_id(node);

    TopKResult result;
    if (cfg.engine == "pathsim" || cfg.engine == "simrank") {
        result = baseline_topk(cfg, model, u, mp_arg, free_len);
    } else {
        QueryOptions opt;
        opt.k = cfg.k;
        opt.engine = cfg.engine == "mc" ? EngineKind::montecarlo : EngineKind::exact;
        opt.epsilon = cfg.epsilon;
        opt.walks = cfg.walks;
        opt.seed = cfg.seed;
        MetaPathSet mps = resolve_paths(g, u, mp_arg, free_len);
        result = topk(model.wm, u, mps, opt);
    }
    if (json)
        print_result_json(std::cout, g, result, cfg.engine);
    else
        print_result_tsv(std::cout, g, result);
    std::cerr << "query_ms=" << result.elapsed_ms << "\n";
    return 0;
}

int cmd_repl(ProjectConfig cfg) {
    LoadedModel model(cfg);
    const Hin& g = model.data.hin;
    double load_ms = model.load_ms;
    std::size_t free_len = 2;

    std::cerr << "hetfs repl: <node> [metapath[,metapath...]] | \\k N | \\mode node|pair|off | "
                 "\\engine exact|mc|pathsim|simrank | \\free L | \\help | \\quit\n";
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        try {
            if (line[0] == '\\') {
                std::stringstream ss(line.substr(1));
                std::string directive, arg;
                ss >> directive >> arg;
                if (directive == "quit" || directive == "q") break;
                if (directive == "help") {
                    std::cerr << "usage: <node> [metapath[,metapath...]]\n"
                                 "directives: \\k N, \\mode node|pair|off, "
                                 "\\engine exact|mc|pathsim|simrank, \\free L, \\quit\n";
                } else if (directive == "k") {
                    cfg.set("k", arg);
                } else if (directive == "mode") {
                    cfg.set("content_mode", arg);
                    model.wm.mode = content_mode_from_string(arg);
                } else if (directive == "engine") {
                    cfg.set("engine", arg);
                } else if (directive == "free") {
                    free_len = std::stoul(arg);
                } else {
                    std::cout << "error: unknown directive \\" << directive << "\n";
                }
                continue;
            }
            std::stringstream ss(line);
            std::string node, mp_arg;
            ss >> node >> mp_arg;
            NodeId u = g.node_id(node);
            TopKResult result;
            if (cfg.engine == "pathsim" || cfg.engine == "simrank") {
                result = baseline_topk(cfg, model, u, mp_arg, free_len);
            } else {
                QueryOptions opt;
                opt.k = cfg.k;
                opt.engine = cfg.engine == "mc" ? EngineKind::montecarlo : EngineKind::exact;
                opt.epsilon = cfg.epsilon;
                opt.walks = cfg.walks;
                opt.seed = cfg.seed;
                MetaPathSet mps = resolve_paths(g, u, mp_arg, free_len);
                result = topk(model.wm, u, mps, opt);
            }
            print_result_tsv(std::cout, g, result);
            std::cerr << "query_ms=" << result.elapsed_ms << " load_ms=" << load_ms << "\n";
            load_ms = 0;  // the model stays resident from here on
        } catch (const Error& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_eval(const ProjectConfig& cfg, const std::string& task, std::optional<double> ts,
             std::optional<double> ratio, bool sanity_random, std::size_t free_len) {
    nlohmann::json report;
    if (task == "linkpred") {
        if (cfg.target_relation.empty())
            raise(Errc::invalid_parameter, "linkpred needs target_relation");
        Dataset full_ds = read_dataset(dataset_paths(cfg));
        SplitSpec spec;
        spec.target_relation = cfg.target_relation;
        spec.seed = cfg.seed;
        if (ts) {
            spec.mode = SplitSpec::Mode::time;
            spec.ts = *ts;
        } else {
            spec.mode = SplitSpec::Mode::random;
            spec.train_ratio = ratio.value_or(0.7);
        }
        SplitResult split = split_dataset(full_ds, spec);
        Hin full = freeze_graph(full_ds.schema, full_ds.nodes, full_ds.edges);
        Hin train = freeze_graph(split.train.schema, split.train.nodes, split.train.edges);
        if (train.num_edges() == 0) raise(Errc::empty_graph, "training split has no edges");

        WeightModel wm;
        wm.hin = &train;
        std::map<std::string, Corpus> corpora;
        for (const TextRecord& t : split.train.texts)
            corpora[t.field].push_back(Document{train.node_id(t.id), t.text});
        std::unordered_set<std::string> stop_storage;
        wm.content = ContentScoreTable::build(train, corpora, tokenizer_options(cfg, stop_storage));
        wm.centrality = compute_centrality(train, cfg.c_n, cfg.tol, cfg.max_iter);
        wm.contribution = ContributionGraph::compute(train);
        wm.c = cfg.c;
        wm.mode = content_mode_from_string(cfg.content_mode);
        if (wm.mode == ContentMode::pairwise)
            raise(Errc::unsupported_content_mode, "linkpred scoring uses the factorized engine");

        LinkPredictionOptions opt;
        opt.k = cfg.k;
        opt.seed = cfg.seed;
        opt.sanity_random_scores = sanity_random;
        opt.free_length = free_len;
        LinkPredictionReport r =
            link_prediction_eval(wm, full, rel_of(full.schema().dir_id(cfg.target_relation)), opt);
        report["task"] = "linkpred";
        report["auc"] = r.auc;
        report["mrr"] = r.mrr;
        report["f1"] = r.f1;
        report["positive_pairs"] = r.positive_pairs;
        report["query_nodes"] = r.query_nodes;
        report["scored_pairs"] = r.scored_pairs;
    } else if (task == "cluster" || task == "classify") {
        if (cfg.labels_file.empty()) raise(Errc::invalid_parameter, task + " needs labels");
        LoadedDataset loaded = load_dataset(dataset_paths(cfg));
        const Hin& g = loaded.hin;
        WeightModel wm;
        wm.hin = &g;
        std::unordered_set<std::string> stop_storage;
        wm.content = ContentScoreTable::build(g, loaded.corpora, tokenizer_options(cfg, stop_storage));
        wm.centrality = compute_centrality(g, cfg.c_n, cfg.tol, cfg.max_iter);
        wm.contribution = ContributionGraph::compute(g);
        wm.c = cfg.c;
        wm.mode = content_mode_from_string(cfg.content_mode);
        if (wm.mode == ContentMode::pairwise)
            raise(Errc::unsupported_content_mode, "label transfer uses the factorized engine");

        LabeledNodes labels;
        detail::read_tsv(cfg.labels_file, {"id", "label"},
                         [&](const std::vector<std::string>& c, const std::optional<std::string>&,
                             std::size_t) { labels.labels[g.node_id(c[0])] = labels.intern(c[1]); });
        if (labels.labels.empty()) raise(Errc::empty_input, "no labels in " + cfg.labels_file);

        TypeId t = g.type_of(labels.labels.begin()->first);
        auto [first, last] = g.type_range(t);
        std::vector<Label> pred = similarity_label_transfer(wm, labels, free_len);
        std::vector<Label> truth(last - first, kUnlabeled);
        for (const auto& [u, label] : labels.labels) truth[u - first] = label;

        if (task == "cluster") {
            ClusterAgreement m = clustering_metrics(pred, truth);
            report["task"] = "cluster";
            report["nmi"] = m.nmi;
            report["ari"] = m.ari;
        } else {
            // Restrict predictions to labeled nodes, as the truth side is.
            std::vector<Label> pred_on_truth = pred;
            for (std::size_t i = 0; i < pred_on_truth.size(); ++i)
                if (truth[i] == kUnlabeled) pred_on_truth[i] = kUnlabeled;
            F1Report m = classification_metrics(pred_on_truth, truth);
            report["task"] = "classify";
            report["micro_f1"] = m.micro_f1;
            report["macro_f1"] = m.macro_f1;
        }
        report["labeled_nodes"] = labels.labels.size();
    } else {
        raise(Errc::invalid_parameter, "unknown task '" + task + "' (linkpred|cluster|classify)");
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_contribution(const ProjectConfig& cfg, const std::vector<std::string>& overrides) {
    LoadedDataset loaded = load_snapshot(cfg.workdir);
    ContributionGraph cg = ContributionGraph::compute(loaded.hin);
    for (const std::string& spec : overrides) {
        std::size_t eq = spec.find('=');
        if (eq == std::string::npos)
            raise(Errc::invalid_parameter, "override must look like RELATION=VALUE");
        cg = cg.with_override(loaded.hin.schema(), spec.substr(0, eq),
                              std::stod(spec.substr(eq + 1)));
    }
    std::cout << export_contribution_dot(loaded.hin.schema(), cg);
    return 0;
}

int cmd_synth(const std::string& out_dir, const std::string& types_arg,
              const std::vector<std::string>& rel_args, double skew, std::uint64_t seed) {
    SynthSpec spec;
    spec.skew = skew;
    spec.seed = seed;
    std::stringstream ts(types_arg);
    std::string tok;
    while (std::getline(ts, tok, ',')) {
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos)
            raise(Errc::invalid_parameter, "type spec must look like NAME:COUNT");
        spec.types.push_back({tok.substr(0, colon),
                              static_cast<std::uint32_t>(std::stoul(tok.substr(colon + 1)))});
    }
    for (const std::string& r : rel_args) {
        std::stringstream rs(r);
        std::string name, src, dst, count;
        std::getline(rs, name, ':');
        std::getline(rs, src, ':');
        std::getline(rs, dst, ':');
        std::getline(rs, count, ':');
        if (count.empty())
            raise(Errc::invalid_parameter, "relation spec must look like NAME:SRC:DST:EDGES");
        spec.relations.push_back({name, src, dst, std::stoull(count)});
    }
    Dataset ds = generate_synthetic_hin(spec);
    fs::create_directories(out_dir);
    DatasetPaths paths{fs::path(out_dir) / "schema.json", fs::path(out_dir) / "nodes.tsv",
                       fs::path(out_dir) / "edges.tsv", fs::path(out_dir) / "text.tsv"};
    write_dataset(ds, paths);
    std::cout << "nodes=" << ds.nodes.size() << " edges=" << ds.edges.size() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"similarity search on heterogeneous information networks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    app.add_option("--config", config_file, "key=value config file")->expected(1);

    // Flag-level overrides shared by most subcommands.
    ProjectConfig cfg;
    std::optional<std::string> o_workdir, o_engine, o_mode, o_schema, o_nodes, o_edges, o_text,
        o_stopwords, o_labels, o_target;
    std::optional<double> o_c, o_cn, o_tol, o_eps;
    std::optional<std::uint32_t> o_k, o_max_iter;
    std::optional<std::uint64_t> o_seed, o_walks;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--workdir", o_workdir, "snapshot/table directory");
        sub->add_option("--schema", o_schema);
        sub->add_option("--nodes", o_nodes);
        sub->add_option("--edges", o_edges);
        sub->add_option("--text", o_text);
        sub->add_option("--stopwords", o_stopwords);
        sub->add_option("--labels", o_labels);
        sub->add_option("--target-relation", o_target);
        sub->add_option("--c", o_c, "similarity decay in (0,1)");
        sub->add_option("--c-n", o_cn, "centrality decay in (0,1)");
        sub->add_option("--tol", o_tol);
        sub->add_option("--max-iter", o_max_iter);
        sub->add_option("--epsilon", o_eps, "score cutoff");
        sub->add_option("-k,--k", o_k, "result count");
        sub->add_option("--seed", o_seed);
        sub->add_option("--walks", o_walks, "Monte-Carlo walk count");
        sub->add_option("--engine", o_engine, "exact|mc|pathsim|simrank");
        sub->add_option("--content-mode", o_mode, "node|pair|off");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "load dataset files into a snapshot");
    add_common(ingest);

    CLI::App* precompute = app.add_subcommand("precompute", "build weight tables");
    add_common(precompute);

    CLI::App* query = app.add_subcommand("query", "top-k similarity for one node");
    std::string q_node, q_mp;
    std::size_t q_free = 0;
    bool q_json = false;
    std::vector<std::string> q_ablate;
    query->add_option("node", q_node, "query node id")->required();
    query->add_option("--mp", q_mp, "comma-separated meta-paths (short or long form)");
    query->add_option("--free", q_free, "meta-path-free search up to this length");
    query->add_flag("--json", q_json, "JSON output");
    query->add_option("--ablate", q_ablate, "drop a component: node|semantics|content");
    add_common(query);

    CLI::App* repl = app.add_subcommand("repl", "interactive query session");
    add_common(repl);

    CLI::App* eval = app.add_subcommand("eval", "downstream task harness");
    std::string e_task;
    std::optional<double> e_ts, e_ratio;
    bool e_sanity = false;
    std::size_t e_free = 2;
    eval->add_option("--task", e_task, "linkpred|cluster|classify")->required();
    eval->add_option("--ts", e_ts, "time split cutoff");
    eval->add_option("--ratio", e_ratio, "random split train fraction");
    eval->add_flag("--sanity-random", e_sanity, "replace scores with seeded noise");
    eval->add_option("--free", e_free, "meta-path-free length for scoring");
    add_common(eval);

    CLI::App* contribution = app.add_subcommand("contribution", "DOT export of edge contributions");
    std::vector<std::string> c_overrides;
    contribution->add_option("--override", c_overrides, "RELATION=VALUE, repeatable");
    add_common(contribution);

    CLI::App* synth = app.add_subcommand("synth", "generate a reproducible random HIN");
    std::string s_out, s_types;
    std::vector<std::string> s_rels;
    double s_skew = 0.0;
    std::uint64_t s_seed = 1;
    synth->add_option("--out", s_out, "output directory")->required();
    synth->add_option("--types", s_types, "NAME:COUNT[,NAME:COUNT...]")->required();
    synth->add_option("--rel", s_rels, "NAME:SRC:DST:EDGES, repeatable")->required();
    synth->add_option("--skew", s_skew, "0 = uniform, 1 = power law");
    synth->add_option("--seed", s_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty()) cfg.load_file(config_file);
        cfg.apply_env();
        if (o_workdir) cfg.workdir = *o_workdir;
        if (o_schema) cfg.schema_file = *o_schema;
        if (o_nodes) cfg.nodes_file = *o_nodes;
        if (o_edges) cfg.edges_file = *o_edges;
        if (o_text) cfg.text_file = *o_text;
        if (o_stopwords) cfg.stopwords_file = *o_stopwords;
        if (o_labels) cfg.labels_file = *o_labels;
        if (o_target) cfg.target_relation = *o_target;
        if (o_c) cfg.c = *o_c;
        if (o_cn) cfg.c_n = *o_cn;
        if (o_tol) cfg.tol = *o_tol;
        if (o_max_iter) cfg.max_iter = *o_max_iter;
        if (o_eps) cfg.epsilon = *o_eps;
        if (o_k) cfg.k = *o_k;
        if (o_seed) cfg.seed = *o_seed;
        if (o_walks) cfg.walks = *o_walks;
        if (o_engine) cfg.engine = *o_engine;
        if (o_mode) cfg.content_mode = *o_mode;
        cfg.validate();

        if (ingest->parsed()) return cmd_ingest(cfg);
        if (precompute->parsed()) return cmd_precompute(cfg);
        if (query->parsed())
            return cmd_query(cfg, q_node, q_mp, q_free == 0 ? 2 : q_free, q_json, q_ablate);
        if (repl->parsed()) return cmd_repl(cfg);
        if (eval->parsed()) return cmd_eval(cfg, e_task, e_ts, e_ratio, e_sanity, e_free);
        if (contribution->parsed()) return cmd_contribution(cfg, c_overrides);
        if (synth->parsed()) return cmd_synth(s_out, s_types, s_rels, s_skew, s_seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
