#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "hetfs/centrality.hpp"
#include "hetfs/content.hpp"
#include "hetfs/contribution.hpp"
#include "hetfs/dataset.hpp"
#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"

#include <json.hpp>

namespace hetfs {

namespace io {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
inline void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
inline void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
inline void put_str(std::ostream& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
inline std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
inline double get_f64(std::istream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
inline std::string get_str(std::istream& in) {
    std::uint32_t len = get_u32(in);
    std::string s(len, '\0');
    in.read(s.data(), len);
    return s;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace io

constexpr std::uint32_t kSnapshotVersion = 1;

// Binary snapshot of a frozen graph plus its corpora. Pure function of the
// ingested dataset, so re-ingesting unchanged inputs rewrites identical
// bytes.
inline void save_snapshot(const std::filesystem::path& dir, const Hin& g,
                          const std::map<std::string, Corpus>& corpora) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "graph.bin", std::ios::binary);
    if (!out) raise(Errc::io_error, "cannot write '" + (dir / "graph.bin").string() + "'");
    out.write("HFSG", 4);
    io::put_u32(out, kSnapshotVersion);

    const Schema& sc = g.schema();
    io::put_u32(out, static_cast<std::uint32_t>(sc.num_types()));
    for (TypeId t = 0; t < sc.num_types(); ++t) io::put_str(out, sc.type_name(t));
    io::put_u32(out, static_cast<std::uint32_t>(sc.num_relations()));
    for (RelId r = 0; r < sc.num_relations(); ++r) {
        const RelationDecl& decl = sc.relation(r);
        io::put_str(out, decl.name);
        io::put_u32(out, decl.src);
        io::put_u32(out, decl.dst);
        io::put_str(out, decl.inverse_name);
    }
    io::put_u32(out, g.num_nodes());
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        io::put_str(out, g.external_id(u));
        io::put_u32(out, g.type_of(u));
    }
    for (RelId r = 0; r < sc.num_relations(); ++r) {
        io::put_u64(out, g.relation_edge_count(r));
        auto [tf, tl] = g.type_range(sc.relation(r).src);
        for (NodeId u = tf; u < tl; ++u)
            for (NodeId v : g.neighbors(u, forward_dir(r))) {
                io::put_u32(out, u);
                io::put_u32(out, v);
            }
    }

    std::ofstream cout_(dir / "corpora.bin", std::ios::binary);
    if (!cout_) raise(Errc::io_error, "cannot write '" + (dir / "corpora.bin").string() + "'");
    io::put_u32(cout_, static_cast<std::uint32_t>(corpora.size()));
    for (const auto& [field, corpus] : corpora) {
        io::put_str(cout_, field);
        io::put_u32(cout_, static_cast<std::uint32_t>(corpus.size()));
        for (const Document& doc : corpus) {
            io::put_u32(cout_, doc.node);
            io::put_str(cout_, doc.text);
        }
    }
}

inline LoadedDataset load_snapshot(const std::filesystem::path& dir) {
    std::ifstream in(dir / "graph.bin", std::ios::binary);
    if (!in) raise(Errc::io_error, "cannot open '" + (dir / "graph.bin").string() + "'");
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "HFSG", 4) != 0)
        raise(Errc::format_error, "bad snapshot magic in '" + (dir / "graph.bin").string() + "'");
    if (io::get_u32(in) != kSnapshotVersion)
        raise(Errc::format_error, "unsupported snapshot version");

    Schema schema;
    std::uint32_t ntypes = io::get_u32(in);
    for (std::uint32_t t = 0; t < ntypes; ++t) schema.add_node_type(io::get_str(in));
    std::uint32_t nrels = io::get_u32(in);
    struct RelHead {
        std::string name;
        TypeId src, dst;
    };
    std::vector<RelHead> rels;
    for (std::uint32_t r = 0; r < nrels; ++r) {
        std::string name = io::get_str(in);
        TypeId src = static_cast<TypeId>(io::get_u32(in));
        TypeId dst = static_cast<TypeId>(io::get_u32(in));
        std::string inverse = io::get_str(in);
        schema.add_relation(name, schema.type_name(src), schema.type_name(dst), inverse);
        rels.push_back({name, src, dst});
    }

    std::uint32_t nnodes = io::get_u32(in);
    std::vector<NodeRecord> nodes;
    std::vector<std::string> ext(nnodes);
    nodes.reserve(nnodes);
    for (std::uint32_t u = 0; u < nnodes; ++u) {
        ext[u] = io::get_str(in);
        TypeId t = static_cast<TypeId>(io::get_u32(in));
        nodes.push_back(NodeRecord{ext[u], schema.type_name(t)});
    }
    std::vector<EdgeRecord> edges;
    for (std::uint32_t r = 0; r < nrels; ++r) {
        std::uint64_t count = io::get_u64(in);
        for (std::uint64_t e = 0; e < count; ++e) {
            NodeId a = io::get_u32(in);
            NodeId b = io::get_u32(in);
            edges.push_back(EdgeRecord{ext.at(a), ext.at(b), rels[r].name});
        }
    }
    if (!in) raise(Errc::format_error, "truncated snapshot '" + (dir / "graph.bin").string() + "'");

    LoadedDataset out;
    out.raw.schema = schema;
    out.raw.nodes = nodes;
    out.raw.edges = edges;
    out.hin = freeze_graph(schema, nodes, edges);

    std::ifstream cin_(dir / "corpora.bin", std::ios::binary);
    if (cin_) {
        std::uint32_t nfields = io::get_u32(cin_);
        for (std::uint32_t f = 0; f < nfields; ++f) {
            std::string field = io::get_str(cin_);
            std::uint32_t ndocs = io::get_u32(cin_);
            Corpus corpus;
            corpus.reserve(ndocs);
            for (std::uint32_t d = 0; d < ndocs; ++d) {
                NodeId node = io::get_u32(cin_);
                corpus.push_back(Document{node, io::get_str(cin_)});
            }
            out.corpora.emplace(field, std::move(corpus));
        }
    }
    return out;
}

// Weight tables. The TSVs are the interchange format; tf-idf vectors ride
// in a binary sidecar for the pairwise content mode.
inline void save_weight_tables(const std::filesystem::path& dir, const Hin& g,
                               const CentralityTable& centrality, const ContributionGraph& contrib,
                               const ContentScoreTable& content) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "alpha.tsv");
        out << "node_id\talpha\n";
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            out << g.external_id(u) << "\t" << io::format_double(centrality.alpha[u]) << "\n";
    }
    {
        std::ofstream out(dir / "contrib.tsv");
        out << "relation\trf\tirf\tmu\n";
        for (RelId r = 0; r < g.schema().num_relations(); ++r)
            out << g.schema().relation(r).name << "\t" << io::format_double(contrib.rf(r)) << "\t"
                << io::format_double(contrib.irf(r)) << "\t" << io::format_double(contrib.mu(r))
                << "\n";
    }
    {
        std::ofstream out(dir / "chi.tsv");
        out << "node_id\tchi\n";
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            out << g.external_id(u) << "\t" << io::format_double(content.chi(u)) << "\n";
    }
    {
        std::ofstream out(dir / "content.bin", std::ios::binary);
        io::put_u32(out, g.num_nodes());
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
            const SparseVector& vec = content.vectors()[u];
            io::put_u32(out, content.content_flags()[u]);
            io::put_u32(out, static_cast<std::uint32_t>(vec.size()));
            for (auto [term, weight] : vec) {
                io::put_u32(out, term);
                io::put_f64(out, weight);
            }
        }
    }
    {
        nlohmann::json meta;
        meta["c_n"] = centrality.c_n;
        meta["iterations"] = centrality.iterations;
        meta["residual"] = centrality.final_residual;
        meta["converged"] = centrality.converged;
        std::ofstream out(dir / "precompute.json");
        out << meta.dump(2) << "\n";
    }
}

inline void load_weight_tables(const std::filesystem::path& dir, const Hin& g,
                               CentralityTable& centrality, ContributionGraph& contrib,
                               ContentScoreTable& content) {
    {
        std::ifstream in(dir / "alpha.tsv");
        if (!in) raise(Errc::io_error, "cannot open '" + (dir / "alpha.tsv").string() +
                                           "' (run precompute first)");
        std::string line;
        std::getline(in, line);
        centrality.alpha.assign(g.num_nodes(), 1.0);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::size_t tab = line.find('\t');
            centrality.alpha.at(g.node_id(line.substr(0, tab))) = std::stod(line.substr(tab + 1));
        }
    }
    {
        std::ifstream in(dir / "contrib.tsv");
        if (!in) raise(Errc::io_error, "cannot open '" + (dir / "contrib.tsv").string() + "'");
        std::string line;
        std::getline(in, line);
        std::vector<double> rf(g.schema().num_relations(), 0), irf(rf), mu(rf);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto cells = detail::split_tabs(line);
            RelId r = rel_of(g.schema().dir_id(cells.at(0)));
            rf.at(r) = std::stod(cells.at(1));
            irf.at(r) = std::stod(cells.at(2));
            mu.at(r) = std::stod(cells.at(3));
        }
        contrib.restore(std::move(rf), std::move(irf), std::move(mu));
    }
    {
        std::ifstream in(dir / "chi.tsv");
        if (!in) raise(Errc::io_error, "cannot open '" + (dir / "chi.tsv").string() + "'");
        std::string line;
        std::getline(in, line);
        std::vector<double> chi(g.num_nodes(), 1.0);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::size_t tab = line.find('\t');
            chi.at(g.node_id(line.substr(0, tab))) = std::stod(line.substr(tab + 1));
        }
        std::vector<SparseVector> vectors(g.num_nodes());
        std::vector<std::uint8_t> flags(g.num_nodes(), 0);
        std::ifstream bin(dir / "content.bin", std::ios::binary);
        if (bin) {
            std::uint32_t n = io::get_u32(bin);
            for (std::uint32_t u = 0; u < n; ++u) {
                flags.at(u) = static_cast<std::uint8_t>(io::get_u32(bin));
                std::uint32_t len = io::get_u32(bin);
                SparseVector vec;
                vec.reserve(len);
                for (std::uint32_t i = 0; i < len; ++i) {
                    TermId term = io::get_u32(bin);
                    double weight = io::get_f64(bin);
                    vec.emplace_back(term, weight);
                }
                vectors.at(u) = std::move(vec);
            }
        }
        content.restore(std::move(chi), std::move(vectors), std::move(flags));
    }
    if (std::ifstream meta_in(dir / "precompute.json"); meta_in) {
        nlohmann::json meta;
        meta_in >> meta;
        centrality.c_n = meta.value("c_n", 0.85);
        centrality.iterations = meta.value("iterations", 0u);
        centrality.final_residual = meta.value("residual", 0.0);
        centrality.converged = meta.value("converged", false);
    }
}

}  // namespace hetfs
