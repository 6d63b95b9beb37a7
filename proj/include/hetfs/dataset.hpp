#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/hin.hpp"
#include "hetfs/schema.hpp"

#include <json.hpp>

namespace hetfs {

struct TextRecord {
    std::string id;
    std::string field;
    std::string text;
    std::size_t line = 0;
};

// Parsed but not yet frozen dataset: schema plus raw node/edge/text rows.
// The eval harness works on this level so it can split edges before
// freezing a training graph.
struct Dataset {
    Schema schema;
    std::vector<NodeRecord> nodes;
    std::vector<EdgeRecord> edges;
    std::vector<TextRecord> texts;
};

struct DatasetPaths {
    std::filesystem::path schema_file;
    std::filesystem::path nodes_file;
    std::filesystem::path edges_file;
    std::filesystem::path text_file;  // optional, empty to skip
};

// One text document attached to a node.
struct Document {
    NodeId node;
    std::string text;
};

using Corpus = std::vector<Document>;

struct LoadedDataset {
    Hin hin;
    std::map<std::string, Corpus> corpora;  // keyed by field name
    Dataset raw;
};

namespace detail {

inline std::string escape_tsv(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string unescape_tsv(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 == s.size()) {
            out += s[i];
            continue;
        }
        switch (s[++i]) {
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: out += s[i];
        }
    }
    return out;
}

inline std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            return cells;
        }
        cells.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open '" + path.string() + "'");
    return in;
}

// Reads a TSV with a mandatory header row. Calls row(cells, line_number)
// for every data row; rows must have at least the header's column count.
template <typename RowFn>
void read_tsv(const std::filesystem::path& path, const std::vector<std::string>& required,
              RowFn&& row) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line))
        raise(Errc::format_error, path.string() + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_tabs(line);
    std::vector<std::size_t> index;
    for (const std::string& want : required) {
        auto it = std::find(header.begin(), header.end(), want);
        if (it == header.end())
            raise(Errc::format_error, path.string() + ": header lacks column '" + want + "'");
        index.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    std::optional<std::size_t> time_col;
    if (auto it = std::find(header.begin(), header.end(), "time"); it != header.end())
        time_col = static_cast<std::size_t>(it - header.begin());

    std::size_t line_no = 1;
    std::vector<std::string> picked;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_tabs(line);
        if (cells.size() < header.size())
            raise(Errc::format_error,
                  path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " columns, got " + std::to_string(cells.size()));
        picked.clear();
        for (std::size_t i : index) picked.push_back(cells[i]);
        std::optional<std::string> time_cell;
        if (time_col) time_cell = cells[*time_col];
        row(picked, time_cell, line_no);
    }
}

}  // namespace detail

// schema.json: {"node_types": [...], "relations": [{"name", "src", "dst",
// "inverse_name"?}]}.
inline Schema read_schema_file(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::format_error, path.string() + ": " + e.what());
    }
    Schema schema;
    if (!doc.contains("node_types") || !doc["node_types"].is_array())
        raise(Errc::format_error, path.string() + ": 'node_types' array required");
    for (const auto& t : doc["node_types"]) schema.add_node_type(t.get<std::string>());
    if (!doc.contains("relations") || !doc["relations"].is_array())
        raise(Errc::format_error, path.string() + ": 'relations' array required");
    for (const auto& r : doc["relations"]) {
        std::string inverse = r.value("inverse_name", std::string());
        schema.add_relation(r.at("name").get<std::string>(), r.at("src").get<std::string>(),
                            r.at("dst").get<std::string>(), inverse);
    }
    return schema;
}

inline Dataset read_dataset(const DatasetPaths& paths) {
    Dataset ds;
    ds.schema = read_schema_file(paths.schema_file);

    detail::read_tsv(paths.nodes_file, {"id", "type"},
                     [&](const std::vector<std::string>& c, const std::optional<std::string>&,
                         std::size_t line) {
                         if (!ds.schema.find_type(c[1]))
                             raise(Errc::unknown_type, paths.nodes_file.string() + ":" +
                                                           std::to_string(line) + ": type '" + c[1] + "'");
                         ds.nodes.push_back(NodeRecord{c[0], c[1], line});
                     });

    std::unordered_set<std::string_view> known;
    known.reserve(ds.nodes.size());
    for (const NodeRecord& n : ds.nodes) known.insert(n.id);

    detail::read_tsv(
        paths.edges_file, {"src", "dst", "relation"},
        [&](const std::vector<std::string>& c, const std::optional<std::string>& time,
            std::size_t line) {
            EdgeRecord rec{c[0], c[1], c[2], 0, false, line};
            for (int i = 0; i < 2; ++i)
                if (!known.count(c[i]))
                    raise(Errc::unknown_node, paths.edges_file.string() + ":" +
                                                  std::to_string(line) + ": node '" + c[i] + "'");
            if (!ds.schema.find_dir(c[2]))
                raise(Errc::unknown_relation, paths.edges_file.string() + ":" +
                                                  std::to_string(line) + ": relation '" + c[2] + "'");
            if (time && !time->empty()) {
                const char* first = time->data();
                const char* last = first + time->size();
                auto res = std::from_chars(first, last, rec.time);
                if (res.ec != std::errc() || res.ptr != last)
                    raise(Errc::format_error, paths.edges_file.string() + ":" +
                                                  std::to_string(line) + ": bad time '" + *time + "'");
                rec.has_time = true;
            }
            ds.edges.push_back(std::move(rec));
        });

    if (!paths.text_file.empty() && std::filesystem::exists(paths.text_file)) {
        std::unordered_set<std::string> seen;
        detail::read_tsv(paths.text_file, {"id", "field", "text"},
                         [&](const std::vector<std::string>& c, const std::optional<std::string>&,
                             std::size_t line) {
                             if (!known.count(c[0]))
                                 raise(Errc::unknown_node, paths.text_file.string() + ":" +
                                                               std::to_string(line) + ": node '" +
                                                               c[0] + "'");
                             if (!seen.insert(c[0] + "\t" + c[1]).second)
                                 raise(Errc::format_error,
                                       paths.text_file.string() + ":" + std::to_string(line) +
                                           ": duplicate text row for (" + c[0] + ", " + c[1] + ")");
                             ds.texts.push_back(
                                 TextRecord{c[0], c[1], detail::unescape_tsv(c[2]), line});
                         });
    }
    return ds;
}

inline LoadedDataset freeze_dataset(Dataset ds) {
    LoadedDataset out;
    out.hin = freeze_graph(ds.schema, ds.nodes, ds.edges);
    for (const TextRecord& t : ds.texts)
        out.corpora[t.field].push_back(Document{out.hin.node_id(t.id), t.text});
    out.raw = std::move(ds);
    return out;
}

// Loads schema + nodes + edges (+ optional text) into a frozen Hin and one
// corpus per text field.
inline LoadedDataset load_dataset(const DatasetPaths& paths) {
    return freeze_dataset(read_dataset(paths));
}

// Writes a dataset back out in the on-disk formats; used by the synthetic
// generator and round-trip tests.
inline void write_dataset(const Dataset& ds, const DatasetPaths& paths) {
    {
        nlohmann::json doc;
        doc["node_types"] = nlohmann::json::array();
        for (TypeId t = 0; t < ds.schema.num_types(); ++t)
            doc["node_types"].push_back(ds.schema.type_name(t));
        doc["relations"] = nlohmann::json::array();
        for (RelId r = 0; r < ds.schema.num_relations(); ++r) {
            const RelationDecl& decl = ds.schema.relation(r);
            doc["relations"].push_back({{"name", decl.name},
                                        {"src", ds.schema.type_name(decl.src)},
                                        {"dst", ds.schema.type_name(decl.dst)},
                                        {"inverse_name", decl.inverse_name}});
        }
        std::ofstream out(paths.schema_file);
        if (!out) raise(Errc::io_error, "cannot write '" + paths.schema_file.string() + "'");
        out << doc.dump(2) << "\n";
    }
    {
        std::ofstream out(paths.nodes_file);
        if (!out) raise(Errc::io_error, "cannot write '" + paths.nodes_file.string() + "'");
        out << "id\ttype\n";
        for (const NodeRecord& n : ds.nodes) out << n.id << "\t" << n.type << "\n";
    }
    {
        std::ofstream out(paths.edges_file);
        if (!out) raise(Errc::io_error, "cannot write '" + paths.edges_file.string() + "'");
        bool any_time = false;
        for (const EdgeRecord& e : ds.edges) any_time = any_time || e.has_time;
        out << (any_time ? "src\tdst\trelation\ttime\n" : "src\tdst\trelation\n");
        for (const EdgeRecord& e : ds.edges) {
            out << e.src << "\t" << e.dst << "\t" << e.relation;
            if (any_time) out << "\t" << (e.has_time ? std::to_string(e.time) : std::string());
            out << "\n";
        }
    }
    if (!ds.texts.empty()) {
        std::ofstream out(paths.text_file);
        if (!out) raise(Errc::io_error, "cannot write '" + paths.text_file.string() + "'");
        out << "id\tfield\ttext\n";
        for (const TextRecord& t : ds.texts)
            out << t.id << "\t" << t.field << "\t" << detail::escape_tsv(t.text) << "\n";
    }
}

}  // namespace hetfs
