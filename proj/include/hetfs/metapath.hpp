#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetfs/error.hpp"
#include "hetfs/schema.hpp"

namespace hetfs {

// A validated meta-path: node types A1..A(l+1) joined by relation
// directions R1..Rl. Symmetric when the type sequence is a palindrome and
// Ri is the inverse of R(l+1-i).
struct MetaPath {
    std::vector<TypeId> types;  // length l + 1
    std::vector<Dir> dirs;      // length l
    bool symmetric = false;

    std::size_t length() const { return dirs.size(); }
    TypeId endpoint_type() const { return types.front(); }
    bool operator==(const MetaPath& other) const { return dirs == other.dirs; }
};

namespace detail {

inline bool compute_symmetric(const std::vector<TypeId>& types, const std::vector<Dir>& dirs) {
    std::size_t l = dirs.size();
    for (std::size_t i = 0; i + i < types.size(); ++i)
        if (types[i] != types[types.size() - 1 - i]) return false;
    for (std::size_t i = 0; i < l; ++i)
        if (dirs[i] != flip(dirs[l - 1 - i])) return false;
    return true;
}

inline MetaPath make_metapath(const Schema& schema, std::vector<Dir> dirs) {
    MetaPath p;
    p.types.push_back(schema.dir_src(dirs.front()));
    for (Dir d : dirs) {
        if (schema.dir_src(d) != p.types.back())
            raise(Errc::schema_mismatch, "relation '" + schema.dir_name(d) +
                                             "' does not start at type '" +
                                             schema.type_name(p.types.back()) + "'");
        p.types.push_back(schema.dir_dst(d));
    }
    p.dirs = std::move(dirs);
    p.symmetric = compute_symmetric(p.types, p.dirs);
    return p;
}

}  // namespace detail

// Long form: "M-[MA]->A-[MA^-1]->M". Accepts forward and inverse relation
// names between the brackets.
inline std::string format_metapath(const Schema& schema, const MetaPath& p) {
    std::string out = schema.type_name(p.types.front());
    for (std::size_t i = 0; i < p.dirs.size(); ++i) {
        out += "-[";
        out += schema.dir_name(p.dirs[i]);
        out += "]->";
        out += schema.type_name(p.types[i + 1]);
    }
    return out;
}

// Accepts the short form (one character per node type, e.g. "MAM", legal
// only while each consecutive type pair is joined by exactly one relation)
// and the long form produced by format_metapath. Whitespace is not allowed.
inline MetaPath parse_metapath(const std::string& text, const Schema& schema) {
    if (text.empty()) raise(Errc::parse_error, "empty meta-path");

    std::vector<TypeId> types;
    std::vector<Dir> dirs;

    if (text.find('[') == std::string::npos) {
        // Short form. Each character must resolve to a unique node type:
        // an exact single-character name, else a unique initial letter.
        for (char ch : text) {
            std::string one(1, ch);
            std::optional<TypeId> match = schema.find_type(one);
            if (!match) {
                for (TypeId t = 0; t < schema.num_types(); ++t) {
                    if (schema.type_name(t).front() != ch) continue;
                    if (match)
                        raise(Errc::parse_error, std::string("type initial '") + ch +
                                                     "' is ambiguous in short form");
                    match = t;
                }
            }
            if (!match) raise(Errc::parse_error, std::string("no node type matches '") + ch + "'");
            types.push_back(*match);
        }
        if (types.size() < 2) raise(Errc::parse_error, "meta-path needs at least two node types");
        for (std::size_t i = 0; i + 1 < types.size(); ++i) {
            bool ambiguous = false;
            auto d = schema.unique_dir_between(types[i], types[i + 1], &ambiguous);
            if (ambiguous)
                raise(Errc::ambiguous_relation,
                      "more than one relation joins '" + schema.type_name(types[i]) + "' and '" +
                          schema.type_name(types[i + 1]) + "'; use the long form");
            if (!d)
                raise(Errc::schema_mismatch, "no relation joins '" + schema.type_name(types[i]) +
                                                 "' and '" + schema.type_name(types[i + 1]) + "'");
            dirs.push_back(*d);
        }
    } else {
        // Long form grammar: TYPE ("-[" REL "]->" TYPE)+
        std::size_t pos = 0;
        auto read_until = [&](std::string_view stop) {
            std::size_t hit = text.find(stop, pos);
            std::string tok = text.substr(pos, hit == std::string::npos ? std::string::npos : hit - pos);
            pos = hit == std::string::npos ? text.size() : hit + stop.size();
            return std::make_pair(tok, hit != std::string::npos);
        };
        auto [first, more] = read_until("-[");
        auto t0 = schema.find_type(first);
        if (!t0) raise(Errc::parse_error, "unknown node type '" + first + "'");
        types.push_back(*t0);
        if (!more) raise(Errc::parse_error, "expected '-[' after '" + first + "'");
        while (true) {
            auto [rel, closed] = read_until("]->");
            if (!closed) raise(Errc::parse_error, "unterminated relation '" + rel + "'");
            auto d = schema.find_dir(rel);
            if (!d) raise(Errc::parse_error, "unknown relation '" + rel + "'");
            auto [ty, cont] = read_until("-[");
            auto t = schema.find_type(ty);
            if (!t) raise(Errc::parse_error, "unknown node type '" + ty + "'");
            if (schema.dir_src(*d) != types.back() || schema.dir_dst(*d) != *t)
                raise(Errc::schema_mismatch, "relation '" + rel + "' does not join '" +
                                                 schema.type_name(types.back()) + "' and '" + ty + "'");
            dirs.push_back(*d);
            types.push_back(*t);
            if (!cont) break;
        }
    }

    MetaPath p;
    p.types = std::move(types);
    p.dirs = std::move(dirs);
    p.symmetric = detail::compute_symmetric(p.types, p.dirs);
    return p;
}

// Non-empty set of deduplicated symmetric meta-paths sharing one endpoint
// type; the form the similarity engines consume.
struct MetaPathSet {
    std::vector<MetaPath> paths;

    static MetaPathSet of(std::vector<MetaPath> paths) {
        if (paths.empty()) raise(Errc::invalid_parameter, "empty meta-path set");
        for (const MetaPath& p : paths) {
            if (!p.symmetric)
                raise(Errc::asymmetric_metapath, "meta-path is not symmetric");
            if (p.endpoint_type() != paths.front().endpoint_type())
                raise(Errc::type_mismatch, "meta-paths have mixed endpoint types");
        }
        MetaPathSet set;
        for (MetaPath& p : paths) {
            bool dup = false;
            for (const MetaPath& q : set.paths) dup = dup || q == p;
            if (!dup) set.paths.push_back(std::move(p));
        }
        return set;
    }

    TypeId endpoint_type() const { return paths.front().endpoint_type(); }
};

// All symmetric meta-paths with both endpoints of the given type and length
// <= max_len. A symmetric path of length 2h is its first half mirrored, so
// this walks the schema graph h levels deep. Deterministic order: shorter
// first, then lexicographic on direction ids.
inline MetaPathSet enumerate_symmetric_metapaths(const Schema& schema, TypeId endpoint,
                                                 std::size_t max_len) {
    if (endpoint >= schema.num_types()) raise(Errc::unknown_type, "type id out of range");
    if (max_len < 2 || max_len % 2 != 0)
        raise(Errc::invalid_parameter, "max length must be even and at least 2");
    if (schema.dirs_from(endpoint).empty())
        raise(Errc::no_path_exists,
              "node type '" + schema.type_name(endpoint) + "' has no relations");

    std::vector<MetaPath> out;
    std::vector<Dir> half;
    auto expand = [&](auto&& self, TypeId at) -> void {
        if (!half.empty()) {
            std::vector<Dir> dirs = half;
            for (std::size_t i = half.size(); i-- > 0;) dirs.push_back(flip(half[i]));
            out.push_back(detail::make_metapath(schema, std::move(dirs)));
        }
        if (half.size() * 2 >= max_len) return;
        for (Dir d : schema.dirs_from(at)) {
            half.push_back(d);
            self(self, schema.dir_dst(d));
            half.pop_back();
        }
    };
    expand(expand, endpoint);

    std::sort(out.begin(), out.end(), [](const MetaPath& a, const MetaPath& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.dirs < b.dirs;
    });
    return MetaPathSet::of(std::move(out));
}

}  // namespace hetfs
