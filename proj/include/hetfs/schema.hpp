#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hetfs/error.hpp"

namespace hetfs {

using NodeId = std::uint32_t;
using TypeId = std::uint16_t;
using RelId = std::uint16_t;

// A traversal direction: a declared relation walked forward or backward.
// Encoded as rel*2 (+1 for the inverse) so meta-paths and adjacency can be
// indexed by a single integer.
using Dir = std::uint32_t;

constexpr Dir forward_dir(RelId r) { return static_cast<Dir>(r) << 1; }
constexpr Dir inverse_dir(RelId r) { return (static_cast<Dir>(r) << 1) | 1u; }
constexpr RelId rel_of(Dir d) { return static_cast<RelId>(d >> 1); }
constexpr bool is_inverse(Dir d) { return (d & 1u) != 0; }
constexpr Dir flip(Dir d) { return d ^ 1u; }

struct RelationDecl {
    std::string name;
    TypeId src = 0;
    TypeId dst = 0;
    std::string inverse_name;  // defaults to "<name>^-1"
};

// Type-level description of an HIN: the node type set and the relation type
// set. Every relation gets a named inverse so meta-paths can traverse both
// ways (acting / acted-by).
class Schema {
public:
    TypeId add_node_type(const std::string& name) {
        validate_name(name);
        if (type_by_name_.count(name))
            raise(Errc::invalid_parameter, "duplicate node type '" + name + "'");
        TypeId id = static_cast<TypeId>(type_names_.size());
        type_names_.push_back(name);
        type_by_name_.emplace(name, id);
        return id;
    }

    RelId add_relation(const std::string& name, const std::string& src_type,
                       const std::string& dst_type, std::string inverse_name = "") {
        validate_name(name);
        if (dir_by_name_.count(name))
            raise(Errc::invalid_parameter, "duplicate relation name '" + name + "'");
        if (inverse_name.empty()) inverse_name = name + "^-1";
        validate_name(inverse_name);
        if (dir_by_name_.count(inverse_name) || inverse_name == name)
            raise(Errc::invalid_parameter, "duplicate relation name '" + inverse_name + "'");
        RelationDecl decl;
        decl.name = name;
        decl.src = type_id(src_type);
        decl.dst = type_id(dst_type);
        decl.inverse_name = inverse_name;
        RelId id = static_cast<RelId>(relations_.size());
        relations_.push_back(std::move(decl));
        dir_by_name_.emplace(name, forward_dir(id));
        dir_by_name_.emplace(relations_.back().inverse_name, inverse_dir(id));
        return id;
    }

    std::size_t num_types() const { return type_names_.size(); }
    std::size_t num_relations() const { return relations_.size(); }
    std::size_t num_dirs() const { return relations_.size() * 2; }

    const std::string& type_name(TypeId t) const { return type_names_.at(t); }
    const RelationDecl& relation(RelId r) const { return relations_.at(r); }

    TypeId type_id(const std::string& name) const {
        auto it = type_by_name_.find(name);
        if (it == type_by_name_.end()) raise(Errc::unknown_type, "node type '" + name + "'");
        return it->second;
    }

    std::optional<TypeId> find_type(const std::string& name) const {
        auto it = type_by_name_.find(name);
        if (it == type_by_name_.end()) return std::nullopt;
        return it->second;
    }

    // Accepts forward and inverse relation names.
    Dir dir_id(const std::string& name) const {
        auto it = dir_by_name_.find(name);
        if (it == dir_by_name_.end()) raise(Errc::unknown_relation, "relation '" + name + "'");
        return it->second;
    }

    std::optional<Dir> find_dir(const std::string& name) const {
        auto it = dir_by_name_.find(name);
        if (it == dir_by_name_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& dir_name(Dir d) const {
        const RelationDecl& decl = relations_.at(rel_of(d));
        return is_inverse(d) ? decl.inverse_name : decl.name;
    }

    TypeId dir_src(Dir d) const {
        const RelationDecl& decl = relations_.at(rel_of(d));
        return is_inverse(d) ? decl.dst : decl.src;
    }

    TypeId dir_dst(Dir d) const {
        const RelationDecl& decl = relations_.at(rel_of(d));
        return is_inverse(d) ? decl.src : decl.dst;
    }

    // All directions leaving a node type, in declaration order.
    std::vector<Dir> dirs_from(TypeId t) const {
        std::vector<Dir> out;
        for (RelId r = 0; r < relations_.size(); ++r) {
            if (relations_[r].src == t) out.push_back(forward_dir(r));
            if (relations_[r].dst == t) out.push_back(inverse_dir(r));
        }
        return out;
    }

    // The unique direction from type a to type b, if exactly one exists.
    // Short-form meta-path parsing refuses to guess between several.
    std::optional<Dir> unique_dir_between(TypeId a, TypeId b, bool* ambiguous = nullptr) const {
        std::optional<Dir> found;
        if (ambiguous) *ambiguous = false;
        for (RelId r = 0; r < relations_.size(); ++r) {
            Dir candidates[2] = {forward_dir(r), inverse_dir(r)};
            for (Dir d : candidates) {
                if (dir_src(d) != a || dir_dst(d) != b) continue;
                // A self-relation (src == dst) reads the same either way in
                // short form; treat the pair as one candidate.
                if (found && rel_of(*found) == rel_of(d)) continue;
                if (found) {
                    if (ambiguous) *ambiguous = true;
                    return std::nullopt;
                }
                found = d;
            }
        }
        return found;
    }

private:
    // '[', ']', ',' and whitespace would break the meta-path grammar and
    // the TSV formats; everything else is legal in a name.
    static void validate_name(const std::string& name) {
        if (name.empty()) raise(Errc::invalid_parameter, "empty name");
        for (char ch : name) {
            bool reserved = ch == '[' || ch == ']' || ch == ',' || ch == '\t' || ch == '\n' ||
                            ch == '\r' || ch == ' ';
            if (reserved)
                raise(Errc::invalid_parameter, "name '" + name + "' contains reserved character");
        }
    }

    std::vector<std::string> type_names_;
    std::unordered_map<std::string, TypeId> type_by_name_;
    std::vector<RelationDecl> relations_;
    std::unordered_map<std::string, Dir> dir_by_name_;
};

}  // namespace hetfs
