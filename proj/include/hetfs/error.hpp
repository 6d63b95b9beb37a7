#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetfs {

// Every failure mode surfaced by the library. The CLI maps these to exit
// codes; tests match on the code rather than the message text.
enum class Errc {
    unknown_type,
    unknown_node,
    unknown_relation,
    endpoint_type_mismatch,
    parse_error,
    ambiguous_relation,
    schema_mismatch,
    no_path_exists,
    io_error,
    format_error,
    infeasible_spec,
    empty_corpus,
    empty_graph,
    invalid_parameter,
    negative_value,
    not_neighbor,
    type_mismatch,
    asymmetric_metapath,
    unsupported_content_mode,
    invalid_walk_count,
    empty_test_set,
    empty_input,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::unknown_type: return "UnknownType";
        case Errc::unknown_node: return "UnknownNode";
        case Errc::unknown_relation: return "UnknownRelation";
        case Errc::endpoint_type_mismatch: return "EndpointTypeMismatch";
        case Errc::parse_error: return "ParseError";
        case Errc::ambiguous_relation: return "AmbiguousRelation";
        case Errc::schema_mismatch: return "SchemaMismatch";
        case Errc::no_path_exists: return "NoPathExists";
        case Errc::io_error: return "IoError";
        case Errc::format_error: return "FormatError";
        case Errc::infeasible_spec: return "InfeasibleSpec";
        case Errc::empty_corpus: return "EmptyCorpus";
        case Errc::empty_graph: return "EmptyGraph";
        case Errc::invalid_parameter: return "InvalidParameter";
        case Errc::negative_value: return "NegativeValue";
        case Errc::not_neighbor: return "NotNeighbor";
        case Errc::type_mismatch: return "TypeMismatch";
        case Errc::asymmetric_metapath: return "AsymmetricMetaPath";
        case Errc::unsupported_content_mode: return "UnsupportedContentMode";
        case Errc::invalid_walk_count: return "InvalidWalkCount";
        case Errc::empty_test_set: return "EmptyTestSet";
        case Errc::empty_input: return "EmptyInput";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace hetfs
