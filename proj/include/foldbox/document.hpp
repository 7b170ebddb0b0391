#pragma once

// The .fbx structure file format: a line-oriented text tree with a header
// (schema version, kind, metadata) and named sections of whitespace-separated
// rows. Canonical form sorts rows lexicographically, orders sections by the
// kind schema, and uses LF line endings. See docs/FORMAT.md.

#include "foldbox/core.hpp"

namespace foldbox {

struct ParseError : std::runtime_error {
    int line;

    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

struct Document {
    int schema_version = 1;
    std::string kind;
    std::map<std::string, std::string> meta;
    std::map<std::string, std::vector<std::vector<Id>>> tables;

    const std::vector<std::vector<Id>>& table(const std::string& name) const;
    std::map<Id, Id> as_map(const std::string& name) const;
    std::map<IdPair, Id> as_pair_map(const std::string& name) const;
    std::vector<Id> as_list(const std::string& name) const;
    Id as_scalar(const std::string& name) const;  // single 1-token row
};

struct SectionSpec {
    std::string name;
    std::size_t arity;
};

// Ordered section schema for a kind; throws OpError(UnknownKind) if absent.
const std::vector<SectionSpec>& kind_schema(const std::string& kind);
bool kind_known(const std::string& kind);
std::vector<std::string> known_kinds();

Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);  // canonical bytes

}  // namespace foldbox
