#pragma once

// Batch command layer shared by the foldbox tool and the test harnesses:
// document validation with dependency resolution, run reports in text and
// structured form, generation, conversions, and theorem round trips.

#include "foldbox/catalog.hpp"
#include "foldbox/codec.hpp"

namespace foldbox {

struct TargetReport {
    std::string path;
    std::string kind;
    ValidationReport report;
    std::map<std::string, std::size_t> counts;  // per-sort element counts
};

struct RunReport {
    std::string command;
    std::vector<TargetReport> targets;
    std::vector<std::string> notes;  // e.g. round-trip outcomes
    double seconds = 0.0;
    int exit_code = 0;

    void finish();  // computes exit_code from the targets
};

// Number of dependency files a kind needs after the main file (0 for
// self-contained kinds).
std::size_t dependency_count(const std::string& kind);
bool kind_self_contained(const std::string& kind);

// Validates a parsed document against its (already parsed) dependencies.
ValidationReport validate_document(const Document& main, const std::vector<Document>& deps,
                                   const Caps& caps = {});

std::map<std::string, std::size_t> document_counts(const Document& doc);

std::string emit_report(const RunReport& r, const std::string& format);  // "text" | "structured"

struct CommandArgs {
    std::string kind;
    std::string theorem;
    std::string group;
    int order = 0;
    std::string out;
    std::vector<std::string> files;
    Caps caps;
};

RunReport cmd_validate(const CommandArgs& args);
RunReport cmd_report(const CommandArgs& args);
RunReport cmd_generate(const CommandArgs& args);
RunReport cmd_convert(const CommandArgs& args);
RunReport cmd_roundtrip(const CommandArgs& args);

// ---- mutation harness ----

struct MutationOutcome {
    std::string table;
    std::vector<Id> before;
    std::vector<Id> after;
    bool caught = false;
};

// Names of the sections of this kind whose entries are fair game for
// single-entry value mutations (operation/assignment tables only).
std::vector<std::string> mutable_sections(const std::string& kind);

// Runs `count` random single-entry value mutations on the document, each
// validated against `deps`; every mutation must be caught for the harness to
// report success. Skips sections with no alternative value to substitute.
std::vector<MutationOutcome> run_mutations(const Document& doc, const std::vector<Document>& deps,
                                           int count, std::uint64_t seed, const Caps& caps = {});

}  // namespace foldbox
