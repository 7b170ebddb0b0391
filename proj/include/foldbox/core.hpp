#pragma once

// Shared vocabulary for the foldbox structure kit: identifiers, validation
// reports, operation errors, and size caps.
//
// Table conventions used across the library (and mirrored by the .fbx file
// format, see docs/FORMAT.md):
//   * category-style composition tables are keyed (g, f) -> g∘f, where f is
//     applied first (tgt f = src g);
//   * group multiplication tables are keyed (a, b) -> a*b;
//   * double-category composition tables are keyed in diagram order:
//     hcomp[(a, b)] = [a b] (a left of b), vcomp[(a, b)] = [a ; b] (a above b).
// All values are immutable after construction; every operation is a pure
// function of its inputs.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace foldbox {

using Id = std::string;
using IdPair = std::pair<Id, Id>;

// One reported problem: an axiom tag, the offending id tuple, and a rendering.
struct Issue {
    std::string tag;
    std::vector<Id> tuple;
    std::string message;

    friend bool operator==(const Issue&, const Issue&) = default;
    friend auto operator<=>(const Issue&, const Issue&) = default;
};

// Violations are axiom failures on a structurally well-formed table set.
// Structural errors (dangling references, missing table entries, duplicate
// ids) are reported separately so callers can distinguish "malformed" from
// "invalid".
struct ValidationReport {
    std::vector<Issue> structural;
    std::vector<Issue> violations;

    bool valid() const { return structural.empty() && violations.empty(); }
    bool well_formed() const { return structural.empty(); }

    void structural_error(std::string tag, std::vector<Id> tuple, std::string message) {
        structural.push_back({std::move(tag), std::move(tuple), std::move(message)});
    }
    void violation(std::string tag, std::vector<Id> tuple, std::string message) {
        violations.push_back({std::move(tag), std::move(tuple), std::move(message)});
    }
    void absorb(const ValidationReport& inner, const std::string& context) {
        for (Issue v : inner.structural) {
            v.message = context + ": " + v.message;
            structural.push_back(std::move(v));
        }
        for (Issue v : inner.violations) {
            v.message = context + ": " + v.message;
            violations.push_back(std::move(v));
        }
    }
    void sort();
};

// Errors thrown by operations (not by validators, which report instead).
// `code` carries the stable error name from the module contracts, e.g.
// InvalidInput, NotAGroupoid, BoundaryMismatch, SplitMismatch.
struct OpError : std::runtime_error {
    std::string code;

    OpError(std::string code_, const std::string& message)
        : std::runtime_error(code_ + ": " + message), code(std::move(code_)) {}
};

// Default size caps keep the exhaustive O(m^3) checks at desk scale.
struct Caps {
    std::size_t max_objects = 16;
    std::size_t max_morphisms = 128;  // per morphism sort
    std::size_t max_squares = 4096;   // squares / 2-cells
    std::uint64_t iso_budget = 5'000'000;
};

std::string join_ids(const std::vector<Id>& ids, const std::string& sep = ",");

}  // namespace foldbox
