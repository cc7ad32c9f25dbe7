#pragma once

#include "analogy/domain.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace analogy {

enum class Severity { error, warning };

enum class DiagnosticCode {
    syntax,
    undeclared_predicate,
    arity_mismatch,
    duplicate_name,
    nonentity_argument,  // attribute over a non-entity, or function over a non-function term
    cycle,
};

std::string_view to_string(Severity severity);
/// Wire names: syntax, undeclared-predicate, arity-mismatch, duplicate-name,
/// attribute-nonentity-arg, cycle.
std::string_view to_string(DiagnosticCode code);

struct ParseDiagnostic {
    Severity severity = Severity::error;
    int line = 1;
    int column = 1;
    DiagnosticCode code = DiagnosticCode::syntax;
    std::string message;
};

/// `line:column: error [code] message`
std::string format(const ParseDiagnostic& diagnostic);

struct ParseResult {
    std::vector<Domain> domains;  // in source order
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const;
    const Domain* find(std::string_view name) const;
};

/// Parses a corpus of `domain NAME { ... }` blocks.
///
/// A block containing an error is dropped; parsing resumes at the next
/// block. Identifiers used as arguments without being listed under
/// `entities:` are taken to be entities.
ParseResult parse_corpus(std::string_view source);

/// Canonical text: entities in id order, declarations sorted by name,
/// facts in original order.
std::string serialize(const Domain& domain);
std::string serialize(std::span<const Domain> domains);

}  // namespace analogy
