#pragma once

#include <string>

#include "antplan/pddl/ast.hpp"

namespace antplan::pddl {

// Hand-written recursive descent over an s-expression lexer. Diagnostics
// carry 1-based line:column positions. Constructs outside the supported
// subset (disjunction, quantifiers, conditional effects, durative actions,
// ...) are rejected with ErrorCode::UnsupportedFeature naming the construct.
DomainAst parse_domain(const std::string& text);

// Parses a problem and type-checks it against its domain: objects must have
// declared types, init atoms and goal literals must be well-typed ground
// instances of declared predicates.
ProblemAst parse_problem(const std::string& text, const DomainAst& domain);

}  // namespace antplan::pddl
