#pragma once

#include <string>
#include <vector>

namespace antplan::pddl {

// Parsed form of the STRIPS subset this project speaks: typed parameters,
// conjunctive positive/negative preconditions, add/delete effects, and a
// single (total-cost) metric. Identifiers are case-sensitive and preserved
// verbatim so an AST round-trips through the printer unchanged.

struct TypedName {
  std::string name;
  std::string type = "object";  // "object" is the implicit root type
  bool operator==(const TypedName&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<std::string> args;  // variables keep their leading '?'
  bool operator==(const Atom&) const = default;
  std::string str() const;
};

struct Literal {
  Atom atom;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;
  bool operator==(const PredicateDecl&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Atom> pre_pos;
  std::vector<Atom> pre_neg;
  std::vector<Atom> add;
  std::vector<Atom> del;
  // From (increase (total-cost) N). Actions without an increase default to
  // cost 1 so plan length stays correlated with plan cost.
  long long cost = 1;
  bool has_explicit_cost = false;
  bool operator==(const ActionSchema&) const = default;
};

struct DomainAst {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypedName> types;      // name + parent; roots have parent "object"
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  bool has_total_cost = false;       // (:functions (total-cost)) present
  std::vector<ActionSchema> actions;
  bool operator==(const DomainAst&) const = default;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;            // ground atoms, (= (total-cost) 0) stripped
  long long init_total_cost = 0;
  std::vector<Literal> goal;         // ground literals
  bool metric_min_total_cost = false;
  // Optional (:hints ...) block: free-form symbol rows that may order goals
  // or record scenario notes. Never consulted by grounding or validation.
  std::vector<std::vector<std::string>> hints;
  bool operator==(const ProblemAst&) const = default;
};

std::string print_domain(const DomainAst& domain);
std::string print_problem(const ProblemAst& problem);

}  // namespace antplan::pddl
