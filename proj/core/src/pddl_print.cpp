#include <sstream>

#include "antplan/pddl/ast.hpp"

namespace antplan::pddl {

namespace {

void print_atom(std::ostream& os, const Atom& a) {
  os << '(' << a.predicate;
  for (const auto& arg : a.args) os << ' ' << arg;
  os << ')';
}

void print_typed_names(std::ostream& os, const std::vector<TypedName>& names,
                       const char* indent) {
  for (const auto& n : names) {
    os << indent << n.name << " - " << n.type << '\n';
  }
}

}  // namespace

std::string Atom::str() const {
  std::ostringstream os;
  print_atom(os, *this);
  return os.str();
}

std::string print_domain(const DomainAst& domain) {
  std::ostringstream os;
  os << "(define (domain " << domain.name << ")\n";
  if (!domain.requirements.empty()) {
    os << "  (:requirements";
    for (const auto& r : domain.requirements) os << ' ' << r;
    os << ")\n";
  }
  if (!domain.types.empty()) {
    os << "  (:types\n";
    print_typed_names(os, domain.types, "    ");
    os << "  )\n";
  }
  if (!domain.constants.empty()) {
    os << "  (:constants\n";
    print_typed_names(os, domain.constants, "    ");
    os << "  )\n";
  }
  if (!domain.predicates.empty()) {
    os << "  (:predicates\n";
    for (const auto& p : domain.predicates) {
      os << "    (" << p.name;
      for (const auto& param : p.params) {
        os << ' ' << param.name << " - " << param.type;
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  if (domain.has_total_cost) {
    os << "  (:functions (total-cost))\n";
  }
  for (const auto& a : domain.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    for (size_t i = 0; i < a.parameters.size(); ++i) {
      if (i) os << ' ';
      os << a.parameters[i].name << " - " << a.parameters[i].type;
    }
    os << ")\n    :precondition (and";
    for (const auto& atom : a.pre_pos) {
      os << ' ';
      print_atom(os, atom);
    }
    for (const auto& atom : a.pre_neg) {
      os << " (not ";
      print_atom(os, atom);
      os << ')';
    }
    os << ")\n    :effect (and";
    for (const auto& atom : a.add) {
      os << ' ';
      print_atom(os, atom);
    }
    for (const auto& atom : a.del) {
      os << " (not ";
      print_atom(os, atom);
      os << ')';
    }
    if (a.has_explicit_cost) {
      os << " (increase (total-cost) " << a.cost << ')';
    }
    os << ")\n  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_problem(const ProblemAst& problem) {
  std::ostringstream os;
  os << "(define (problem " << problem.name << ")\n";
  os << "  (:domain " << problem.domain_name << ")\n";
  if (!problem.objects.empty()) {
    os << "  (:objects\n";
    print_typed_names(os, problem.objects, "    ");
    os << "  )\n";
  }
  os << "  (:init\n";
  for (const auto& atom : problem.init) {
    os << "    ";
    print_atom(os, atom);
    os << '\n';
  }
  os << "    (= (total-cost) " << problem.init_total_cost << ")\n";
  os << "  )\n";
  os << "  (:goal (and";
  for (const auto& lit : problem.goal) {
    os << ' ';
    if (lit.negated) os << "(not ";
    print_atom(os, lit.atom);
    if (lit.negated) os << ')';
  }
  os << "))\n";
  if (!problem.hints.empty()) {
    os << "  (:hints\n";
    for (const auto& row : problem.hints) {
      os << "    (";
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) os << ' ';
        os << row[i];
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  if (problem.metric_min_total_cost) {
    os << "  (:metric minimize (total-cost))\n";
  }
  os << ")\n";
  return os.str();
}

}  // namespace antplan::pddl
