#pragma once

#include <string>
#include <unordered_map>

#include "antplan/pddl/ast.hpp"

namespace antplan::pddl {

// Type forest shared by the parser and the grounder. "object" is the root
// and always present.
class TypeTable {
 public:
  explicit TypeTable(const DomainAst& domain);

  bool declared(const std::string& type) const;
  // true when `type` equals `ancestor` or is a transitive child of it.
  bool is_subtype(const std::string& type, const std::string& ancestor) const;

 private:
  std::unordered_map<std::string, std::string> parent_;
};

}  // namespace antplan::pddl
