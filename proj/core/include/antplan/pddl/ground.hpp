#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "antplan/pddl/ast.hpp"

namespace antplan::pddl {

// Dense bitset over the ground-atom table. Value semantics: forking a state
// during search is a plain copy of a few machine words.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int num_atoms) : size_(num_atoms), words_((num_atoms + 63) / 64, 0) {}

  void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  bool contains_all(const std::vector<int>& ids) const {
    for (int i : ids) {
      if (!test(i)) return false;
    }
    return true;
  }
  bool intersects(const std::vector<int>& ids) const {
    for (int i : ids) {
      if (test(i)) return true;
    }
    return false;
  }

  int size() const { return size_; }
  bool operator==(const AtomSet&) const = default;

  size_t hash() const {
    // FNV-1a over the words
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }

 private:
  int size_ = 0;
  std::vector<uint64_t> words_;
};

struct State {
  AtomSet atoms;
  long long cost = 0;
};

struct GroundAction {
  std::string name;  // "(schema arg1 arg2)"
  int schema_index = -1;
  std::vector<int> pre_pos;
  std::vector<int> pre_neg;
  std::vector<int> add;
  std::vector<int> del;
  long long cost = 1;
};

struct GroundTask {
  // atom id <-> printable name; ids are dense and stable for a fixed input.
  std::vector<std::string> atom_names;
  std::unordered_map<std::string, int> atom_ids;
  std::vector<GroundAction> actions;
  AtomSet init;
  long long init_cost = 0;
  std::vector<int> goal_pos;
  std::vector<int> goal_neg;

  int num_atoms() const { return static_cast<int>(atom_names.size()); }
  State initial_state() const { return State{init, init_cost}; }
  bool goal_satisfied(const State& s) const {
    return s.atoms.contains_all(goal_pos) && !s.atoms.intersects(goal_neg);
  }
};

// Enumerates type-consistent substitutions of every action schema, prunes
// ground actions whose static preconditions (predicates no effect ever
// touches) are contradicted by the initial state, and interns every
// remaining atom into a dense table. Deterministic: identical input ASTs
// give identical tables.
GroundTask ground(const DomainAst& domain, const ProblemAst& problem);

bool applicable(const State& state, const GroundAction& action);
// Delete-then-add STRIPS step; throws ErrorCode::NotApplicable when the
// precondition does not hold.
State apply(const State& state, const GroundAction& action);

struct Plan {
  std::vector<int> actions;  // indices into GroundTask::actions
  long long total_cost = 0;
};

struct ValidationReport {
  bool valid = false;
  bool goal_satisfied = false;
  int failing_step = -1;  // -1 when no step failed
  std::string reason;
  long long total_cost = 0;
};

// Independent replay of a plan from the initial state. Failures land in the
// report, never in exceptions.
ValidationReport validate(const GroundTask& task, const Plan& plan);

// Plan file format: one "(action args...)" line per step followed by a
// trailing "; cost = N" comment.
std::string write_plan(const GroundTask& task, const Plan& plan);
Plan parse_plan(const std::string& text, const GroundTask& task);

// The atoms true in `state`, decoded back to AST form (e.g. to seed a new
// problem's :init from a simulation snapshot).
std::vector<Atom> state_atoms(const GroundTask& task, const State& state);

}  // namespace antplan::pddl
