#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "antplan/pddl/ast.hpp"
#include "antplan/task_model.hpp"

namespace antplan {

// goal_key -> ground goal literals, plus which action schemas cannot be
// undone by any action sequence (consulted by the interrupt transcript, not
// by planning semantics).
class TaskGoalMap {
 public:
  static TaskGoalMap load(const std::string& path);
  static TaskGoalMap parse(const std::string& json_text);

  const std::vector<pddl::Literal>& goal_for(const std::string& goal_key) const;
  bool has_key(const std::string& goal_key) const { return goals_.count(goal_key) > 0; }
  bool is_irreversible(const std::string& action_schema) const;
  const std::vector<std::string>& irreversible_actions() const { return irreversible_; }
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, std::vector<pddl::Literal>> goals_;
  std::vector<std::string> irreversible_;
};

struct ScenarioSpec {
  // Shuffles the loose-item placement; 0 keeps the canonical layout.
  uint64_t seed = 0;
  // When set, the emitted problem's :init is exactly these atoms — the way
  // the harness replans from a simulated state snapshot.
  std::optional<std::vector<pddl::Atom>> init_override;
};

// The bundled world: household/domain.pddl + catalog.json + goalmap.json.
struct HouseholdWorld {
  pddl::DomainAst domain;
  TaskCatalog catalog;
  TaskGoalMap goal_map;
};

HouseholdWorld load_household(const std::string& dir);

// Union of the goal literal sets of the given tasks. A literal demanded
// both positively and negatively raises GoalConflict naming the two tasks.
std::vector<pddl::Literal> compose_goal(const std::vector<std::string>& tasks,
                                        const TaskCatalog& catalog,
                                        const TaskGoalMap& map);

// Emits a complete problem file over the household domain: the scenario's
// init (canonical layout, seed-shuffled loose items, or a snapshot
// override), the composed goal, optional (:hints ...) rows, and the
// (:metric minimize (total-cost)) line. Byte-identical output for equal
// inputs.
std::string synthesize_problem(const ScenarioSpec& scenario,
                               const std::vector<pddl::Literal>& goal,
                               const std::string& problem_name = "household_scenario",
                               const std::vector<std::vector<std::string>>& hints = {});

}  // namespace antplan
