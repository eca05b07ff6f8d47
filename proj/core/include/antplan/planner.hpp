#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "antplan/pddl/ground.hpp"

namespace antplan {

enum class HeuristicKind { h_add, h_ff, blind };
enum class SearchStrategy { greedy_best_first_then_improve, weighted_astar };

struct SearchConfig {
  std::chrono::milliseconds deadline{30000};
  HeuristicKind heuristic = HeuristicKind::h_add;
  SearchStrategy strategy = SearchStrategy::greedy_best_first_then_improve;
  std::vector<double> weights = {5.0, 3.0, 2.0, 1.0};  // weighted_astar schedule
  uint64_t seed = 0;  // tie-break shuffle seed
};

enum class PlanStatus { solved, unsolvable, deadline_no_plan };

struct PlanResult {
  PlanStatus status = PlanStatus::deadline_no_plan;
  std::optional<pddl::Plan> best_plan;
  bool proven_optimal = false;
  long long expanded = 0;
  long long generated = 0;
  std::chrono::milliseconds elapsed{0};
};

// Anytime satisficing search. Finds a first incumbent fast (greedy
// best-first on the configured heuristic), then restarts with the cost
// bound incumbent-1 (pruning on g + h_max, which is admissible) until the
// deadline hits or a bounded restart exhausts — the latter proves the
// incumbent optimal. Absence of a plan is a result, not an error.
PlanResult plan(const pddl::GroundTask& task, const SearchConfig& cfg);

// Uniform-cost search; the returned cost is provably minimal. Throws
// ErrorCode::BudgetExceeded once more than node_budget states are expanded.
PlanResult optimal_oracle(const pddl::GroundTask& task, long long node_budget);

// Delete-relaxation estimates, reusable across states of one task.
// Negative preconditions and negative goals are ignored by the relaxation.
class RelaxationEvaluator {
 public:
  static constexpr long long kInfinity = -1;

  explicit RelaxationEvaluator(const pddl::GroundTask& task);

  // Additive cost estimate; kInfinity means the goal is unreachable from
  // `state` even under the relaxation (a sound dead-end test).
  long long h_add(const pddl::State& state);
  // Cost of an extracted relaxed plan (each helpful action counted once).
  long long h_ff(const pddl::State& state);
  // Admissible max-combination estimate, used for bound pruning.
  long long h_max(const pddl::State& state);

 private:
  enum class Combine { sum, max };
  long long explore(const pddl::State& state, Combine combine, bool extract_plan);

  const pddl::GroundTask& task_;
  // atom id -> actions with that atom as a positive precondition
  std::vector<std::vector<int>> consumers_;
  std::vector<int> no_precondition_actions_;
  // per-exploration scratch
  std::vector<long long> atom_cost_;
  std::vector<int> unsatisfied_;
  std::vector<int> best_supporter_;
  std::vector<char> marked_atom_;
  std::vector<char> marked_action_;
};

}  // namespace antplan
