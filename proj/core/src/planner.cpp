#include "antplan/planner.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_map>

#include "antplan/error.hpp"

namespace antplan {

using pddl::AtomSet;
using pddl::GroundAction;
using pddl::GroundTask;
using pddl::Plan;
using pddl::State;

// ---------------------------------------------------------------------------
// Relaxation evaluator
// ---------------------------------------------------------------------------

RelaxationEvaluator::RelaxationEvaluator(const GroundTask& task)
    : task_(task),
      consumers_(task.num_atoms()),
      atom_cost_(task.num_atoms()),
      unsatisfied_(task.actions.size()),
      best_supporter_(task.num_atoms()),
      marked_atom_(task.num_atoms()),
      marked_action_(task.actions.size()) {
  for (size_t i = 0; i < task_.actions.size(); ++i) {
    const GroundAction& a = task_.actions[i];
    if (a.pre_pos.empty()) {
      no_precondition_actions_.push_back(static_cast<int>(i));
    }
    for (int atom : a.pre_pos) consumers_[atom].push_back(static_cast<int>(i));
  }
}

long long RelaxationEvaluator::explore(const State& state, Combine combine,
                                       bool extract_plan) {
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::fill(atom_cost_.begin(), atom_cost_.end(), INF);
  std::fill(best_supporter_.begin(), best_supporter_.end(), -1);
  for (size_t i = 0; i < task_.actions.size(); ++i) {
    unsatisfied_[i] = static_cast<int>(task_.actions[i].pre_pos.size());
  }

  using Entry = std::pair<long long, int>;  // (cost, atom)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  for (int i = 0; i < task_.num_atoms(); ++i) {
    if (state.atoms.test(i)) {
      atom_cost_[i] = 0;
      open.emplace(0, i);
    }
  }

  // `action_base[i]`: combined precondition cost seen so far (sum or max).
  std::vector<long long> action_base(task_.actions.size(), 0);
  auto fire = [&](int ai) {
    const GroundAction& a = task_.actions[ai];
    long long through = action_base[ai] + a.cost;
    for (int added : a.add) {
      if (through < atom_cost_[added]) {
        atom_cost_[added] = through;
        best_supporter_[added] = ai;
        open.emplace(through, added);
      }
    }
  };
  for (int ai : no_precondition_actions_) fire(ai);

  while (!open.empty()) {
    auto [cost, atom] = open.top();
    open.pop();
    if (cost > atom_cost_[atom]) continue;  // stale entry
    for (int ai : consumers_[atom]) {
      if (combine == Combine::sum) {
        action_base[ai] += cost;
      } else {
        action_base[ai] = std::max(action_base[ai], cost);
      }
      if (--unsatisfied_[ai] == 0) fire(ai);
    }
  }

  long long total = 0;
  for (int g : task_.goal_pos) {
    if (atom_cost_[g] >= INF) return kInfinity;
    if (combine == Combine::sum) {
      total += atom_cost_[g];
    } else {
      total = std::max(total, atom_cost_[g]);
    }
  }
  if (!extract_plan) return total;

  // FF extraction: chase best supporters from the goal, count each action once.
  std::fill(marked_atom_.begin(), marked_atom_.end(), 0);
  std::fill(marked_action_.begin(), marked_action_.end(), 0);
  long long plan_cost = 0;
  std::vector<int> stack(task_.goal_pos.begin(), task_.goal_pos.end());
  while (!stack.empty()) {
    int atom = stack.back();
    stack.pop_back();
    if (marked_atom_[atom]) continue;
    marked_atom_[atom] = 1;
    int ai = best_supporter_[atom];
    if (ai < 0 || marked_action_[ai]) continue;  // in-state atom or shared action
    marked_action_[ai] = 1;
    plan_cost += task_.actions[ai].cost;
    for (int pre : task_.actions[ai].pre_pos) {
      if (!marked_atom_[pre]) stack.push_back(pre);
    }
  }
  return plan_cost;
}

long long RelaxationEvaluator::h_add(const State& state) {
  return explore(state, Combine::sum, false);
}

long long RelaxationEvaluator::h_ff(const State& state) {
  return explore(state, Combine::sum, true);
}

long long RelaxationEvaluator::h_max(const State& state) {
  return explore(state, Combine::max, false);
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace {

struct Deadline {
  std::chrono::steady_clock::time_point end;
  bool expired() const { return std::chrono::steady_clock::now() >= end; }
};

struct SearchNode {
  State state;
  int parent = -1;
  int action = -1;
  long long g = 0;
};

struct OpenEntry {
  double f = 0;
  long long h = 0;
  long long g = 0;
  uint64_t tiebreak = 0;  // seeded shuffle among equal (f, h, g) keys
  uint64_t order = 0;     // FIFO among fully equal keys
  int node = -1;
};

struct OpenCompare {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    if (a.g != b.g) return a.g > b.g;
    if (a.tiebreak != b.tiebreak) return a.tiebreak > b.tiebreak;
    return a.order > b.order;
  }
};

struct StateKeyHash {
  size_t operator()(const AtomSet& s) const { return s.hash(); }
};

enum class RunOutcome { found, exhausted, timed_out };

struct RunResult {
  RunOutcome outcome = RunOutcome::exhausted;
  Plan plan;
  long long expanded = 0;
  long long generated = 0;
};

// Heuristic values depend only on the atom set, so they are shared across
// the improvement restarts of one plan() call.
struct HeuristicCache {
  explicit HeuristicCache(const GroundTask& task) : eval(task) {}

  long long guidance(HeuristicKind kind, const State& s) {
    if (kind == HeuristicKind::blind) return 0;
    auto [it, fresh] = guidance_memo.try_emplace(s.atoms, 0);
    if (fresh) {
      it->second = kind == HeuristicKind::h_add ? eval.h_add(s) : eval.h_ff(s);
    }
    return it->second;
  }

  long long admissible(const State& s) {
    auto [it, fresh] = admissible_memo.try_emplace(s.atoms, 0);
    if (fresh) it->second = eval.h_max(s);
    return it->second;
  }

  RelaxationEvaluator eval;
  std::unordered_map<AtomSet, long long, StateKeyHash> guidance_memo;
  std::unordered_map<AtomSet, long long, StateKeyHash> admissible_memo;
};

Plan extract_plan(const std::vector<SearchNode>& nodes, int goal_node) {
  Plan plan;
  for (int n = goal_node; nodes[n].parent >= 0; n = nodes[n].parent) {
    plan.actions.push_back(nodes[n].action);
  }
  std::reverse(plan.actions.begin(), plan.actions.end());
  plan.total_cost = nodes[goal_node].g;
  return plan;
}

// One best-first run. weight < 0 selects pure greedy ordering (f = h);
// weight >= 0 gives f = g + weight * h. When `bound` is set, nodes whose
// admissible estimate g + h_max exceeds it are pruned, so exhausting the
// open list proves no plan of cost <= bound exists.
RunResult run_search(const GroundTask& task, HeuristicCache& cache,
                     HeuristicKind kind, double weight,
                     std::optional<long long> bound, const Deadline& deadline,
                     uint64_t seed) {
  RunResult result;
  std::mt19937_64 rng(seed);

  auto estimate = [&](const State& s) { return cache.guidance(kind, s); };

  std::vector<SearchNode> nodes;
  std::unordered_map<AtomSet, long long, StateKeyHash> best_g;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCompare> open;
  uint64_t order = 0;

  State init = task.initial_state();
  init.cost = 0;  // g is tracked relative to the search root
  long long h0 = estimate(init);
  if (h0 == RelaxationEvaluator::kInfinity) {
    result.outcome = RunOutcome::exhausted;
    return result;
  }
  if (bound && cache.admissible(init) > *bound) {
    result.outcome = RunOutcome::exhausted;
    return result;
  }
  nodes.push_back({init, -1, -1, 0});
  best_g[init.atoms] = 0;
  open.push({weight < 0 ? static_cast<double>(h0) : weight * static_cast<double>(h0),
             h0, 0, rng(), order++, 0});
  ++result.generated;

  while (!open.empty()) {
    if (deadline.expired()) {
      result.outcome = RunOutcome::timed_out;
      return result;
    }
    OpenEntry entry = open.top();
    open.pop();
    SearchNode node = nodes[entry.node];  // copy: nodes may reallocate below
    if (node.g != entry.g) continue;      // superseded by a cheaper path
    auto bit = best_g.find(node.state.atoms);
    if (bit != best_g.end() && bit->second < node.g) continue;

    if (task.goal_satisfied(node.state)) {
      if (!bound || node.g <= *bound) {
        result.outcome = RunOutcome::found;
        result.plan = extract_plan(nodes, entry.node);
        return result;
      }
      continue;
    }

    ++result.expanded;
    for (size_t ai = 0; ai < task.actions.size(); ++ai) {
      const GroundAction& action = task.actions[ai];
      if (!pddl::applicable(node.state, action)) continue;
      State succ = pddl::apply(node.state, action);
      long long g = node.g + action.cost;
      if (bound && g > *bound) continue;

      auto it = best_g.find(succ.atoms);
      if (it != best_g.end() && it->second <= g) continue;

      long long h = estimate(succ);
      if (h == RelaxationEvaluator::kInfinity) continue;
      if (bound && g + cache.admissible(succ) > *bound) continue;

      best_g[succ.atoms] = g;
      int node_id = static_cast<int>(nodes.size());
      nodes.push_back({std::move(succ), entry.node, static_cast<int>(ai), g});
      double f = weight < 0 ? static_cast<double>(h)
                            : static_cast<double>(g) + weight * static_cast<double>(h);
      open.push({f, h, g, rng(), order++, node_id});
      ++result.generated;
      if ((result.generated & 0x3f) == 0 && deadline.expired()) {
        result.outcome = RunOutcome::timed_out;
        return result;
      }
    }
  }
  result.outcome = RunOutcome::exhausted;
  return result;
}

}  // namespace

PlanResult plan(const GroundTask& task, const SearchConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Deadline deadline{start + cfg.deadline};
  HeuristicCache cache(task);
  PlanResult result;

  auto finish = [&](PlanStatus status) {
    result.status = status;
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
  };

  // Weight schedule: the first entry finds the incumbent, later entries
  // drive the improvement restarts. Pure greedy is weight -1 internally.
  std::vector<double> schedule;
  if (cfg.strategy == SearchStrategy::greedy_best_first_then_improve) {
    schedule.push_back(-1.0);
  } else {
    for (double w : cfg.weights) schedule.push_back(std::max(1.0, w));
    if (schedule.empty()) schedule.push_back(1.0);
  }

  std::optional<long long> bound;
  size_t round = 0;
  while (!deadline.expired()) {
    double weight = schedule[std::min(round, schedule.size() - 1)];
    RunResult run = run_search(task, cache, cfg.heuristic, weight, bound,
                               deadline, cfg.seed + round);
    result.expanded += run.expanded;
    result.generated += run.generated;

    if (run.outcome == RunOutcome::timed_out) {
      break;
    }
    if (run.outcome == RunOutcome::exhausted) {
      if (!result.best_plan) {
        // No bound was active, so the whole reachable space is goal-free.
        return finish(PlanStatus::unsolvable);
      }
      result.proven_optimal = true;
      return finish(PlanStatus::solved);
    }
    // Found an incumbent strictly better than any previous one.
    result.best_plan = run.plan;
    if (run.plan.total_cost == 0) {
      result.proven_optimal = true;
      return finish(PlanStatus::solved);
    }
    bound = run.plan.total_cost - 1;
    ++round;
  }
  return finish(result.best_plan ? PlanStatus::solved : PlanStatus::deadline_no_plan);
}

PlanResult optimal_oracle(const GroundTask& task, long long node_budget) {
  auto start = std::chrono::steady_clock::now();
  PlanResult result;

  std::vector<SearchNode> nodes;
  std::unordered_map<AtomSet, long long, StateKeyHash> best_g;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCompare> open;
  uint64_t order = 0;

  State init = task.initial_state();
  init.cost = 0;
  nodes.push_back({init, -1, -1, 0});
  best_g[init.atoms] = 0;
  open.push({0.0, 0, 0, 0, order++, 0});
  ++result.generated;

  while (!open.empty()) {
    OpenEntry entry = open.top();
    open.pop();
    SearchNode node = nodes[entry.node];
    if (node.g != entry.g) continue;
    auto bit = best_g.find(node.state.atoms);
    if (bit != best_g.end() && bit->second < node.g) continue;

    if (task.goal_satisfied(node.state)) {
      result.status = PlanStatus::solved;
      result.best_plan = extract_plan(nodes, entry.node);
      result.proven_optimal = true;
      result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      return result;
    }

    if (++result.expanded > node_budget) {
      throw Error(ErrorCode::BudgetExceeded,
                  "uniform-cost search exceeded " + std::to_string(node_budget) +
                      " expansions");
    }
    for (size_t ai = 0; ai < task.actions.size(); ++ai) {
      const GroundAction& action = task.actions[ai];
      if (!pddl::applicable(node.state, action)) continue;
      State succ = pddl::apply(node.state, action);
      long long g = node.g + action.cost;
      auto it = best_g.find(succ.atoms);
      if (it != best_g.end() && it->second <= g) continue;
      best_g[succ.atoms] = g;
      int node_id = static_cast<int>(nodes.size());
      nodes.push_back({std::move(succ), entry.node, static_cast<int>(ai), g});
      open.push({static_cast<double>(g), 0, g, 0, order++, node_id});
      ++result.generated;
    }
  }

  result.status = PlanStatus::unsolvable;
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace antplan
