#include "antplan/pddl/ground.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "antplan/error.hpp"
#include "antplan/pddl/type_table.hpp"

namespace antplan::pddl {

namespace {

std::string ground_atom_name(const std::string& predicate,
                             const std::vector<std::string>& args) {
  std::string s = "(" + predicate;
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  s += ')';
  return s;
}

class AtomInterner {
 public:
  explicit AtomInterner(GroundTask& task) : task_(task) {}

  int intern(const std::string& name) {
    auto it = task_.atom_ids.find(name);
    if (it != task_.atom_ids.end()) return it->second;
    int id = static_cast<int>(task_.atom_names.size());
    task_.atom_names.push_back(name);
    task_.atom_ids.emplace(name, id);
    return id;
  }

 private:
  GroundTask& task_;
};

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

GroundTask ground(const DomainAst& domain, const ProblemAst& problem) {
  if (!problem.domain_name.empty() && problem.domain_name != domain.name) {
    throw Error(ErrorCode::GroundingError,
                "problem '" + problem.name + "' targets domain '" +
                    problem.domain_name + "', not '" + domain.name + "'");
  }

  TypeTable types(domain);

  // object name -> type, domain constants first, then problem objects.
  std::vector<TypedName> universe = domain.constants;
  universe.insert(universe.end(), problem.objects.begin(), problem.objects.end());
  std::unordered_map<std::string, std::string> object_type;
  for (const auto& o : universe) {
    if (!object_type.emplace(o.name, o.type).second) {
      throw Error(ErrorCode::GroundingError,
                  "object '" + o.name + "' declared twice");
    }
  }

  // Statics: predicates that never occur in any add or delete list.
  std::unordered_set<std::string> fluent_preds;
  for (const auto& a : domain.actions) {
    for (const auto& atom : a.add) fluent_preds.insert(atom.predicate);
    for (const auto& atom : a.del) fluent_preds.insert(atom.predicate);
  }
  auto is_static = [&](const std::string& pred) { return !fluent_preds.count(pred); };

  // Ground truth for statics comes straight from :init.
  std::unordered_set<std::string> static_init;
  for (const auto& atom : problem.init) {
    if (is_static(atom.predicate)) {
      static_init.insert(ground_atom_name(atom.predicate, atom.args));
    }
  }

  GroundTask task;
  AtomInterner interner(task);

  // Init and goal atoms enter the table first so tiny tasks stay compact.
  std::vector<int> init_ids;
  for (const auto& atom : problem.init) {
    init_ids.push_back(interner.intern(ground_atom_name(atom.predicate, atom.args)));
  }
  for (const auto& lit : problem.goal) {
    for (const auto& arg : lit.atom.args) {
      if (!object_type.count(arg)) {
        throw Error(ErrorCode::GoalUsesUnknownObject,
                    "goal atom " + lit.atom.str() + " references unknown object '" +
                        arg + "'");
      }
    }
    int id = interner.intern(ground_atom_name(lit.atom.predicate, lit.atom.args));
    (lit.negated ? task.goal_neg : task.goal_pos).push_back(id);
  }

  // Candidate objects per schema parameter, in declaration order so the
  // enumeration (and therefore the atom table) is deterministic.
  for (size_t si = 0; si < domain.actions.size(); ++si) {
    const ActionSchema& schema = domain.actions[si];
    std::vector<std::vector<const TypedName*>> candidates(schema.parameters.size());
    bool impossible = false;
    for (size_t p = 0; p < schema.parameters.size(); ++p) {
      for (const auto& obj : universe) {
        if (types.is_subtype(obj.type, schema.parameters[p].type)) {
          candidates[p].push_back(&obj);
        }
      }
      if (candidates[p].empty()) impossible = true;
    }
    if (impossible) continue;

    std::unordered_map<std::string, size_t> param_index;
    for (size_t p = 0; p < schema.parameters.size(); ++p) {
      param_index[schema.parameters[p].name] = p;
    }
    auto resolve = [&](const std::string& arg,
                       const std::vector<const TypedName*>& binding) -> const std::string& {
      if (!arg.empty() && arg[0] == '?') return binding[param_index.at(arg)]->name;
      return arg;
    };

    const size_t arity = schema.parameters.size();
    std::vector<const TypedName*> binding(arity, nullptr);
    std::vector<size_t> cursor(arity, 0);
    bool exhausted = false;
    while (!exhausted) {
      for (size_t p = 0; p < arity; ++p) binding[p] = candidates[p][cursor[p]];

      // One concrete substitution: evaluate statics, then intern.
      bool pruned = false;
      for (const auto& atom : schema.pre_pos) {
        if (!is_static(atom.predicate)) continue;
        std::vector<std::string> args;
        for (const auto& a : atom.args) args.push_back(resolve(a, binding));
        if (!static_init.count(ground_atom_name(atom.predicate, args))) {
          pruned = true;
          break;
        }
      }
      if (!pruned) {
        for (const auto& atom : schema.pre_neg) {
          if (!is_static(atom.predicate)) continue;
          std::vector<std::string> args;
          for (const auto& a : atom.args) args.push_back(resolve(a, binding));
          if (static_init.count(ground_atom_name(atom.predicate, args))) {
            pruned = true;
            break;
          }
        }
      }
      if (!pruned) {
        GroundAction ga;
        ga.schema_index = static_cast<int>(si);
        ga.cost = schema.cost;
        std::string name = "(" + schema.name;
        for (const auto* b : binding) {
          name += ' ';
          name += b->name;
        }
        name += ')';
        ga.name = std::move(name);

        auto intern_atoms = [&](const std::vector<Atom>& atoms, std::vector<int>& out) {
          for (const auto& atom : atoms) {
            std::vector<std::string> args;
            for (const auto& a : atom.args) args.push_back(resolve(a, binding));
            out.push_back(interner.intern(ground_atom_name(atom.predicate, args)));
          }
        };
        intern_atoms(schema.pre_pos, ga.pre_pos);
        intern_atoms(schema.pre_neg, ga.pre_neg);
        intern_atoms(schema.add, ga.add);
        intern_atoms(schema.del, ga.del);
        sort_unique(ga.pre_pos);
        sort_unique(ga.pre_neg);
        sort_unique(ga.add);
        sort_unique(ga.del);

        // STRIPS sanity: an instance adding and deleting the same atom is
        // a broken schema, not a resolvable conflict.
        std::vector<int> overlap;
        std::set_intersection(ga.add.begin(), ga.add.end(), ga.del.begin(),
                              ga.del.end(), std::back_inserter(overlap));
        if (!overlap.empty()) {
          throw Error(ErrorCode::GroundingError,
                      "action " + ga.name + " both adds and deletes " +
                          task.atom_names[overlap.front()]);
        }
        task.actions.push_back(std::move(ga));
      }

      // Advance the odometer (last parameter varies fastest).
      exhausted = true;
      for (size_t p = arity; p-- > 0;) {
        if (++cursor[p] < candidates[p].size()) {
          exhausted = false;
          break;
        }
        cursor[p] = 0;
      }
    }
  }

  task.init = AtomSet(task.num_atoms());
  for (int id : init_ids) task.init.set(id);
  task.init_cost = problem.init_total_cost;
  sort_unique(task.goal_pos);
  sort_unique(task.goal_neg);
  return task;
}

bool applicable(const State& state, const GroundAction& action) {
  return state.atoms.contains_all(action.pre_pos) &&
         !state.atoms.intersects(action.pre_neg);
}

State apply(const State& state, const GroundAction& action) {
  if (!applicable(state, action)) {
    throw Error(ErrorCode::NotApplicable,
                "action " + action.name + " is not applicable");
  }
  State next = state;
  for (int id : action.del) next.atoms.reset(id);
  for (int id : action.add) next.atoms.set(id);
  next.cost += action.cost;
  return next;
}

ValidationReport validate(const GroundTask& task, const Plan& plan) {
  ValidationReport report;
  State state = task.initial_state();
  for (size_t step = 0; step < plan.actions.size(); ++step) {
    int idx = plan.actions[step];
    if (idx < 0 || idx >= static_cast<int>(task.actions.size())) {
      report.failing_step = static_cast<int>(step);
      report.reason = "step " + std::to_string(step) + " references unknown action";
      return report;
    }
    const GroundAction& action = task.actions[idx];
    if (!applicable(state, action)) {
      report.failing_step = static_cast<int>(step);
      report.reason = "precondition of " + action.name + " violated at step " +
                      std::to_string(step);
      return report;
    }
    state = apply(state, action);
  }
  report.total_cost = state.cost - task.init_cost;
  report.goal_satisfied = task.goal_satisfied(state);
  if (!report.goal_satisfied) {
    report.reason = "plan executes but the goal is not satisfied";
    return report;
  }
  if (plan.total_cost != report.total_cost) {
    report.reason = "declared cost " + std::to_string(plan.total_cost) +
                    " does not match replayed cost " +
                    std::to_string(report.total_cost);
    return report;
  }
  report.valid = true;
  return report;
}

std::string write_plan(const GroundTask& task, const Plan& plan) {
  std::ostringstream os;
  for (int idx : plan.actions) {
    os << task.actions[idx].name << '\n';
  }
  os << "; cost = " << plan.total_cost << '\n';
  return os.str();
}

std::vector<Atom> state_atoms(const GroundTask& task, const State& state) {
  std::vector<Atom> atoms;
  for (int i = 0; i < task.num_atoms(); ++i) {
    if (!state.atoms.test(i)) continue;
    const std::string& name = task.atom_names[i];
    Atom atom;
    size_t pos = 1;  // skip '('
    size_t space = name.find(' ', pos);
    if (space == std::string::npos) {
      atom.predicate = name.substr(pos, name.size() - pos - 1);
    } else {
      atom.predicate = name.substr(pos, space - pos);
      pos = space + 1;
      while (pos < name.size() - 1) {
        size_t next = name.find(' ', pos);
        if (next == std::string::npos) next = name.size() - 1;
        atom.args.push_back(name.substr(pos, next - pos));
        pos = next + 1;
      }
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

Plan parse_plan(const std::string& text, const GroundTask& task) {
  std::unordered_map<std::string, int> by_name;
  for (size_t i = 0; i < task.actions.size(); ++i) {
    by_name[task.actions[i].name] = static_cast<int>(i);
  }
  Plan plan;
  std::istringstream is(text);
  std::string line;
  bool cost_seen = false;
  while (std::getline(is, line)) {
    // trim
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line[0] == ';') {
      size_t eq = line.find('=');
      if (line.find("cost") != std::string::npos && eq != std::string::npos) {
        plan.total_cost = std::stoll(line.substr(eq + 1));
        cost_seen = true;
      }
      continue;
    }
    auto it = by_name.find(line);
    if (it == by_name.end()) {
      throw Error(ErrorCode::ParseError,
                  "plan step '" + line + "' is not a ground action of this task");
    }
    plan.actions.push_back(it->second);
  }
  if (!cost_seen) {
    for (int idx : plan.actions) plan.total_cost += task.actions[idx].cost;
  }
  return plan;
}

}  // namespace antplan::pddl
