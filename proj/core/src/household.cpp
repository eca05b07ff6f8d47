#include "antplan/household.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "antplan/error.hpp"
#include "antplan/pddl/parser.hpp"

namespace antplan {

using nlohmann::json;
using pddl::Atom;
using pddl::Literal;
using pddl::TypedName;

TaskGoalMap TaskGoalMap::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid goal map JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("goals") || !doc["goals"].is_object()) {
    throw Error(ErrorCode::ParseError, "goal map must be {\"goals\": {...}, ...}");
  }
  TaskGoalMap map;
  for (const auto& [key, literals] : doc["goals"].items()) {
    if (!literals.is_array() || literals.empty()) {
      throw Error(ErrorCode::ParseError,
                  "goal '" + key + "' must be a non-empty literal array");
    }
    std::vector<Literal> parsed;
    for (const auto& lit : literals) {
      if (!lit.is_object() || !lit.contains("predicate") || !lit.contains("args")) {
        throw Error(ErrorCode::ParseError,
                    "goal '" + key + "': literals are {predicate, args[, negated]}");
      }
      Literal l;
      l.atom.predicate = lit["predicate"].get<std::string>();
      for (const auto& a : lit["args"]) l.atom.args.push_back(a.get<std::string>());
      l.negated = lit.value("negated", false);
      parsed.push_back(std::move(l));
    }
    map.goals_.emplace(key, std::move(parsed));
  }
  if (doc.contains("irreversible_actions")) {
    for (const auto& a : doc["irreversible_actions"]) {
      map.irreversible_.push_back(a.get<std::string>());
    }
  }
  return map;
}

TaskGoalMap TaskGoalMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open goal map '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::vector<Literal>& TaskGoalMap::goal_for(const std::string& goal_key) const {
  auto it = goals_.find(goal_key);
  if (it == goals_.end()) {
    throw Error(ErrorCode::UnknownGoalKey, "no goal entry for key '" + goal_key + "'");
  }
  return it->second;
}

bool TaskGoalMap::is_irreversible(const std::string& action_schema) const {
  return std::find(irreversible_.begin(), irreversible_.end(), action_schema) !=
         irreversible_.end();
}

std::vector<std::string> TaskGoalMap::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : goals_) out.push_back(key);
  return out;
}

HouseholdWorld load_household(const std::string& dir) {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  HouseholdWorld world;
  world.domain = pddl::parse_domain(slurp(dir + "/domain.pddl"));
  world.catalog = load_catalog(dir + "/catalog.json");
  world.goal_map = TaskGoalMap::load(dir + "/goalmap.json");
  return world;
}

std::vector<Literal> compose_goal(const std::vector<std::string>& tasks,
                                  const TaskCatalog& catalog,
                                  const TaskGoalMap& map) {
  std::vector<Literal> out;
  // literal text -> (negated, first task demanding it)
  std::unordered_map<std::string, std::pair<bool, std::string>> seen;
  for (const auto& task_id : tasks) {
    const Task& task = catalog.task(task_id);
    for (const Literal& lit : map.goal_for(task.goal_key)) {
      std::string atom_text = lit.atom.str();
      auto it = seen.find(atom_text);
      if (it == seen.end()) {
        seen.emplace(atom_text, std::make_pair(lit.negated, task_id));
        out.push_back(lit);
      } else if (it->second.first != lit.negated) {
        throw Error(ErrorCode::GoalConflict,
                    "tasks '" + it->second.second + "' and '" + task_id +
                        "' demand opposite values of " + atom_text);
      }
      // identical literal from two tasks: union keeps one copy
    }
  }
  return out;
}

namespace {

struct RoomLayout {
  const char* receptacle;
  const char* room;
  bool openable;
};

constexpr const char* kRooms[] = {"kitchen", "living_room", "bedroom", "bathroom",
                                  "garden"};

// 19 receptacles; the non-openable ones start (and stay) accessible.
constexpr RoomLayout kReceptacles[] = {
    {"fridge", "kitchen", true},        {"pantry", "kitchen", true},
    {"cupboard", "kitchen", true},      {"oven", "kitchen", true},
    {"stove", "kitchen", false},        {"dishwasher", "kitchen", true},
    {"trash_bin", "kitchen", false},    {"dining_table", "living_room", false},
    {"bookshelf", "living_room", false},{"desk", "living_room", false},
    {"cabinet", "living_room", true},   {"wardrobe", "bedroom", true},
    {"dresser", "bedroom", true},       {"bed", "bedroom", false},
    {"nightstand", "bedroom", true},    {"washer", "bathroom", true},
    {"dryer", "bathroom", true},        {"laundry_basket", "bathroom", false},
    {"shed", "garden", true},
};

constexpr std::pair<const char*, const char*> kAdjacency[] = {
    {"kitchen", "living_room"}, {"living_room", "bedroom"},
    {"living_room", "bathroom"}, {"bathroom", "garden"},
    {"kitchen", "garden"},
};

// Problem objects by type (domain constants — robot, hands, the six tools
// and the knife — are not re-declared here).
const std::vector<std::pair<const char*, std::vector<const char*>>> kObjects = {
    {"location", {"kitchen", "living_room", "bedroom", "bathroom", "garden"}},
    {"receptacle",
     {"fridge", "pantry", "cupboard", "oven", "stove", "dishwasher", "trash_bin",
      "dining_table", "bookshelf", "desk", "cabinet", "wardrobe", "dresser", "bed",
      "nightstand", "washer", "dryer", "laundry_basket", "shed"}},
    {"food",
     {"eggs", "bread", "butter", "tomato", "carrot", "apple", "flour", "sugar",
      "dough", "lettuce"}},
    {"drink", {"milk", "coffee"}},
    {"utensil", {"plate", "mug", "bowl", "pan", "kettle"}},
    {"cloth", {"shirt", "trousers", "towel", "bedsheet"}},
    {"plant", {"rose_bush", "tomato_plant", "basil_pot"}},
    {"seed", {"carrot_seeds", "flower_seeds"}},
};

constexpr std::pair<const char*, const char*> kStoredItems[] = {
    {"milk", "fridge"},        {"eggs", "fridge"},
    {"butter", "fridge"},      {"tomato", "fridge"},
    {"carrot", "fridge"},      {"apple", "fridge"},
    {"coffee", "pantry"},      {"sugar", "pantry"},
    {"plate", "cupboard"},     {"mug", "cupboard"},
    {"bowl", "cupboard"},      {"pan", "cupboard"},
    {"knife", "cupboard"},     {"duster", "cabinet"},
    {"vacuum", "cabinet"},     {"floor_mop", "cabinet"},
    {"shirt", "laundry_basket"},   {"trousers", "laundry_basket"},
    {"towel", "laundry_basket"},   {"bedsheet", "laundry_basket"},
    {"watering_can", "shed"},  {"trowel", "shed"},
    {"carrot_seeds", "shed"},  {"flower_seeds", "shed"},
};

// Loose items; the movable ones are reshuffled across rooms by the scenario
// seed, the plants stay put.
constexpr std::pair<const char*, const char*> kLooseItems[] = {
    {"flour", "kitchen"},      {"dough", "kitchen"},
    {"lettuce", "kitchen"},    {"bread", "kitchen"},
    {"kettle", "kitchen"},     {"clothes_iron", "bedroom"},
    {"basil_pot", "living_room"},
    {"rose_bush", "garden"},   {"tomato_plant", "garden"},
};
constexpr size_t kMovableLooseCount = 7;  // prefix of kLooseItems

constexpr std::pair<const char*, const char*> kSpotStatics[] = {
    {"counter_space", "kitchen"},      {"garden_area", "garden"},
    {"ironing_spot", "bedroom"},       {"serving_spot", "dining_table"},
    {"cooking_appliance", "stove"},    {"baking_appliance", "oven"},
    {"washing_machine", "washer"},     {"drying_machine", "dryer"},
    {"dishwashing_machine", "dishwasher"}, {"is_bed", "bed"},
    {"wiping_tool", "towel"},          {"brewing_tool", "kettle"},
};

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<Atom> canonical_init(uint64_t seed) {
  std::vector<Atom> init;
  auto add = [&init](const char* pred, std::initializer_list<std::string> args) {
    init.push_back(Atom{pred, std::vector<std::string>(args)});
  };

  add("at", {"robot", "kitchen"});
  add("hand_empty", {"left_hand"});
  add("hand_empty", {"right_hand"});
  for (const auto& [a, b] : kAdjacency) {
    add("adjacent", {a, b});
    add("adjacent", {b, a});
  }
  for (const auto& r : kReceptacles) {
    add("recept_at", {r.receptacle, r.room});
    if (r.openable) {
      add("can_open", {r.receptacle});
    } else {
      add("accessible", {r.receptacle});
    }
  }
  for (const auto& [pred, arg] : kSpotStatics) add(pred, {arg});
  for (const auto& [item, recept] : kStoredItems) add("in_recept", {item, recept});

  uint64_t rng = seed * 0x9e3779b97f4a7c15ull + 0xda3e39cb94b95bdbull;
  for (size_t i = 0; i < std::size(kLooseItems); ++i) {
    const auto& [item, room] = kLooseItems[i];
    std::string placed = room;
    if (seed != 0 && i < kMovableLooseCount) {
      placed = kRooms[splitmix64(rng) % std::size(kRooms)];
    }
    add("obj_at", {item, placed});
  }
  return init;
}

}  // namespace

std::string synthesize_problem(const ScenarioSpec& scenario,
                               const std::vector<Literal>& goal,
                               const std::string& problem_name,
                               const std::vector<std::vector<std::string>>& hints) {
  pddl::ProblemAst problem;
  problem.name = problem_name;
  problem.domain_name = "household";
  for (const auto& [type, names] : kObjects) {
    for (const char* name : names) problem.objects.push_back(TypedName{name, type});
  }
  problem.init =
      scenario.init_override ? *scenario.init_override : canonical_init(scenario.seed);
  problem.goal = goal;
  problem.metric_min_total_cost = true;
  problem.hints = hints;
  return pddl::print_problem(problem);
}

}  // namespace antplan
