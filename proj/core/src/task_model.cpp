#include "antplan/task_model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "antplan/error.hpp"

namespace antplan {

using nlohmann::json;

const Task& TaskCatalog::task(const std::string& id) const {
  auto it = tasks_.find(id);
  if (it == tasks_.end()) {
    throw Error(ErrorCode::UnknownTask, "no task '" + id + "' in catalog");
  }
  return it->second;
}

std::vector<std::string> TaskCatalog::task_ids() const {
  std::vector<std::string> ids;
  for (const auto& activity : activities_) {
    ids.insert(ids.end(), activity.tasks.begin(), activity.tasks.end());
  }
  return ids;
}

std::string TaskCatalog::to_json() const {
  json doc;
  doc["activities"] = json::array();
  for (const auto& activity : activities_) {
    json a;
    a["name"] = activity.name;
    a["tasks"] = json::array();
    for (const auto& id : activity.tasks) {
      const Task& t = tasks_.at(id);
      a["tasks"].push_back({{"id", t.id}, {"goal_key", t.goal_key}});
    }
    doc["activities"].push_back(std::move(a));
  }
  return doc.dump(2);
}

TaskCatalog parse_catalog(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; turn it into a line number.
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') ++line;
    }
    throw Error(ErrorCode::ParseError,
                "invalid catalog JSON near line " + std::to_string(line) + ": " +
                    e.what());
  }

  if (!doc.is_object() || !doc.contains("activities") || !doc["activities"].is_array()) {
    throw Error(ErrorCode::ParseError,
                "catalog JSON must be {\"activities\": [...]}");
  }

  TaskCatalog catalog;
  for (const auto& a : doc["activities"]) {
    if (!a.is_object() || !a.contains("name") || !a.contains("tasks") ||
        !a["tasks"].is_array()) {
      throw Error(ErrorCode::ParseError,
                  "each activity must be {\"name\": ..., \"tasks\": [...]}");
    }
    Activity activity;
    activity.name = a["name"].get<std::string>();
    int rank = 0;
    for (const auto& t : a["tasks"]) {
      if (!t.is_object() || !t.contains("id") || !t.contains("goal_key")) {
        throw Error(ErrorCode::ParseError,
                    "each task must be {\"id\": ..., \"goal_key\": ...} (activity '" +
                        activity.name + "')");
      }
      Task task;
      task.id = t["id"].get<std::string>();
      task.goal_key = t["goal_key"].get<std::string>();
      task.activity = activity.name;
      task.rank_in_activity = rank++;
      if (!catalog.tasks_.emplace(task.id, task).second) {
        throw Error(ErrorCode::DuplicateTask,
                    "task '" + task.id + "' appears more than once");
      }
      activity.tasks.push_back(task.id);
    }
    catalog.activities_.push_back(std::move(activity));
  }
  return catalog;
}

TaskCatalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open catalog file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

namespace {

// Deterministic integer draw in [0, n); avoids std::uniform_int_distribution
// whose output is implementation-defined.
uint64_t draw(std::uint64_t& state, uint64_t n) {
  // splitmix64 step
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z % n;
}

}  // namespace

Routine sample_routine(const TaskCatalog& catalog, size_t length, uint64_t seed) {
  size_t total = catalog.task_count();
  if (length > total) {
    throw Error(ErrorCode::LengthTooLarge,
                "requested routine of " + std::to_string(length) + " tasks, catalog has " +
                    std::to_string(total));
  }

  struct Pool {
    const Activity* activity;
    size_t next = 0;
    size_t remaining() const { return activity->tasks.size() - next; }
  };
  std::vector<Pool> pools;
  for (const auto& a : catalog.activities()) pools.push_back({&a});

  Routine routine;
  routine.seed = seed;
  uint64_t rng_state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  while (routine.tasks.size() < length) {
    size_t remaining_total = 0;
    for (const auto& p : pools) remaining_total += p.remaining();
    uint64_t pick = draw(rng_state, remaining_total);
    for (auto& p : pools) {
      if (pick < p.remaining()) {
        routine.tasks.push_back(p.activity->tasks[p.next++]);
        break;
      }
      pick -= p.remaining();
    }
  }
  return routine;
}

std::vector<std::string> remainder(const Routine& routine, size_t prefix_len) {
  if (prefix_len > routine.tasks.size()) {
    throw Error(ErrorCode::LengthTooLarge,
                "prefix length " + std::to_string(prefix_len) +
                    " exceeds routine length " + std::to_string(routine.tasks.size()));
  }
  return {routine.tasks.begin() + static_cast<std::ptrdiff_t>(prefix_len),
          routine.tasks.end()};
}

}  // namespace antplan
