#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace antplan {

// High-level task catalog: tasks grouped by activity, where the position
// inside an activity fixes the only legal relative order of its tasks in
// any routine.

struct Task {
  std::string id;
  std::string activity;
  int rank_in_activity = 0;
  std::string goal_key;
};

struct Activity {
  std::string name;
  std::vector<std::string> tasks;  // canonical order
};

struct Routine {
  std::vector<std::string> tasks;
  uint64_t seed = 0;
};

class TaskCatalog {
 public:
  const std::vector<Activity>& activities() const { return activities_; }
  const Task& task(const std::string& id) const;
  bool has_task(const std::string& id) const { return tasks_.count(id) > 0; }
  size_t task_count() const { return tasks_.size(); }
  std::vector<std::string> task_ids() const;  // stable catalog order

  std::string to_json() const;

  friend TaskCatalog load_catalog(const std::string& path);
  friend TaskCatalog parse_catalog(const std::string& json_text);

 private:
  std::vector<Activity> activities_;
  std::unordered_map<std::string, Task> tasks_;
};

// Catalog JSON format:
//   {"activities": [{"name": ..., "tasks": [{"id": ..., "goal_key": ...}]}]}
TaskCatalog load_catalog(const std::string& path);
TaskCatalog parse_catalog(const std::string& json_text);

// Seeded random interleave: repeatedly pick a non-exhausted activity with
// probability proportional to its remaining task count and emit its next
// task. Pure function of (catalog, length, seed).
Routine sample_routine(const TaskCatalog& catalog, size_t length, uint64_t seed);

// The ground truth a prediction is scored against.
std::vector<std::string> remainder(const Routine& routine, size_t prefix_len);

}  // namespace antplan
