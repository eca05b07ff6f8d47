#include "antplan/anticipation.hpp"

#include <sstream>

#include <json.hpp>

#include "antplan/error.hpp"

namespace antplan {

using nlohmann::json;

namespace {

std::string tasks_to_json(const std::vector<std::string>& tasks) {
  return json(tasks).dump();
}

}  // namespace

std::vector<ChatMessage> build_prompt(const PromptContext& ctx) {
  std::vector<ChatMessage> messages;

  std::ostringstream sys;
  sys << "You are a household assistant that anticipates the remaining "
         "high-level tasks of a daily routine.\n"
      << "Only tasks from this catalog exist; any other output will be "
         "ignored.\n"
      << "Task catalog (JSON):\n"
      << (ctx.catalog ? ctx.catalog->to_json() : "{}") << "\n"
      << "Within each activity, tasks are always performed in the listed "
         "order.";
  messages.push_back({"system", sys.str()});

  std::ostringstream days;
  days << "Here are the task routines from two individual days:\n";
  for (size_t i = 0; i < ctx.example_routines.size(); ++i) {
    days << "Day " << (i + 1) << ": " << tasks_to_json(ctx.example_routines[i].tasks)
         << "\n";
  }
  messages.push_back({"user", days.str()});

  for (const auto& [prefix, completion] : ctx.contextual_examples) {
    messages.push_back(
        {"user", "The routine so far: " + tasks_to_json(prefix) +
                     "\nList the remaining tasks as a JSON array of task ids."});
    messages.push_back({"assistant", tasks_to_json(completion)});
  }

  std::ostringstream query;
  query << "The routine so far: " << tasks_to_json(ctx.prefix) << "\n";
  if (ctx.horizon) {
    query << "List the next " << *ctx.horizon
          << " tasks as a JSON array of task ids.";
  } else {
    query << "List the remaining tasks as a JSON array of task ids.";
  }
  if (ctx.constraint_note) {
    query << "\n" << *ctx.constraint_note;
  }
  messages.push_back({"user", query.str()});
  return messages;
}

Anticipation filter_to_catalog(Anticipation anticipation, const TaskCatalog& catalog) {
  std::vector<std::string> kept;
  kept.reserve(anticipation.tasks.size());
  for (auto& t : anticipation.tasks) {
    if (catalog.has_task(t)) kept.push_back(std::move(t));
  }
  anticipation.tasks = std::move(kept);
  return anticipation;
}

Anticipation oracle_anticipate(const PromptContext& ctx, const Routine& truth) {
  if (ctx.prefix.size() > truth.tasks.size()) {
    throw Error(ErrorCode::PrefixMismatch,
                "prefix is longer than the ground-truth routine");
  }
  for (size_t i = 0; i < ctx.prefix.size(); ++i) {
    if (ctx.prefix[i] != truth.tasks[i]) {
      throw Error(ErrorCode::PrefixMismatch,
                  "prefix diverges from the ground-truth routine at position " +
                      std::to_string(i) + " ('" + ctx.prefix[i] + "' vs '" +
                      truth.tasks[i] + "')");
    }
  }
  Anticipation out;
  out.tasks = remainder(truth, ctx.prefix.size());
  if (ctx.horizon && out.tasks.size() > *ctx.horizon) {
    out.tasks.resize(*ctx.horizon);
  }
  return out;
}

TransitionMatrix TransitionMatrix::fit(const std::vector<Routine>& routines) {
  if (routines.empty()) {
    throw Error(ErrorCode::EmptyList, "cannot fit a transition matrix on zero routines");
  }
  TransitionMatrix m;
  auto intern = [&m](const std::string& task) {
    auto it = m.index_.find(task);
    if (it != m.index_.end()) return it->second;
    size_t id = m.order_.size();
    m.order_.push_back(task);
    m.index_.emplace(task, id);
    return id;
  };
  for (const auto& r : routines) {
    for (size_t i = 0; i + 1 < r.tasks.size(); ++i) {
      size_t from = intern(r.tasks[i]);
      size_t to = intern(r.tasks[i + 1]);
      ++m.counts_[{from, to}];
      ++m.totals_[from];
    }
    if (!r.tasks.empty()) intern(r.tasks.back());
  }
  return m;
}

double TransitionMatrix::probability(const std::string& from, const std::string& to) const {
  auto fi = index_.find(from);
  auto ti = index_.find(to);
  if (fi == index_.end() || ti == index_.end()) return 0.0;
  auto total = totals_.find(fi->second);
  if (total == totals_.end() || total->second == 0) return 0.0;
  auto count = counts_.find({fi->second, ti->second});
  if (count == counts_.end()) return 0.0;
  return static_cast<double>(count->second) / static_cast<double>(total->second);
}

long long TransitionMatrix::source_total(const std::string& from) const {
  auto fi = index_.find(from);
  if (fi == index_.end()) return 0;
  auto total = totals_.find(fi->second);
  return total == totals_.end() ? 0 : total->second;
}

std::vector<std::pair<std::string, double>> TransitionMatrix::row(
    const std::string& from) const {
  std::vector<std::pair<std::string, double>> out;
  auto fi = index_.find(from);
  if (fi == index_.end()) return out;
  auto total = totals_.find(fi->second);
  if (total == totals_.end() || total->second == 0) return out;
  // counts_ is an ordered map, so rows come out in a stable order.
  auto it = counts_.lower_bound({fi->second, 0});
  for (; it != counts_.end() && it->first.first == fi->second; ++it) {
    out.emplace_back(order_[it->first.second],
                     static_cast<double>(it->second) /
                         static_cast<double>(total->second));
  }
  return out;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Anticipation markov_anticipate(const TransitionMatrix& matrix,
                               const std::vector<std::string>& prefix,
                               size_t horizon, uint64_t seed) {
  if (prefix.empty()) {
    throw Error(ErrorCode::EmptyList, "markov_anticipate needs a non-empty prefix");
  }
  std::string current = prefix.back();
  if (!matrix.knows(current)) {
    throw Error(ErrorCode::UnknownTask,
                "task '" + current + "' never occurred in the fitted routines");
  }

  Anticipation out;
  uint64_t rng_state = seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull;
  for (size_t step = 0; step < horizon; ++step) {
    auto successors = matrix.row(current);
    if (successors.empty()) break;  // faulty state: no recovery, stop sampling
    double u = static_cast<double>(splitmix64(rng_state) >> 11) * 0x1.0p-53;
    double cum = 0.0;
    std::string next = successors.back().first;
    for (const auto& [task, p] : successors) {
      cum += p;
      if (u < cum) {
        next = task;
        break;
      }
    }
    out.tasks.push_back(next);
    current = std::move(next);
  }
  return out;
}

Anticipation MarkovAnticipator::anticipate(const PromptContext& ctx) {
  size_t horizon = ctx.horizon.value_or(
      matrix_.tasks().size() > ctx.prefix.size()
          ? matrix_.tasks().size() - ctx.prefix.size()
          : 1);
  return markov_anticipate(matrix_, ctx.prefix, horizon, seed_ + calls_++);
}

}  // namespace antplan
