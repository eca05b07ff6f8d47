#include "antplan/metrics.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "antplan/error.hpp"

namespace antplan {

namespace {

// task -> index of first occurrence
std::unordered_map<std::string, size_t> first_positions(const TaskList& tasks) {
  std::unordered_map<std::string, size_t> pos;
  for (size_t i = 0; i < tasks.size(); ++i) pos.try_emplace(tasks[i], i);
  return pos;
}

}  // namespace

double miss_ratio(const TaskList& truth, const TaskList& predicted) {
  if (truth.empty()) {
    throw Error(ErrorCode::EmptyTruth, "miss_ratio over an empty ground truth");
  }
  std::unordered_set<std::string> predicted_set(predicted.begin(), predicted.end());
  long long missed = 0;
  for (const auto& t : truth) {
    if (!predicted_set.count(t)) ++missed;
  }
  return static_cast<double>(missed) / static_cast<double>(truth.size());
}

double poc(const TaskList& truth, const TaskList& predicted) {
  if (truth.size() < 2) {
    throw Error(ErrorCode::EmptyTruth, "poc needs at least two ground-truth tasks");
  }
  auto pred_pos = first_positions(predicted);
  long long preserved = 0, total = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    auto a = pred_pos.find(truth[i]);
    if (a == pred_pos.end()) continue;
    for (size_t j = i + 1; j < truth.size(); ++j) {
      auto b = pred_pos.find(truth[j]);
      if (b == pred_pos.end()) continue;
      ++total;
      if (a->second < b->second) ++preserved;
    }
  }
  if (total == 0) return 1.0;
  return static_cast<double>(preserved) / static_cast<double>(total);
}

double krcc(const TaskList& truth, const TaskList& predicted) {
  auto truth_pos = first_positions(truth);
  if (truth_pos.size() != truth.size()) {
    throw Error(ErrorCode::EmptyTruth, "krcc ground truth contains duplicates");
  }
  auto pred_pos = first_positions(predicted);

  // Common tasks ranked by position in each list, in truth order.
  std::vector<std::pair<size_t, size_t>> ranks;  // (rank in truth, rank in predicted)
  for (size_t i = 0; i < truth.size(); ++i) {
    auto it = pred_pos.find(truth[i]);
    if (it != pred_pos.end()) ranks.emplace_back(i, it->second);
  }
  size_t n = ranks.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewCommon,
                "krcc needs at least two tasks common to both lists, got " +
                    std::to_string(n));
  }

  // First occurrences are distinct positions, so neither ranking has ties:
  // n1 = n2 = 0 and the denominator reduces to n0 = n(n-1)/2.
  long long concordant = 0, discordant = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool truth_less = ranks[i].first < ranks[j].first;
      bool pred_less = ranks[i].second < ranks[j].second;
      if (truth_less == pred_less) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / n0;
}

std::pair<long long, long long> incorrect_and_repeats(const TaskList& truth,
                                                      const TaskList& predicted) {
  std::unordered_set<std::string> truth_set(truth.begin(), truth.end());
  std::unordered_set<std::string> distinct;
  long long incorrect = 0;
  for (const auto& p : predicted) {
    if (!truth_set.count(p)) ++incorrect;
    distinct.insert(p);
  }
  long long repeats =
      static_cast<long long>(predicted.size()) - static_cast<long long>(distinct.size());
  return {incorrect, repeats};
}

double success_ratio(const std::vector<bool>& outcomes) {
  if (outcomes.empty()) {
    throw Error(ErrorCode::EmptyList, "success_ratio over an empty outcome list");
  }
  long long good = 0;
  for (bool b : outcomes) {
    if (b) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(outcomes.size());
}

AnticipationScore score_anticipation(const TaskList& truth, const TaskList& predicted) {
  AnticipationScore score;
  score.miss_ratio = miss_ratio(truth, predicted);
  score.poc = truth.size() >= 2 ? poc(truth, predicted) : 1.0;
  try {
    score.krcc = krcc(truth, predicted);
    score.krcc_defined = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooFewCommon) throw;
    score.krcc = 0.0;
    score.krcc_defined = false;
  }
  auto [incorrect, repeats] = incorrect_and_repeats(truth, predicted);
  score.incorrect = incorrect;
  score.repeats = repeats;
  return score;
}

}  // namespace antplan
