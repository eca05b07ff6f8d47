#pragma once

#include <string>
#include <utility>
#include <vector>

namespace antplan {

struct AnticipationScore {
  double miss_ratio = 0.0;  // in [0, 1]
  double poc = 1.0;         // in [0, 1]
  double krcc = 1.0;        // in [-1, 1]; meaningful only when krcc_defined
  bool krcc_defined = true;
  long long incorrect = 0;
  long long repeats = 0;
};

using TaskList = std::vector<std::string>;

// Fraction of ground-truth tasks absent from the prediction.
double miss_ratio(const TaskList& truth, const TaskList& predicted);

// Partial Ordering Count: over all ordered pairs (a, b) with a before b in
// `truth` and both present in `predicted`, the fraction whose first
// occurrences in `predicted` keep that order. 1.0 when no pair qualifies.
double poc(const TaskList& truth, const TaskList& predicted);

// Kendall rank correlation (n_c - n_d) / sqrt((n0 - n1) (n0 - n2)) over the
// tasks common to both lists, ranked by position. Truth must be
// duplicate-free; predicted duplicates collapse to the first occurrence (the
// duplication shows up in `repeats` instead). Throws TooFewCommon when
// fewer than two tasks are shared.
double krcc(const TaskList& truth, const TaskList& predicted);

// (occurrences of tasks outside truth, total occurrences - distinct tasks)
std::pair<long long, long long> incorrect_and_repeats(const TaskList& truth,
                                                      const TaskList& predicted);

double success_ratio(const std::vector<bool>& outcomes);

// All of the above in one record; krcc_defined is false instead of throwing
// when the lists share fewer than two tasks.
AnticipationScore score_anticipation(const TaskList& truth, const TaskList& predicted);

}  // namespace antplan
