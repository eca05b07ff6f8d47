#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "antplan/task_model.hpp"

namespace antplan {

// One chat turn; role is "system", "user" or "assistant".
struct ChatMessage {
  std::string role;
  std::string content;
};

struct PromptContext {
  const TaskCatalog* catalog = nullptr;
  std::vector<Routine> example_routines;  // "two individual days"
  // Worked (prefix -> expected completion) pairs; present only in the
  // with-context configuration.
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      contextual_examples;
  std::vector<std::string> prefix;  // the partially specified routine
  std::optional<std::string> constraint_note;
  std::optional<size_t> horizon;  // nullopt = anticipate all remaining tasks
};

struct Anticipation {
  std::vector<std::string> tasks;
  std::optional<std::string> raw;  // unparsed model reply, when there was one
};

// Catalog as JSON, the two example days, the worked examples (if any) as
// user/assistant turns, then the prefix plus the output-format instruction,
// with the constraint note appended verbatim.
std::vector<ChatMessage> build_prompt(const PromptContext& ctx);

// Drops task ids that are not in the catalog. Idempotent.
Anticipation filter_to_catalog(Anticipation anticipation, const TaskCatalog& catalog);

// Deterministic stand-in for a perfect predictor: returns the remainder of
// `truth` after ctx.prefix, truncated to ctx.horizon. The prefix must
// actually be a prefix of truth.
Anticipation oracle_anticipate(const PromptContext& ctx, const Routine& truth);

class TransitionMatrix {
 public:
  // Exact adjacent-pair counts over the given routines.
  static TransitionMatrix fit(const std::vector<Routine>& routines);

  // counts(from, to) / counts(from, *); 0 when `from` was never a source.
  double probability(const std::string& from, const std::string& to) const;
  long long source_total(const std::string& from) const;
  bool knows(const std::string& task) const { return index_.count(task) > 0; }
  const std::vector<std::string>& tasks() const { return order_; }

  // Row successors in stable order with probabilities; empty for dead ends.
  std::vector<std::pair<std::string, double>> row(const std::string& from) const;

 private:
  std::vector<std::string> order_;                    // stable task ordering
  std::unordered_map<std::string, size_t> index_;
  std::map<std::pair<size_t, size_t>, long long> counts_;
  std::unordered_map<size_t, long long> totals_;
};

// Random walk over the transition matrix starting after the last prefix
// task. Stops early at dead ends (a state with no outgoing transitions);
// repeats are allowed, mirroring a first-order chain's inability to recover.
Anticipation markov_anticipate(const TransitionMatrix& matrix,
                               const std::vector<std::string>& prefix,
                               size_t horizon, uint64_t seed);

// Uniform interface the harness drives; implementations wrap the three
// anticipation routes plus scripted replies for tests.
class Anticipator {
 public:
  virtual ~Anticipator() = default;
  virtual Anticipation anticipate(const PromptContext& ctx) = 0;
  virtual std::string name() const = 0;
};

class OracleAnticipator : public Anticipator {
 public:
  explicit OracleAnticipator(Routine truth) : truth_(std::move(truth)) {}
  Anticipation anticipate(const PromptContext& ctx) override {
    return oracle_anticipate(ctx, truth_);
  }
  std::string name() const override { return "oracle"; }

 private:
  Routine truth_;
};

class MarkovAnticipator : public Anticipator {
 public:
  MarkovAnticipator(TransitionMatrix matrix, uint64_t seed)
      : matrix_(std::move(matrix)), seed_(seed) {}
  Anticipation anticipate(const PromptContext& ctx) override;
  std::string name() const override { return "markov"; }

 private:
  TransitionMatrix matrix_;
  uint64_t seed_;
  uint64_t calls_ = 0;
};

// Fixed reply regardless of context; test/demo scripting.
class ScriptedAnticipator : public Anticipator {
 public:
  explicit ScriptedAnticipator(std::vector<std::string> reply)
      : reply_(std::move(reply)) {}
  Anticipation anticipate(const PromptContext&) override { return {reply_, {}}; }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<std::string> reply_;
};

}  // namespace antplan
