#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sattl/formula.hpp"

namespace sattl::sm {

/// K: every sequence of atomic tasks whose in-order completion satisfies the
/// formula. Non-empty, each sequence non-empty, no duplicate sequences.
using TaskSequence = std::vector<AtomicTask>;
using TaskList = std::vector<TaskSequence>;

TaskList extract(const TemporalFormula& f);

/// Right-nested Seq of a non-empty sequence.
TemporalFormula fold_seq(std::span<const AtomicTask> seq);

enum class Status : unsigned char { GoalReached, Violation, Ongoing };

// Rewards are exact multiples of 0.05; they are carried as integer
// twentieths so that accumulated returns compare exactly.
inline constexpr std::int64_t kGoalUnits = 20;
inline constexpr std::int64_t kViolationUnits = -20;
inline constexpr std::int64_t kStepUnits = -1;
inline constexpr double kUnit = 0.05;
// Division keeps the nearest double to the decimal value (19 units -> 0.95).
inline constexpr double units_to_reward(std::int64_t units) noexcept { return static_cast<double>(units) / 20.0; }

struct RewardEvent {
  Status status;
  std::int64_t units() const noexcept;
  double reward() const noexcept { return units_to_reward(units()); }
};

const char* status_name(Status s) noexcept;

/// Goal first, then safety condition, else the small step penalty.
RewardEvent reward_of(const LabelSet& labels, const AtomicTask& task);

enum class Outcome : unsigned char { Running, Satisfied, HorizonReached };
const char* outcome_name(Outcome o) noexcept;

struct SmState {
  TaskList remaining;
  AtomicTask current;
  std::uint64_t steps_on_current = 0;
  std::uint64_t completions = 0;
  std::uint64_t violations = 0;
  std::uint64_t ordinary_steps = 0;
  std::int64_t reward_units = 0;
  Outcome outcome = Outcome::Running;

  bool done() const noexcept { return outcome != Outcome::Running; }
  double total_reward() const noexcept { return units_to_reward(reward_units); }
  // reward_units == 20*completions - 20*violations - ordinary_steps
  bool accounting_holds() const noexcept;
};

SmState sm_init(const TemporalFormula& f);

struct StepResult {
  SmState state;
  RewardEvent event;
};

/// Progression: rewards the labels against the current task and advances K.
/// Throws StateDone once the state is done.
StepResult sm_step(const SmState& s, const LabelSet& labels);

// Marks a running state as having exhausted its horizon.
SmState sm_close(SmState s);

struct EpisodeReturn {
  double value = 0.0;
  std::int64_t units = 0;
  Outcome outcome = Outcome::HorizonReached;
  std::uint64_t violations = 0;
  std::uint64_t completions = 0;
  std::uint64_t ordinary_steps = 0;
  std::vector<Status> statuses;  // one per consumed instant
};

/// Replays the progression over the trace until the formula is satisfied or
/// the trace is exhausted.
EpisodeReturn episode_return(std::span<const LabelSet> trace, const TemporalFormula& f);
inline EpisodeReturn episode_return(const Trace& trace, const TemporalFormula& f) {
  return episode_return(std::span(trace.steps), f);
}

/// One line of the episode log:
/// {"t": i, "labels": [...], "reward": r, "status": "...", "current_task": "..."}
std::string episode_log_line(std::size_t t, const LabelSet& labels, const RewardEvent& ev,
                             const AtomicTask& current_task);

}  // namespace sattl::sm
