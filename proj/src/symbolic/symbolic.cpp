#include "sattl/symbolic.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "sattl/errors.hpp"
#include "sattl/parse.hpp"
#include "sattl/semantics.hpp"

namespace sattl::sm {

namespace {

void push_unique(TaskList& out, TaskSequence seq) {
  if (std::find(out.begin(), out.end(), seq) == out.end()) out.push_back(std::move(seq));
}

}  // namespace

TaskList extract(const TemporalFormula& f) {
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic:
      return {{f.task()}};
    case TemporalFormula::Kind::Seq: {
      const auto lhs = extract(f.left());
      const auto rhs = extract(f.right());
      TaskList out;
      for (const auto& s : lhs)
        for (const auto& t : rhs) {
          TaskSequence cat = s;
          cat.insert(cat.end(), t.begin(), t.end());
          push_unique(out, std::move(cat));
        }
      return out;
    }
    case TemporalFormula::Kind::Choice: {
      TaskList out = extract(f.left());
      for (auto& s : extract(f.right())) push_unique(out, std::move(s));
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

TemporalFormula fold_seq(std::span<const AtomicTask> seq) {
  if (seq.empty()) throw std::invalid_argument("fold_seq needs a non-empty sequence");
  auto acc = TemporalFormula::atomic(seq.back());
  for (std::size_t i = seq.size() - 1; i-- > 0;) acc = TemporalFormula::seq(TemporalFormula::atomic(seq[i]), acc);
  return acc;
}

std::int64_t RewardEvent::units() const noexcept {
  switch (status) {
    case Status::GoalReached: return kGoalUnits;
    case Status::Violation: return kViolationUnits;
    case Status::Ongoing: return kStepUnits;
  }
  return 0;
}

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::GoalReached: return "GoalReached";
    case Status::Violation: return "Violation";
    case Status::Ongoing: return "Ongoing";
  }
  return "?";
}

const char* outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Running: return "Running";
    case Outcome::Satisfied: return "Satisfied";
    case Outcome::HorizonReached: return "HorizonReached";
  }
  return "?";
}

RewardEvent reward_of(const LabelSet& labels, const AtomicTask& task) {
  if (literal_holds(task.goal, labels)) return {Status::GoalReached};
  if (!literal_holds(task.cond, labels)) return {Status::Violation};
  return {Status::Ongoing};
}

bool SmState::accounting_holds() const noexcept {
  const auto expect = kGoalUnits * static_cast<std::int64_t>(completions) +
                      kViolationUnits * static_cast<std::int64_t>(violations) +
                      kStepUnits * static_cast<std::int64_t>(ordinary_steps);
  return expect == reward_units;
}

SmState sm_init(const TemporalFormula& f) {
  auto k = extract(f);
  AtomicTask head = k.front().front();
  return SmState{std::move(k), std::move(head)};
}

StepResult sm_step(const SmState& s, const LabelSet& labels) {
  if (s.done()) throw StateDone("symbolic module stepped after the episode finished");
  SmState next = s;
  const RewardEvent ev = reward_of(labels, s.current);
  next.reward_units += ev.units();
  switch (ev.status) {
    case Status::GoalReached: {
      ++next.completions;
      TaskList kept;
      bool finished = false;
      for (const auto& seq : s.remaining) {
        if (!(seq.front() == s.current)) continue;
        if (seq.size() == 1) {
          finished = true;
          continue;
        }
        kept.emplace_back(seq.begin() + 1, seq.end());
      }
      next.steps_on_current = 0;
      if (finished) {
        next.outcome = Outcome::Satisfied;
        next.remaining = std::move(kept);
      } else {
        next.remaining = std::move(kept);
        next.current = next.remaining.front().front();
      }
      break;
    }
    case Status::Violation:
      ++next.violations;
      ++next.steps_on_current;
      break;
    case Status::Ongoing:
      ++next.ordinary_steps;
      ++next.steps_on_current;
      break;
  }
  return {std::move(next), ev};
}

SmState sm_close(SmState s) {
  if (!s.done()) s.outcome = Outcome::HorizonReached;
  return s;
}

EpisodeReturn episode_return(std::span<const LabelSet> trace, const TemporalFormula& f) {
  EpisodeReturn out;
  SmState s = sm_init(f);
  for (const auto& labels : trace) {
    auto [next, ev] = sm_step(s, labels);
    out.statuses.push_back(ev.status);
    s = std::move(next);
    if (s.done()) break;
  }
  s = sm_close(std::move(s));
  out.units = s.reward_units;
  out.value = s.total_reward();
  out.outcome = s.outcome;
  out.violations = s.violations;
  out.completions = s.completions;
  out.ordinary_steps = s.ordinary_steps;
  return out;
}

std::string episode_log_line(std::size_t t, const LabelSet& labels, const RewardEvent& ev,
                             const AtomicTask& current_task) {
  nlohmann::json j{{"t", t},
                   {"labels", std::vector<std::string>(labels.begin(), labels.end())},
                   {"reward", ev.reward()},
                   {"status", status_name(ev.status)},
                   {"current_task", format_task(current_task)}};
  return j.dump();
}

}  // namespace sattl::sm
