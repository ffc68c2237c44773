#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sattl/formula.hpp"

namespace sattl {

bool literal_holds(const Literal& l, const LabelSet& labels);

/// Finite-trace satisfaction by dynamic programming over windows [a, b].
/// O(|λ|^2) per atomic node and O(|λ|^3) per Seq node.
bool satisfies(std::span<const LabelSet> trace, const TemporalFormula& f);
inline bool satisfies(const Trace& trace, const TemporalFormula& f) { return satisfies(std::span(trace.steps), f); }

// Truth of f on every window of the trace: entry [a * n + b] for a <= b.
std::vector<unsigned char> window_table(std::span<const LabelSet> trace, const TemporalFormula& f);

inline constexpr std::size_t kNaiveMaxTrace = 32;

/// Direct recursive transcription of the satisfaction relation, enumerating
/// every witness instant and split point on explicit sub-traces. Used as the
/// reference oracle for `satisfies`. Throws TraceTooLong above 32 instants.
bool satisfies_naive(std::span<const LabelSet> trace, const TemporalFormula& f);
inline bool satisfies_naive(const Trace& trace, const TemporalFormula& f) {
  return satisfies_naive(std::span(trace.steps), f);
}

struct SatReport {
  bool satisfied = false;
  std::optional<std::size_t> completion_index;
  std::size_t violation_count = 0;
  std::vector<std::size_t> violation_indices;
};

/// Relaxed satisfaction: a violated safety condition restarts the task from
/// the next instant instead of failing it.
SatReport satisfies_with_restarts(std::span<const LabelSet> trace, const AtomicTask& task);
inline SatReport satisfies_with_restarts(const Trace& trace, const AtomicTask& task) {
  return satisfies_with_restarts(std::span(trace.steps), task);
}

}  // namespace sattl
