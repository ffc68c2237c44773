#include "sattl/semantics.hpp"

#include <algorithm>

#include "sattl/errors.hpp"

namespace sattl {

bool literal_holds(const Literal& l, const LabelSet& labels) {
  if (l.is_true()) return true;
  return std::any_of(l.entries().begin(), l.entries().end(), [&](const SignedAtom& e) {
    const bool present = labels.contains(e.atom.name());
    return e.sign == Sign::Positive ? present : !present;
  });
}

std::vector<unsigned char> window_table(std::span<const LabelSet> trace, const TemporalFormula& f) {
  const std::size_t n = trace.size();
  std::vector<unsigned char> out(n * n, 0);
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic: {
      const auto& task = f.task();
      std::vector<unsigned char> goal(n), cond(n);
      for (std::size_t t = 0; t < n; ++t) {
        goal[t] = literal_holds(task.goal, trace[t]);
        cond[t] = literal_holds(task.cond, trace[t]);
      }
      // Earliest witness from a: first goal instant reached before (or at)
      // the first condition failure.
      for (std::size_t a = 0; a < n; ++a) {
        std::size_t k = a;
        while (k < n && !goal[k] && cond[k]) ++k;
        if (k >= n || !goal[k]) continue;
        for (std::size_t b = k; b < n; ++b) out[a * n + b] = 1;
      }
      break;
    }
    case TemporalFormula::Kind::Seq: {
      const auto lhs = window_table(trace, f.left());
      const auto rhs = window_table(trace, f.right());
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = a; j + 1 < n; ++j) {
          if (!lhs[a * n + j]) continue;
          for (std::size_t b = j + 1; b < n; ++b)
            if (rhs[(j + 1) * n + b]) out[a * n + b] = 1;
        }
      break;
    }
    case TemporalFormula::Kind::Choice: {
      const auto lhs = window_table(trace, f.left());
      const auto rhs = window_table(trace, f.right());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = lhs[i] | rhs[i];
      break;
    }
  }
  return out;
}

bool satisfies(std::span<const LabelSet> trace, const TemporalFormula& f) {
  const std::size_t n = trace.size();
  if (n == 0) return false;
  return window_table(trace, f)[n - 1] != 0;
}

namespace {

// (λ ⊨ l) looks only at the first state of λ.
bool literal_on(const Literal& l, std::span<const LabelSet> tr) { return !tr.empty() && literal_holds(l, tr[0]); }

bool naive(std::span<const LabelSet> tr, const TemporalFormula& f) {
  if (tr.empty()) return false;
  const std::size_t len = tr.size();
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic: {
      const auto& task = f.task();
      for (std::size_t j = 0; j < len; ++j) {
        if (!literal_on(task.goal, tr.subspan(j))) continue;
        bool safe = true;
        for (std::size_t t = 0; t < j && safe; ++t) safe = literal_on(task.cond, tr.subspan(t, j - t));
        if (safe) return true;
      }
      return false;
    }
    case TemporalFormula::Kind::Seq:
      for (std::size_t j = 0; j < len; ++j)
        if (naive(tr.first(j + 1), f.left()) && naive(tr.subspan(j + 1), f.right())) return true;
      return false;
    case TemporalFormula::Kind::Choice:
      return naive(tr, f.left()) || naive(tr, f.right());
  }
  return false;
}

}  // namespace

bool satisfies_naive(std::span<const LabelSet> trace, const TemporalFormula& f) {
  if (trace.size() > kNaiveMaxTrace)
    throw TraceTooLong("naive evaluation is limited to " + std::to_string(kNaiveMaxTrace) + " instants, got " +
                       std::to_string(trace.size()));
  return naive(trace, f);
}

SatReport satisfies_with_restarts(std::span<const LabelSet> trace, const AtomicTask& task) {
  SatReport r;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (literal_holds(task.goal, trace[t])) {
      r.satisfied = true;
      r.completion_index = t;
      return r;
    }
    if (!literal_holds(task.cond, trace[t])) {
      ++r.violation_count;
      r.violation_indices.push_back(t);
    }
  }
  return r;
}

}  // namespace sattl
