#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sattl/formula.hpp"

namespace sattl::ltlf {

/// LTL over finite traces in negation-normal form. Negation only sits on
/// propositions (NotProp); Next is the strong next.
class LtlfFormula {
 public:
  enum class Kind : unsigned char { TT, FF, Prop, NotProp, And, Or, Next, Until };

  static LtlfFormula tt();
  static LtlfFormula ff();
  static LtlfFormula prop(Atom p);
  static LtlfFormula not_prop(Atom p);
  static LtlfFormula conj(LtlfFormula a, LtlfFormula b);
  static LtlfFormula disj(LtlfFormula a, LtlfFormula b);
  static LtlfFormula next(LtlfFormula a);
  static LtlfFormula until(LtlfFormula a, LtlfFormula b);

  Kind kind() const noexcept;
  const Atom& atom() const;         // Prop / NotProp
  const LtlfFormula& lhs() const;   // And, Or, Until, and the operand of Next
  const LtlfFormula& rhs() const;   // And, Or, Until

  friend bool operator==(const LtlfFormula& a, const LtlfFormula& b);

 private:
  struct Node;
  explicit LtlfFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Prefix text, e.g. `U(!grass, |(axe, sword))`.
std::string format_ltlf(const LtlfFormula& g);

/// Rewrites (T1;T2);T3 -> T1;(T2;T3) and (T1++T2);T3 -> (T1;T3)++(T2;T3)
/// until every Seq has an atomic left operand.
TemporalFormula normalize_seq(const TemporalFormula& f);

/// SATTL -> LTL_f. Seq(c U g, T') maps to U(c, &(g, X(U(true, T')))): the
/// continuation may start any time after the goal instant.
LtlfFormula translate(const TemporalFormula& f);

/// Standard finite-trace semantics evaluated at position 0; every formula
/// is false on the empty trace.
bool eval_ltlf(const LtlfFormula& g, std::span<const LabelSet> trace);
inline bool eval_ltlf(const LtlfFormula& g, const Trace& trace) { return eval_ltlf(g, std::span(trace.steps)); }

inline constexpr std::size_t kMaxEnumAtoms = 3;
inline constexpr std::size_t kMaxEnumLength = 6;

/// Every trace of length 1..max_len over subsets of `atoms`, shorter traces
/// first, each length in lexicographic order of subset bitmasks. Throws
/// SizeGuardError beyond 3 atoms or length 6.
void for_each_trace(std::span<const Atom> atoms, std::size_t max_len, const std::function<void(const Trace&)>& fn);
std::vector<Trace> enumerate_traces(std::span<const Atom> atoms, std::size_t max_len);

struct PreservationReport {
  std::size_t cases = 0;
  std::vector<Trace> disagreements;
};

PreservationReport check_truth_preservation(const TemporalFormula& f, std::span<const Atom> atoms,
                                            std::size_t max_len);

}  // namespace sattl::ltlf
