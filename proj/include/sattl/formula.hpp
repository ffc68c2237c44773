#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sattl {

// Returns true for names matching [a-z0-9_]+ other than the literal keyword "true".
bool is_valid_atom_name(std::string_view name) noexcept;

/// A propositional atom. "end" is accepted (it is the environment's
/// end-of-episode marker); "true" is a keyword and never an atom.
class Atom {
 public:
  explicit Atom(std::string name);
  static Atom end() { return Atom("end"); }

  const std::string& name() const noexcept { return name_; }
  bool is_end() const noexcept { return name_ == "end"; }

  auto operator<=>(const Atom&) const = default;

 private:
  std::string name_;
};

enum class Sign : unsigned char { Positive, Negative };

struct SignedAtom {
  Sign sign;
  Atom atom;

  static SignedAtom pos(std::string name) { return {Sign::Positive, Atom(std::move(name))}; }
  static SignedAtom neg(std::string name) { return {Sign::Negative, Atom(std::move(name))}; }

  auto operator<=>(const SignedAtom&) const = default;
};

/// Either the constant TRUE or a non-empty disjunction of signed atoms.
/// Duplicate entries are dropped at construction; first-occurrence order is kept.
class Literal {
 public:
  static Literal truth() { return Literal(); }
  static Literal any_of(std::vector<SignedAtom> entries);
  static Literal pos(std::string name) { return any_of({SignedAtom::pos(std::move(name))}); }
  static Literal neg(std::string name) { return any_of({SignedAtom::neg(std::move(name))}); }

  bool is_true() const noexcept { return entries_.empty(); }
  std::span<const SignedAtom> entries() const noexcept { return entries_; }

  bool operator==(const Literal&) const = default;

 private:
  Literal() = default;
  std::vector<SignedAtom> entries_;
};

/// cond U goal.
struct AtomicTask {
  Literal cond;
  Literal goal;

  // TRUE goal is trivially satisfiable at the first instant.
  bool degenerate() const noexcept { return goal.is_true(); }

  bool operator==(const AtomicTask&) const = default;
};

/// Immutable SATTL formula tree: Atomic | Seq | Choice. Copies share structure.
class TemporalFormula {
 public:
  enum class Kind : unsigned char { Atomic, Seq, Choice };

  static TemporalFormula atomic(AtomicTask task);
  static TemporalFormula seq(TemporalFormula first, TemporalFormula second);
  static TemporalFormula choice(TemporalFormula left, TemporalFormula right);

  Kind kind() const noexcept;
  bool is_atomic() const noexcept { return kind() == Kind::Atomic; }

  // Only valid on Atomic nodes.
  const AtomicTask& task() const;
  // Only valid on Seq/Choice nodes.
  const TemporalFormula& left() const;
  const TemporalFormula& right() const;

  // Atomic nodes have depth 0.
  std::size_t depth() const noexcept;
  std::size_t node_count() const noexcept;

  friend bool operator==(const TemporalFormula& a, const TemporalFormula& b);

 private:
  struct Node;
  explicit TemporalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using LabelSet = std::set<std::string, std::less<>>;

/// Finite sequence of label sets.
struct Trace {
  std::vector<LabelSet> steps;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }
  const LabelSet& operator[](std::size_t i) const { return steps[i]; }

  // Throws TraceFormatError when "end" labels any instant except the last one.
  void check_end_contract() const;

  bool operator==(const Trace&) const = default;
};

}  // namespace sattl
