#include "sattl/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "sattl/errors.hpp"

namespace sattl {

bool is_valid_atom_name(std::string_view name) noexcept {
  if (name.empty() || name == "true") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (name_ == "true") throw ReservedNameError("\"true\" is a literal constant, not an atom");
  if (!is_valid_atom_name(name_)) throw std::invalid_argument("invalid atom name '" + name_ + "'");
}

Literal Literal::any_of(std::vector<SignedAtom> entries) {
  if (entries.empty()) throw std::invalid_argument("a disjunctive literal needs at least one entry");
  Literal out;
  out.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (std::find(out.entries_.begin(), out.entries_.end(), e) == out.entries_.end())
      out.entries_.push_back(std::move(e));
  }
  return out;
}

struct TemporalFormula::Node {
  Kind kind;
  AtomicTask task;                        // Atomic only
  std::vector<TemporalFormula> children;  // Seq/Choice: exactly two
  std::size_t depth = 0;
  std::size_t count = 1;
};

TemporalFormula TemporalFormula::atomic(AtomicTask task) {
  return TemporalFormula(std::make_shared<const Node>(Node{Kind::Atomic, std::move(task), {}, 0, 1}));
}

namespace {

AtomicTask unused_task() { return {Literal::truth(), Literal::truth()}; }

}  // namespace

TemporalFormula TemporalFormula::seq(TemporalFormula first, TemporalFormula second) {
  const std::size_t d = 1 + std::max(first.depth(), second.depth());
  const std::size_t c = 1 + first.node_count() + second.node_count();
  return TemporalFormula(std::make_shared<const Node>(
      Node{Kind::Seq, unused_task(), {std::move(first), std::move(second)}, d, c}));
}

TemporalFormula TemporalFormula::choice(TemporalFormula left, TemporalFormula right) {
  const std::size_t d = 1 + std::max(left.depth(), right.depth());
  const std::size_t c = 1 + left.node_count() + right.node_count();
  return TemporalFormula(std::make_shared<const Node>(
      Node{Kind::Choice, unused_task(), {std::move(left), std::move(right)}, d, c}));
}

TemporalFormula::Kind TemporalFormula::kind() const noexcept { return node_->kind; }

const AtomicTask& TemporalFormula::task() const {
  if (node_->kind != Kind::Atomic) throw std::logic_error("task() on a composite formula");
  return node_->task;
}

const TemporalFormula& TemporalFormula::left() const {
  if (node_->kind == Kind::Atomic) throw std::logic_error("left() on an atomic formula");
  return node_->children[0];
}

const TemporalFormula& TemporalFormula::right() const {
  if (node_->kind == Kind::Atomic) throw std::logic_error("right() on an atomic formula");
  return node_->children[1];
}

std::size_t TemporalFormula::depth() const noexcept { return node_->depth; }
std::size_t TemporalFormula::node_count() const noexcept { return node_->count; }

bool operator==(const TemporalFormula& a, const TemporalFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atomic()) return a.task() == b.task();
  return a.left() == b.left() && a.right() == b.right();
}

void Trace::check_end_contract() const {
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (steps[i].contains("end"))
      throw TraceFormatError("atom 'end' labels instant " + std::to_string(i) +
                             " but may only label the final instant");
  }
}

}  // namespace sattl
