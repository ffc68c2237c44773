#include "sattl/ltlf.hpp"

#include <optional>
#include <stdexcept>

#include "sattl/errors.hpp"
#include "sattl/semantics.hpp"

namespace sattl::ltlf {

struct LtlfFormula::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::vector<LtlfFormula> args;
};

LtlfFormula LtlfFormula::tt() { return LtlfFormula(std::make_shared<const Node>(Node{Kind::TT, {}, {}})); }
LtlfFormula LtlfFormula::ff() { return LtlfFormula(std::make_shared<const Node>(Node{Kind::FF, {}, {}})); }
LtlfFormula LtlfFormula::prop(Atom p) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::Prop, std::move(p), {}}));
}
LtlfFormula LtlfFormula::not_prop(Atom p) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::NotProp, std::move(p), {}}));
}
LtlfFormula LtlfFormula::conj(LtlfFormula a, LtlfFormula b) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::And, {}, {std::move(a), std::move(b)}}));
}
LtlfFormula LtlfFormula::disj(LtlfFormula a, LtlfFormula b) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(a), std::move(b)}}));
}
LtlfFormula LtlfFormula::next(LtlfFormula a) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::Next, {}, {std::move(a)}}));
}
LtlfFormula LtlfFormula::until(LtlfFormula a, LtlfFormula b) {
  return LtlfFormula(std::make_shared<const Node>(Node{Kind::Until, {}, {std::move(a), std::move(b)}}));
}

LtlfFormula::Kind LtlfFormula::kind() const noexcept { return node_->kind; }

const Atom& LtlfFormula::atom() const {
  if (!node_->atom) throw std::logic_error("atom() on a non-propositional LTLf node");
  return *node_->atom;
}
const LtlfFormula& LtlfFormula::lhs() const {
  if (node_->args.empty()) throw std::logic_error("lhs() on a leaf LTLf node");
  return node_->args[0];
}
const LtlfFormula& LtlfFormula::rhs() const {
  if (node_->args.size() < 2) throw std::logic_error("rhs() on a non-binary LTLf node");
  return node_->args[1];
}

bool operator==(const LtlfFormula& a, const LtlfFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->atom != b.node_->atom) return false;
  return a.node_->args == b.node_->args;
}

std::string format_ltlf(const LtlfFormula& g) {
  using K = LtlfFormula::Kind;
  switch (g.kind()) {
    case K::TT: return "true";
    case K::FF: return "false";
    case K::Prop: return g.atom().name();
    case K::NotProp: return "!" + g.atom().name();
    case K::And: return "&(" + format_ltlf(g.lhs()) + ", " + format_ltlf(g.rhs()) + ")";
    case K::Or: return "|(" + format_ltlf(g.lhs()) + ", " + format_ltlf(g.rhs()) + ")";
    case K::Next: return "X(" + format_ltlf(g.lhs()) + ")";
    case K::Until: return "U(" + format_ltlf(g.lhs()) + ", " + format_ltlf(g.rhs()) + ")";
  }
  return "?";
}

namespace {

LtlfFormula translate_literal(const Literal& l) {
  if (l.is_true()) return LtlfFormula::tt();
  std::optional<LtlfFormula> acc;
  for (const auto& e : l.entries()) {
    auto leaf = e.sign == Sign::Positive ? LtlfFormula::prop(e.atom) : LtlfFormula::not_prop(e.atom);
    acc = acc ? LtlfFormula::disj(std::move(*acc), std::move(leaf)) : std::move(leaf);
  }
  return *acc;
}

// Seq(head, tail) where head is already normalized and tail is arbitrary.
TemporalFormula attach(const TemporalFormula& head, const TemporalFormula& tail) {
  switch (head.kind()) {
    case TemporalFormula::Kind::Atomic:
      return TemporalFormula::seq(head, tail);
    case TemporalFormula::Kind::Seq:
      return TemporalFormula::seq(head.left(), attach(head.right(), tail));
    case TemporalFormula::Kind::Choice:
      return TemporalFormula::choice(attach(head.left(), tail), attach(head.right(), tail));
  }
  return head;
}

LtlfFormula translate_normal(const TemporalFormula& f) {
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic:
      return LtlfFormula::until(translate_literal(f.task().cond), translate_literal(f.task().goal));
    case TemporalFormula::Kind::Seq: {
      const auto& head = f.left().task();
      auto rest = LtlfFormula::next(LtlfFormula::until(LtlfFormula::tt(), translate_normal(f.right())));
      return LtlfFormula::until(translate_literal(head.cond),
                                LtlfFormula::conj(translate_literal(head.goal), std::move(rest)));
    }
    case TemporalFormula::Kind::Choice:
      return LtlfFormula::disj(translate_normal(f.left()), translate_normal(f.right()));
  }
  throw std::logic_error("unreachable");
}

// holds[i] for every position i, bottom-up.
std::vector<unsigned char> positions(const LtlfFormula& g, std::span<const LabelSet> tr) {
  using K = LtlfFormula::Kind;
  const std::size_t n = tr.size();
  std::vector<unsigned char> out(n, 0);
  switch (g.kind()) {
    case K::TT:
      std::fill(out.begin(), out.end(), 1);
      break;
    case K::FF:
      break;
    case K::Prop:
    case K::NotProp:
      for (std::size_t i = 0; i < n; ++i) {
        const bool in = tr[i].contains(g.atom().name());
        out[i] = g.kind() == K::Prop ? in : !in;
      }
      break;
    case K::And:
    case K::Or: {
      const auto a = positions(g.lhs(), tr);
      const auto b = positions(g.rhs(), tr);
      for (std::size_t i = 0; i < n; ++i) out[i] = g.kind() == K::And ? (a[i] & b[i]) : (a[i] | b[i]);
      break;
    }
    case K::Next: {
      const auto a = positions(g.lhs(), tr);
      for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1];
      break;
    }
    case K::Until: {
      const auto a = positions(g.lhs(), tr);
      const auto b = positions(g.rhs(), tr);
      // a U b at i  <=>  b(i) or (a(i) and (a U b)(i+1))
      unsigned char later = 0;
      for (std::size_t i = n; i-- > 0;) {
        out[i] = b[i] | (a[i] & later);
        later = out[i];
      }
      break;
    }
  }
  return out;
}

}  // namespace

TemporalFormula normalize_seq(const TemporalFormula& f) {
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic:
      return f;
    case TemporalFormula::Kind::Seq:
      return attach(normalize_seq(f.left()), normalize_seq(f.right()));
    case TemporalFormula::Kind::Choice:
      return TemporalFormula::choice(normalize_seq(f.left()), normalize_seq(f.right()));
  }
  return f;
}

LtlfFormula translate(const TemporalFormula& f) { return translate_normal(normalize_seq(f)); }

bool eval_ltlf(const LtlfFormula& g, std::span<const LabelSet> trace) {
  if (trace.empty()) return false;
  return positions(g, trace)[0] != 0;
}

void for_each_trace(std::span<const Atom> atoms, std::size_t max_len, const std::function<void(const Trace&)>& fn) {
  if (atoms.size() > kMaxEnumAtoms || max_len > kMaxEnumLength)
    throw SizeGuardError("trace enumeration is limited to " + std::to_string(kMaxEnumAtoms) + " atoms and length " +
                         std::to_string(kMaxEnumLength));
  const std::size_t subsets = std::size_t{1} << atoms.size();
  std::vector<LabelSet> label_of(subsets);
  for (std::size_t m = 0; m < subsets; ++m)
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (m & (std::size_t{1} << k)) label_of[m].insert(atoms[k].name());

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    Trace tr;
    tr.steps.assign(len, label_of[0]);
    while (true) {
      fn(tr);
      std::size_t pos = len;
      while (pos > 0) {
        --pos;
        if (++digits[pos] < subsets) {
          tr.steps[pos] = label_of[digits[pos]];
          break;
        }
        digits[pos] = 0;
        tr.steps[pos] = label_of[0];
        if (pos == 0) {
          pos = len + 1;  // wrapped: done with this length
          break;
        }
      }
      if (pos == len + 1) break;
    }
  }
}

std::vector<Trace> enumerate_traces(std::span<const Atom> atoms, std::size_t max_len) {
  std::vector<Trace> out;
  for_each_trace(atoms, max_len, [&](const Trace& t) { out.push_back(t); });
  return out;
}

PreservationReport check_truth_preservation(const TemporalFormula& f, std::span<const Atom> atoms,
                                            std::size_t max_len) {
  PreservationReport rep;
  const auto g = translate(f);
  for_each_trace(atoms, max_len, [&](const Trace& tr) {
    ++rep.cases;
    if (satisfies(tr, f) != eval_ltlf(g, tr)) rep.disagreements.push_back(tr);
  });
  return rep;
}

}  // namespace sattl::ltlf
