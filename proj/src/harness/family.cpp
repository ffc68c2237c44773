#include "sattl/harness.hpp"

#include <algorithm>

namespace sattl::harness {

std::vector<Atom> default_atoms(std::size_t count) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

namespace {

std::vector<Literal> goal_literals(std::span<const Atom> atoms) {
  std::vector<Literal> out;
  for (const auto& a : atoms) {
    out.push_back(Literal::pos(a.name()));
    out.push_back(Literal::neg(a.name()));
  }
  if (atoms.size() >= 2) {
    out.push_back(Literal::any_of({SignedAtom::pos(atoms[0].name()), SignedAtom::pos(atoms[1].name())}));
    out.push_back(Literal::any_of({SignedAtom::neg(atoms[0].name()), SignedAtom::pos(atoms[1].name())}));
  }
  return out;
}

std::vector<Literal> cond_literals(std::span<const Atom> atoms) {
  std::vector<Literal> out{Literal::truth()};
  for (const auto& a : atoms) {
    out.push_back(Literal::pos(a.name()));
    out.push_back(Literal::neg(a.name()));
  }
  return out;
}

}  // namespace

std::vector<TemporalFormula> formula_family(std::span<const Atom> atoms) {
  std::vector<TemporalFormula> atomic;
  for (const auto& c : cond_literals(atoms))
    for (const auto& g : goal_literals(atoms)) atomic.push_back(TemporalFormula::atomic({c, g}));

  std::vector<TemporalFormula> out = atomic;
  // A representative slice of atomics keeps the composed layers tractable.
  std::vector<TemporalFormula> core;
  for (std::size_t i = 0; i < atomic.size(); i += 3) core.push_back(atomic[i]);

  std::vector<TemporalFormula> depth1;
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = 0; j < core.size(); ++j) {
      if ((i + j) % 2 == 0) depth1.push_back(TemporalFormula::seq(core[i], core[j]));
      else depth1.push_back(TemporalFormula::choice(core[i], core[j]));
    }
  out.insert(out.end(), depth1.begin(), depth1.end());

  std::mt19937_64 rng(0xfa111);
  for (int k = 0; k < 80; ++k) {
    const auto& d = depth1[std::uniform_int_distribution<std::size_t>(0, depth1.size() - 1)(rng)];
    const auto& e = std::uniform_int_distribution<int>(0, 1)(rng)
                        ? depth1[std::uniform_int_distribution<std::size_t>(0, depth1.size() - 1)(rng)]
                        : core[std::uniform_int_distribution<std::size_t>(0, core.size() - 1)(rng)];
    const bool left = std::uniform_int_distribution<int>(0, 1)(rng);
    const bool seq = std::uniform_int_distribution<int>(0, 1)(rng);
    const auto& l = left ? d : e;
    const auto& r = left ? e : d;
    out.push_back(seq ? TemporalFormula::seq(l, r) : TemporalFormula::choice(l, r));
  }
  return out;
}

Literal random_literal(std::span<const Atom> atoms, std::mt19937_64& rng, bool allow_true) {
  if (allow_true && std::uniform_int_distribution<int>(0, 3)(rng) == 0) return Literal::truth();
  const int k = std::uniform_int_distribution<int>(1, std::min<int>(2, static_cast<int>(atoms.size())))(rng);
  std::vector<SignedAtom> entries;
  for (int i = 0; i < k; ++i) {
    const auto& a = atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
    entries.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? SignedAtom::pos(a.name())
                                                                     : SignedAtom::neg(a.name()));
  }
  return Literal::any_of(std::move(entries));
}

AtomicTask random_task(std::span<const Atom> atoms, std::mt19937_64& rng) {
  return {random_literal(atoms, rng, true), random_literal(atoms, rng, false)};
}

TemporalFormula random_formula(std::size_t depth, std::span<const Atom> atoms, std::mt19937_64& rng) {
  if (depth == 0) return TemporalFormula::atomic(random_task(atoms, rng));
  const std::size_t other = std::uniform_int_distribution<std::size_t>(0, depth - 1)(rng);
  auto deep = random_formula(depth - 1, atoms, rng);
  auto shallow = random_formula(other, atoms, rng);
  const bool deep_left = std::uniform_int_distribution<int>(0, 1)(rng);
  auto& l = deep_left ? deep : shallow;
  auto& r = deep_left ? shallow : deep;
  return std::uniform_int_distribution<int>(0, 1)(rng) ? TemporalFormula::seq(l, r) : TemporalFormula::choice(l, r);
}

Trace random_trace(std::span<const Atom> atoms, std::size_t max_len, std::mt19937_64& rng) {
  Trace t;
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i) {
    LabelSet s;
    for (const auto& a : atoms)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) s.insert(a.name());
    t.steps.push_back(std::move(s));
  }
  return t;
}

}  // namespace sattl::harness
