#include "sattl/parse.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "sattl/errors.hpp"

namespace sattl {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error("SyntaxError", "syntax error at byte " + std::to_string(offset) + ": " + detail +
                               (expected.empty() ? "" : " (expected one of: " + join(expected) + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { LParen, RParen, Plus, Minus, Bar, Choice, Semi, Until, Eventually, Always, True, Ident, Eof };

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Bar: return "'|'";
    case Tok::Choice: return "'++'";
    case Tok::Semi: return "';'";
    case Tok::Until: return "'U'";
    case Tok::Eventually: return "'<>'";
    case Tok::Always: return "'[]'";
    case Tok::True: return "'true'";
    case Tok::Ident: return "identifier";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (c == '+' && i + 1 < s.size() && s[i + 1] == '+') {
      out.push_back({Tok::Choice, at, "++"});
      i += 2;
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Eventually, at, "<>"});
      i += 2;
    } else if (c == '[' && i + 1 < s.size() && s[i + 1] == ']') {
      out.push_back({Tok::Always, at, "[]"});
      i += 2;
    } else if (c == '(') {
      out.push_back({Tok::LParen, at, "("}), ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, at, ")"}), ++i;
    } else if (c == '+') {
      out.push_back({Tok::Plus, at, "+"}), ++i;
    } else if (c == '-') {
      out.push_back({Tok::Minus, at, "-"}), ++i;
    } else if (c == '|') {
      out.push_back({Tok::Bar, at, "|"}), ++i;
    } else if (c == ';') {
      out.push_back({Tok::Semi, at, ";"}), ++i;
    } else if (c == 'U' && (i + 1 >= s.size() || !is_ident(s[i + 1]))) {
      out.push_back({Tok::Until, at, "U"}), ++i;
    } else if (is_ident(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      out.push_back({word == "true" ? Tok::True : Tok::Ident, at, word});
      i = j;
    } else {
      throw SyntaxError(at, {}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::Eof, s.size(), ""});
  return out;
}

// Recursive descent with backtracking between `lit U lit` and
// `( formula )`. Soft failures record the farthest offset reached together
// with the tokens that would have been accepted there.
class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TemporalFormula parse_all() {
    auto f = formula();
    if (!f || peek().kind != Tok::Eof) {
      if (f) fail({Tok::Choice, Tok::Semi, Tok::Eof});
      throw SyntaxError(far_offset_, expected_names(), far_offset_ >= last_offset() ? "unexpected end of input"
                                                                                    : "unexpected token");
    }
    return *f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  std::size_t last_offset() const { return toks_.back().offset; }

  void fail(std::initializer_list<Tok> expected) {
    const std::size_t off = peek().offset;
    if (off > far_offset_) {
      far_offset_ = off;
      far_expected_.clear();
    }
    if (off == far_offset_) {
      for (Tok t : expected)
        if (std::find(far_expected_.begin(), far_expected_.end(), t) == far_expected_.end())
          far_expected_.push_back(t);
    }
  }

  std::vector<std::string> expected_names() const {
    std::vector<std::string> out;
    for (Tok t : far_expected_) out.emplace_back(tok_name(t));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool accept(Tok t) {
    if (peek().kind == t) {
      ++pos_;
      return true;
    }
    fail({t});
    return false;
  }

  std::optional<TemporalFormula> formula() {
    auto lhs = seq();
    if (!lhs) return std::nullopt;
    while (peek().kind == Tok::Choice) {
      ++pos_;
      auto rhs = seq();
      if (!rhs) return std::nullopt;
      lhs = TemporalFormula::choice(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<TemporalFormula> seq() {
    auto lhs = unit();
    if (!lhs) return std::nullopt;
    while (peek().kind == Tok::Semi) {
      ++pos_;
      auto rhs = unit();
      if (!rhs) return std::nullopt;
      lhs = TemporalFormula::seq(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<TemporalFormula> unit() {
    const Tok k = peek().kind;
    if (k == Tok::Eventually || k == Tok::Always) {
      ++pos_;
      auto l = lit();
      if (!l) return std::nullopt;
      if (k == Tok::Eventually) return TemporalFormula::atomic({Literal::truth(), std::move(*l)});
      return TemporalFormula::atomic({std::move(*l), Literal::pos("end")});
    }
    const std::size_t save = pos_;
    if (auto cond = lit()) {
      if (accept(Tok::Until)) {
        auto goal = lit();
        if (!goal) return std::nullopt;
        return TemporalFormula::atomic({std::move(*cond), std::move(*goal)});
      }
    }
    pos_ = save;
    if (peek().kind == Tok::LParen) {
      ++pos_;
      auto inner = formula();
      if (!inner) return std::nullopt;
      if (!accept(Tok::RParen)) return std::nullopt;
      return inner;
    }
    fail({Tok::Eventually, Tok::Always});
    return std::nullopt;
  }

  std::optional<Literal> lit() {
    const std::size_t start = peek().offset;
    std::vector<Literal> terms;
    auto t = term();
    if (!t) return std::nullopt;
    terms.push_back(std::move(*t));
    while (peek().kind == Tok::Bar) {
      ++pos_;
      auto next = term();
      if (!next) return std::nullopt;
      terms.push_back(std::move(*next));
    }
    if (terms.size() == 1) return terms.front();
    std::vector<SignedAtom> entries;
    for (const auto& l : terms) {
      if (l.is_true()) throw SyntaxError(start, {}, "'true' cannot appear inside a disjunction");
      entries.insert(entries.end(), l.entries().begin(), l.entries().end());
    }
    return Literal::any_of(std::move(entries));
  }

  std::optional<Literal> term() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::True:
        ++pos_;
        return Literal::truth();
      case Tok::Plus:
      case Tok::Minus: {
        const Sign sign = tk.kind == Tok::Plus ? Sign::Positive : Sign::Negative;
        ++pos_;
        const Token& id = peek();
        if (id.kind == Tok::True)
          throw ReservedNameError("byte " + std::to_string(id.offset) + ": 'true' cannot carry a sign");
        if (id.kind != Tok::Ident) {
          fail({Tok::Ident});
          return std::nullopt;
        }
        if (id.text == "end" && sign == Sign::Negative)
          throw ReservedNameError("byte " + std::to_string(id.offset) + ": 'end' may only appear as '+end'");
        ++pos_;
        return Literal::any_of({SignedAtom{sign, Atom(id.text)}});
      }
      case Tok::LParen: {
        ++pos_;
        auto inner = lit();
        if (!inner) return std::nullopt;
        if (!accept(Tok::RParen)) return std::nullopt;
        return inner;
      }
      default:
        fail({Tok::True, Tok::Plus, Tok::Minus, Tok::LParen});
        return std::nullopt;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t far_offset_ = 0;
  std::vector<Tok> far_expected_;
};

void format_into(std::ostringstream& os, const TemporalFormula& f) {
  switch (f.kind()) {
    case TemporalFormula::Kind::Atomic:
      os << format_task(f.task());
      return;
    case TemporalFormula::Kind::Seq:
    case TemporalFormula::Kind::Choice:
      os << '(';
      format_into(os, f.left());
      os << (f.kind() == TemporalFormula::Kind::Seq ? ") ; (" : ") ++ (");
      format_into(os, f.right());
      os << ')';
      return;
  }
}

}  // namespace

TemporalFormula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

AtomicTask parse_atomic(std::string_view text) {
  auto f = parse_formula(text);
  if (!f.is_atomic()) throw SyntaxError(0, {}, "expected a single atomic task");
  return f.task();
}

std::string format_literal(const Literal& l) {
  if (l.is_true()) return "true";
  std::string out;
  for (const auto& e : l.entries()) {
    if (!out.empty()) out += " | ";
    out += e.sign == Sign::Positive ? "+ " : "- ";
    out += e.atom.name();
  }
  return l.entries().size() > 1 ? "(" + out + ")" : out;
}

std::string format_task(const AtomicTask& t) { return format_literal(t.cond) + " U " + format_literal(t.goal); }

std::string format_formula(const TemporalFormula& f) {
  std::ostringstream os;
  format_into(os, f);
  return os.str();
}

}  // namespace sattl
