#include "quandle/term.hpp"

#include <algorithm>
#include <cctype>

#include "quandle/errors.hpp"

namespace quandle {

Term Term::generator(std::size_t index) {
  return Term(std::make_shared<const Node>(Node{Kind::Generator, index, nullptr, nullptr}));
}

Term Term::star(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Star, 0, std::make_shared<const Term>(std::move(lhs)),
                                                std::make_shared<const Term>(std::move(rhs))}));
}

Term Term::star_inv(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::StarInv, 0,
                                                std::make_shared<const Term>(std::move(lhs)),
                                                std::make_shared<const Term>(std::move(rhs))}));
}

std::size_t Term::depth() const {
  if (is_generator()) return 0;
  return 1 + std::max(lhs().depth(), rhs().depth());
}

std::size_t Term::max_generator() const {
  if (is_generator()) return generator_index();
  return std::max(lhs().max_generator(), rhs().max_generator());
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_generator()) return a.generator_index() <=> b.generator_index();
  if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
  return a.rhs() <=> b.rhs();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> gens) : text_(text), gens_(gens) {}

  Term parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty term", std::nullopt, pos_);
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw ParseError("unbalanced ')'", std::nullopt, pos_);
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", std::nullopt, pos_);
    }
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Term term() {
    Term acc = factor();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
        const bool inverse = text_[pos_] == '/';
        ++pos_;
        Term rhs = factor();
        acc = inverse ? Term::star_inv(std::move(acc), std::move(rhs))
                      : Term::star(std::move(acc), std::move(rhs));
      } else {
        return acc;
      }
    }
  }

  Term factor() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("expected a generator or '('", std::nullopt, pos_);
    if (text_[pos_] == '(') {
      const std::size_t open = pos_++;
      Term inner = term();
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] != ')') {
        throw ParseError("unbalanced '(' opened here", std::nullopt, open);
      }
      ++pos_;
      return inner;
    }
    const std::size_t start = pos_;
    auto ident_char = [&](char c, bool first) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
             (!first && std::isdigit(static_cast<unsigned char>(c)));
    };
    if (!ident_char(text_[pos_], true)) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", std::nullopt, pos_);
    }
    while (pos_ < text_.size() && ident_char(text_[pos_], false)) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) {
      throw ParseError("unknown identifier '" + std::string(name) + "'", std::nullopt, start);
    }
    return Term::generator(static_cast<std::size_t>(it - gens_.begin()));
  }

  std::string_view text_;
  std::span<const std::string> gens_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, std::span<const std::string> generators) {
  return Parser(text, generators).parse();
}

std::string to_string(const Term& t, std::span<const std::string> generators) {
  if (t.is_generator()) return generators[t.generator_index()];
  std::string lhs = to_string(t.lhs(), generators);
  std::string rhs = to_string(t.rhs(), generators);
  // Left associativity: only a compound right operand needs parentheses.
  if (!t.rhs().is_generator()) rhs = "(" + rhs + ")";
  return lhs + (t.kind() == Term::Kind::Star ? "*" : "/") + rhs;
}

Element evaluate(const Term& t, const QuandleTable& q, std::span<const Element> assignment) {
  switch (t.kind()) {
    case Term::Kind::Generator:
      if (t.generator_index() >= assignment.size()) {
        throw Error(ErrorKind::InvalidArgument, "assignment misses a generator");
      }
      return assignment[t.generator_index()];
    case Term::Kind::Star:
      return q.op(evaluate(t.lhs(), q, assignment), evaluate(t.rhs(), q, assignment));
    case Term::Kind::StarInv:
      return q.op_inv(evaluate(t.lhs(), q, assignment), evaluate(t.rhs(), q, assignment));
  }
  throw Error(ErrorKind::Internal, "unreachable term kind");
}

std::vector<Term> terms_up_to_depth(std::size_t generators, std::size_t max_depth) {
  std::vector<Term> all;
  for (std::size_t g = 0; g < generators; ++g) all.push_back(Term::generator(g));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Term> next = all;
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (std::max(a.depth(), b.depth()) + 1 != d) continue;
        next.push_back(Term::star(a, b));
        next.push_back(Term::star_inv(a, b));
      }
    }
    all = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace quandle
