#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quandle/table.hpp"

namespace quandle {

// Immutable syntax tree over generator indices with the binary operations
// * (Star) and *^-1 (StarInv, written '/').
class Term {
 public:
  enum class Kind { Generator, Star, StarInv };

  static Term generator(std::size_t index);
  static Term star(Term lhs, Term rhs);
  static Term star_inv(Term lhs, Term rhs);

  Kind kind() const { return node_->kind; }
  bool is_generator() const { return node_->kind == Kind::Generator; }
  std::size_t generator_index() const { return node_->index; }
  const Term& lhs() const { return *node_->lhs; }
  const Term& rhs() const { return *node_->rhs; }

  std::size_t depth() const;
  // Largest generator index occurring in the term.
  std::size_t max_generator() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;
    std::shared_ptr<const Term> lhs, rhs;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar:
//   term   := factor | term '*' factor | term '/' factor
//   factor := ident | '(' term ')'
// '*' and '/' share one precedence level and associate to the left.
// Throws ParseError carrying the byte offset of the problem.
Term parse_term(std::string_view text, std::span<const std::string> generators);

// Prints with the fewest parentheses that parse back to the same tree.
std::string to_string(const Term& t, std::span<const std::string> generators);

// Bottom-up evaluation; assignment[g] is the image of generator g.
Element evaluate(const Term& t, const QuandleTable& q, std::span<const Element> assignment);

// All terms of depth <= max_depth over n generators, sorted.
std::vector<Term> terms_up_to_depth(std::size_t generators, std::size_t max_depth);

}  // namespace quandle
