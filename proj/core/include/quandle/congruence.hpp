#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "quandle/map.hpp"
#include "quandle/table.hpp"

namespace quandle {

// A set partition of {0..n-1} in normal form: labels[i] is the class of i,
// and classes are numbered in order of first occurrence.
class Partition {
 public:
  // Normalizes arbitrary labels. Throws ErrorKind::MalformedPartition for an
  // empty label list.
  static Partition from_labels(std::span<const std::size_t> labels);
  // Throws ErrorKind::MalformedPartition unless the blocks cover {0..n-1}
  // exactly once.
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks);
  static Partition diagonal(std::size_t n);
  static Partition full(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t index() const { return index_; }
  const std::vector<std::size_t>& labels() const { return labels_; }
  std::size_t label(Element x) const { return labels_[x]; }
  bool same_class(Element a, Element b) const { return labels_[a] == labels_[b]; }
  bool is_diagonal() const { return index_ == labels_.size(); }

  // Relation inclusion: every pair related here is related in other.
  bool refines(const Partition& other) const;
  // Coarsest common refinement (pairwise relation intersection).
  Partition meet(const Partition& other) const;
  std::vector<std::vector<Element>> blocks() const;
  // Smallest element of each class, by class id.
  std::vector<Element> representatives() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // Sorted by (index, labels lexicographic).
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    return a.labels_ <=> b.labels_;
  }

 private:
  Partition(std::vector<std::size_t> labels, std::size_t index)
      : labels_(std::move(labels)), index_(index) {}

  std::vector<std::size_t> labels_;
  std::size_t index_ = 0;
};

class Congruence;
namespace detail {
struct CongruenceAccess;
}

// A partition known to be compatible with * and *^-1 on a specific table.
// Instances only come from a compatibility check or from constructions that
// preserve compatibility (closure, kernel, meet).
class Congruence {
 public:
  // Throws ErrorKind::NotACongruence with a witness when p is not compatible,
  // ErrorKind::MalformedPartition when sizes disagree.
  static Congruence verified(const QuandleTable& t, const Partition& p);
  static Congruence diagonal(std::size_t n) { return Congruence(Partition::diagonal(n)); }
  static Congruence full(std::size_t n) { return Congruence(Partition::full(n)); }

  const Partition& partition() const { return p_; }
  std::size_t size() const { return p_.size(); }
  std::size_t index() const { return p_.index(); }
  const std::vector<std::size_t>& labels() const { return p_.labels(); }
  std::size_t label(Element x) const { return p_.label(x); }
  bool same_class(Element a, Element b) const { return p_.same_class(a, b); }
  bool is_diagonal() const { return p_.is_diagonal(); }
  bool refines(const Congruence& other) const { return p_.refines(other.p_); }
  Congruence meet(const Congruence& other) const { return Congruence(p_.meet(other.p_)); }

  friend bool operator==(const Congruence&, const Congruence&) = default;
  friend std::strong_ordering operator<=>(const Congruence& a, const Congruence& b) {
    return a.p_ <=> b.p_;
  }

 private:
  explicit Congruence(Partition p) : p_(std::move(p)) {}
  friend struct detail::CongruenceAccess;

  Partition p_;
};

struct QuotientResult {
  QuandleTable quotient;
  QuandleMap projection;  // x -> class id of x
};

using ElementPair = std::pair<Element, Element>;

// Throws ErrorKind::MalformedPartition when p does not partition t's elements.
bool is_congruence(const QuandleTable& t, const Partition& p);

// Least congruence relating every given pair.
Congruence congruence_closure(const QuandleTable& t, std::span<const ElementPair> pairs);

// Least congruence containing both.
Congruence join(const QuandleTable& t, const Congruence& a, const Congruence& b);

// Every congruence, duplicate-free, sorted by (index, labels). Principal
// congruences are saturated under joins; jobs > 1 splits the principal
// closures across threads without changing the output.
std::vector<Congruence> all_congruences(const QuandleTable& t, unsigned jobs = 1);

enum class IndexFilter { Exactly, AtMost };
std::vector<Congruence> congruences_with_index(std::span<const Congruence> all, std::size_t k,
                                               IndexFilter filter);

// Throws ErrorKind::NotACongruence when p is not a congruence on t.
QuotientResult quotient(const QuandleTable& t, const Partition& p);
QuotientResult quotient(const QuandleTable& t, const Congruence& c);

// Fibers of f.
Congruence kernel(const QuandleMap& f);

// Throws ErrorKind::InvalidArgument if endos is empty.
bool is_fully_invariant(const QuandleTable& t, const Congruence& c,
                        std::span<const QuandleMap> endos);
bool is_characteristic(const QuandleTable& t, const Congruence& c,
                       std::span<const QuandleMap> auts);

// Intersection of all congruences of index at most n. The full congruence
// always takes part, so the result is defined for every n >= 1.
Congruence bounded_intersection(const QuandleTable& t, std::size_t n);
Congruence bounded_intersection(std::span<const Congruence> all, std::size_t order,
                                std::size_t n);

// Intersection of all (necessarily finite-index) congruences.
Congruence profinite_kernel(const QuandleTable& t);

namespace detail {
struct CongruenceAccess {
  static Congruence make(Partition p) { return Congruence(std::move(p)); }
};
}  // namespace detail

}  // namespace quandle
