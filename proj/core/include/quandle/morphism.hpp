#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "quandle/congruence.hpp"
#include "quandle/map.hpp"
#include "quandle/table.hpp"

namespace quandle {

enum class HomFilter { All, Surjective, Injective, Bijective };

// Greedy minimal generating sequence: repeatedly adds the smallest element
// outside the current closure, then drops generators that turn out to be
// redundant.
std::vector<Element> generating_set(const QuandleTable& t);

// Every homomorphism src -> dst passing the filter, sorted by image array.
// Backtracks over the images of a generating set and propagates through
// * and *^-1; jobs > 1 splits on the first generator's image.
std::vector<QuandleMap> homs(const QuandleTable& src, const QuandleTable& dst,
                             HomFilter filter = HomFilter::All, unsigned jobs = 1);

struct ImagesHash {
  std::size_t operator()(const std::vector<Element>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Element x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

// Finite transformation monoid on a quandle. Composition convention:
// compose(f, g) = f o g, (f o g)(x) = f(g(x)). Elements are sorted by their
// image arrays; ids index into that order.
class FiniteMonoid {
 public:
  // Throws ErrorKind::InvalidArgument if the maps are not closed under
  // composition or do not contain the identity.
  static FiniteMonoid from_maps(const QuandleTable& t, std::vector<QuandleMap> maps);

  std::size_t size() const { return elements_.size(); }
  const QuandleTable& carrier() const { return carrier_; }
  const QuandleMap& element(std::size_t id) const { return elements_[id]; }
  const std::vector<QuandleMap>& elements() const { return elements_; }
  std::size_t identity() const { return identity_; }
  std::size_t compose(std::size_t f, std::size_t g) const;
  std::optional<std::size_t> find(std::span<const Element> images) const;

  // Row-major k x k table, comp[f * k + g] = id of f o g.
  std::vector<std::size_t> composition_table() const;
  // Exhaustive (k^3) associativity check.
  bool associative() const;
  // Greedy generating list: ids not reachable from the previous ones.
  std::vector<std::size_t> generators() const;

 protected:
  FiniteMonoid() = default;

  QuandleTable carrier_ = trivial(1);
  std::vector<QuandleMap> elements_;
  std::unordered_map<std::vector<Element>, std::size_t, ImagesHash> lookup_;
  std::size_t identity_ = 0;
};

class FiniteGroup : public FiniteMonoid {
 public:
  // Additionally requires every element to be a bijection whose inverse is
  // in the set.
  static FiniteGroup from_maps(const QuandleTable& t, std::vector<QuandleMap> maps);

  std::size_t inverse(std::size_t id) const { return inverses_[id]; }

 private:
  std::vector<std::size_t> inverses_;
};

FiniteMonoid end_monoid(const QuandleTable& t, unsigned jobs = 1);
FiniteGroup aut_group(const QuandleTable& t, unsigned jobs = 1);
// Subgroup of Aut(t) generated by the right translations.
FiniteGroup inn_group(const QuandleTable& t);

// The endomorphism [x] -> [f(x)] of t/c. Throws
// ErrorKind::IllDefinedInducedMap with a witness pair when c is not
// f-invariant.
QuandleMap induced_on_quotient(const QuandleMap& f, const QuotientResult& q);
QuandleMap induced_on_quotient(const QuandleMap& f, const Congruence& c);

struct FirstIsoWitness {
  QuotientResult quotient;  // src / ker(f)
  Subquandle image;         // Im(f) inside dst
  QuandleMap iso;           // [x] -> f(x), as a map quotient -> image
};

FirstIsoWitness first_iso_witness(const QuandleMap& f);

struct EndSeparation {
  Element q0;               // first point with f(q0) != g(q0)
  Congruence separating;    // minimal-index congruence splitting f(q0), g(q0)
  Congruence alpha_bar;     // bounded intersection at that index
  QuotientResult quotient;  // t / alpha_bar
  QuandleMap f_bar;
  QuandleMap g_bar;
};

// Caches the congruence lattice and the per-index bounded intersections so
// that many endomorphism pairs of one quandle can be separated cheaply.
class SeparationContext {
 public:
  explicit SeparationContext(QuandleTable t);

  const QuandleTable& table() const { return t_; }
  const std::vector<Congruence>& congruences() const { return all_; }
  const Congruence& bounded(std::size_t index) const { return bounded_[index]; }
  const QuotientResult& bounded_quotient(std::size_t index) const { return quotients_[index]; }
  // Minimal-index congruence (first in sorted order) not relating a and b.
  const Congruence& separator(Element a, Element b) const;

 private:
  QuandleTable t_;
  std::vector<Congruence> all_;
  std::vector<Congruence> bounded_;      // by index 0..n (0 unused)
  std::vector<QuotientResult> quotients_;
};

// Throws ErrorKind::InvalidArgument if f == g.
EndSeparation separate_endomorphisms(const QuandleTable& t, const QuandleMap& f,
                                     const QuandleMap& g);
EndSeparation separate_endomorphisms(const SeparationContext& ctx, const QuandleMap& f,
                                     const QuandleMap& g);

}  // namespace quandle
