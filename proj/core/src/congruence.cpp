#include "quandle/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "quandle/detail/parallel.hpp"
#include "quandle/errors.hpp"

namespace quandle {

namespace {

std::vector<std::size_t> normalize(std::span<const std::size_t> labels, std::size_t& index) {
  std::vector<std::size_t> out(labels.size());
  std::vector<std::pair<std::size_t, std::size_t>> seen;  // raw label -> normalized
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], seen.size());
      out[i] = seen.size() - 1;
    } else {
      out[i] = it->second;
    }
  }
  index = seen.size();
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Saturates the union-find under all unary translations x -> x*c, c*x,
// x/c, c/x. Pending holds merged pairs whose consequences are not yet
// propagated.
Partition saturate(const QuandleTable& t, UnionFind& uf, std::vector<ElementPair> pending) {
  const std::size_t n = t.order();
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    for (Element c = 0; c < n; ++c) {
      const ElementPair images[] = {{t.op(a, c), t.op(b, c)},
                                    {t.op(c, a), t.op(c, b)},
                                    {t.op_inv(a, c), t.op_inv(b, c)},
                                    {t.op_inv(c, a), t.op_inv(c, b)}};
      for (auto [x, y] : images)
        if (uf.unite(x, y)) pending.emplace_back(x, y);
    }
  }
  std::vector<std::size_t> roots(n);
  for (std::size_t x = 0; x < n; ++x) roots[x] = uf.find(x);
  return Partition::from_labels(roots);
}

}  // namespace

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  if (labels.empty()) throw Error(ErrorKind::MalformedPartition, "partition of an empty set");
  std::size_t index = 0;
  auto normalized = normalize(labels, index);
  return Partition(std::move(normalized), index);
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks) {
  std::vector<std::size_t> labels(n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error(ErrorKind::MalformedPartition, "empty block");
    for (Element x : blocks[b]) {
      if (x >= n || labels[x] != n) {
        throw Error(ErrorKind::MalformedPartition,
                    "element " + std::to_string(x) + " out of range or repeated");
      }
      labels[x] = b;
    }
  }
  if (std::find(labels.begin(), labels.end(), n) != labels.end()) {
    throw Error(ErrorKind::MalformedPartition, "blocks do not cover every element");
  }
  return from_labels(labels);
}

Partition Partition::diagonal(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

Partition Partition::full(std::size_t n) { return from_labels(std::vector<std::size_t>(n, 0)); }

bool Partition::refines(const Partition& other) const {
  if (other.size() != size()) return false;
  // Each class here must land inside a single class of other.
  std::vector<std::size_t> target(index_, other.index_);
  for (std::size_t x = 0; x < size(); ++x) {
    auto& slot = target[labels_[x]];
    if (slot == other.index_) slot = other.labels_[x];
    else if (slot != other.labels_[x]) return false;
  }
  return true;
}

Partition Partition::meet(const Partition& other) const {
  if (other.size() != size()) throw Error(ErrorKind::MalformedPartition, "size mismatch in meet");
  std::vector<std::size_t> combined(size());
  for (std::size_t x = 0; x < size(); ++x) combined[x] = labels_[x] * other.index_ + other.labels_[x];
  return from_labels(combined);
}

std::vector<std::vector<Element>> Partition::blocks() const {
  std::vector<std::vector<Element>> out(index_);
  for (std::size_t x = 0; x < size(); ++x) out[labels_[x]].push_back(static_cast<Element>(x));
  return out;
}

std::vector<Element> Partition::representatives() const {
  std::vector<Element> reps(index_, 0);
  std::vector<bool> done(index_, false);
  for (std::size_t x = 0; x < size(); ++x) {
    if (!done[labels_[x]]) {
      done[labels_[x]] = true;
      reps[labels_[x]] = static_cast<Element>(x);
    }
  }
  return reps;
}

namespace {

// First (a, b, c) with a ~ b but one of the four translations by c breaking
// the relation.
std::optional<std::string> compatibility_witness(const QuandleTable& t, const Partition& p) {
  const std::size_t n = t.order();
  if (p.size() != n) {
    throw Error(ErrorKind::MalformedPartition, "partition has " + std::to_string(p.size()) +
                                                   " elements, quandle has " + std::to_string(n));
  }
  // Checking each element against its class representative suffices by
  // transitivity.
  auto reps = p.representatives();
  for (Element a = 0; a < n; ++a) {
    const Element r = reps[p.label(a)];
    if (r == a) continue;
    for (Element c = 0; c < n; ++c) {
      if (!p.same_class(t.op(a, c), t.op(r, c)) || !p.same_class(t.op(c, a), t.op(c, r)) ||
          !p.same_class(t.op_inv(a, c), t.op_inv(r, c)) ||
          !p.same_class(t.op_inv(c, a), t.op_inv(c, r))) {
        return std::to_string(r) + " ~ " + std::to_string(a) + " is not preserved by translation with " +
               std::to_string(c);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_congruence(const QuandleTable& t, const Partition& p) {
  return !compatibility_witness(t, p).has_value();
}

Congruence Congruence::verified(const QuandleTable& t, const Partition& p) {
  if (auto w = compatibility_witness(t, p)) {
    throw Error(ErrorKind::NotACongruence, "not a congruence: " + *w);
  }
  return Congruence(p);
}

Congruence congruence_closure(const QuandleTable& t, std::span<const ElementPair> pairs) {
  UnionFind uf(t.order());
  std::vector<ElementPair> pending;
  for (auto [a, b] : pairs) {
    if (a >= t.order() || b >= t.order()) {
      throw Error(ErrorKind::InvalidArgument, "pair element out of range");
    }
    if (uf.unite(a, b)) pending.emplace_back(a, b);
  }
  return detail::CongruenceAccess::make(saturate(t, uf, std::move(pending)));
}

Congruence join(const QuandleTable& t, const Congruence& a, const Congruence& b) {
  UnionFind uf(t.order());
  std::vector<ElementPair> pending;
  for (const auto* c : {&a, &b}) {
    auto reps = c->partition().representatives();
    for (Element x = 0; x < t.order(); ++x) {
      const Element r = reps[c->label(x)];
      if (uf.unite(r, x)) pending.emplace_back(r, x);
    }
  }
  return detail::CongruenceAccess::make(saturate(t, uf, std::move(pending)));
}

std::vector<Congruence> all_congruences(const QuandleTable& t, unsigned jobs) {
  const std::size_t n = t.order();
  std::vector<ElementPair> pairs;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  std::vector<std::optional<Congruence>> principal_slots(pairs.size());
  detail::parallel_for(jobs, pairs.size(), [&](std::size_t i) {
    principal_slots[i] = congruence_closure(t, std::span(&pairs[i], 1));
  });
  std::set<Congruence> principal;
  for (auto& c : principal_slots) principal.insert(std::move(*c));

  // Every congruence is the join of the principal congruences below it, so
  // closing {diagonal} under joins with principals reaches all of them.
  std::set<Congruence> found{Congruence::diagonal(n)};
  std::vector<Congruence> frontier{Congruence::diagonal(n)};
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier) {
      for (const auto& p : principal) {
        if (p.refines(c)) continue;
        auto j = join(t, c, p);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

std::vector<Congruence> congruences_with_index(std::span<const Congruence> all, std::size_t k,
                                               IndexFilter filter) {
  std::vector<Congruence> out;
  for (const auto& c : all) {
    if (filter == IndexFilter::Exactly ? c.index() == k : c.index() <= k) out.push_back(c);
  }
  return out;
}

QuotientResult quotient(const QuandleTable& t, const Partition& p) {
  return quotient(t, Congruence::verified(t, p));
}

QuotientResult quotient(const QuandleTable& t, const Congruence& c) {
  if (c.size() != t.order()) {
    throw Error(ErrorKind::MalformedPartition, "congruence size does not match the quandle");
  }
  const std::size_t k = c.index();
  auto reps = c.partition().representatives();
  std::vector<Element> cells(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      cells[a * k + b] = static_cast<Element>(c.label(t.op(reps[a], reps[b])));
  auto q = QuandleTable::from_cells(k, std::move(cells));
  std::vector<Element> images(t.order());
  for (Element x = 0; x < t.order(); ++x) images[x] = static_cast<Element>(c.label(x));
  auto projection = QuandleMap::make(t, q, std::move(images));
  return QuotientResult{std::move(q), std::move(projection)};
}

Congruence kernel(const QuandleMap& f) {
  std::vector<std::size_t> labels(f.images().begin(), f.images().end());
  return detail::CongruenceAccess::make(Partition::from_labels(labels));
}

namespace {

bool invariant_under(const Congruence& c, std::span<const QuandleMap> maps) {
  if (maps.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "empty map list: the identity is always an endomorphism");
  }
  const std::size_t n = c.size();
  auto reps = c.partition().representatives();
  for (const auto& f : maps) {
    if (f.images().size() != n) throw Error(ErrorKind::InvalidArgument, "map size mismatch");
    for (Element x = 0; x < n; ++x) {
      if (!c.same_class(f(x), f(reps[c.label(x)]))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_fully_invariant(const QuandleTable& t, const Congruence& c,
                        std::span<const QuandleMap> endos) {
  if (c.size() != t.order()) throw Error(ErrorKind::MalformedPartition, "size mismatch");
  return invariant_under(c, endos);
}

bool is_characteristic(const QuandleTable& t, const Congruence& c,
                       std::span<const QuandleMap> auts) {
  if (c.size() != t.order()) throw Error(ErrorKind::MalformedPartition, "size mismatch");
  return invariant_under(c, auts);
}

Congruence bounded_intersection(std::span<const Congruence> all, std::size_t order,
                                std::size_t n) {
  auto result = Congruence::full(order);
  for (const auto& c : all)
    if (c.index() <= n) result = result.meet(c);
  return result;
}

Congruence bounded_intersection(const QuandleTable& t, std::size_t n) {
  auto all = all_congruences(t);
  return bounded_intersection(all, t.order(), n);
}

Congruence profinite_kernel(const QuandleTable& t) {
  return bounded_intersection(t, t.order());
}

}  // namespace quandle
