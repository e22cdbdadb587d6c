#include "quandle/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "quandle/detail/parallel.hpp"
#include "quandle/errors.hpp"

namespace quandle {

std::vector<Element> generating_set(const QuandleTable& t) {
  const std::size_t n = t.order();
  std::vector<Element> gens;
  std::vector<bool> covered(n, false);
  for (Element x = 0; x < n; ++x) {
    if (covered[x]) continue;
    gens.push_back(x);
    covered = closure_mask(t, gens);
  }
  for (std::size_t i = gens.size(); i-- > 0 && gens.size() > 1;) {
    std::vector<Element> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    auto mask = closure_mask(t, rest);
    if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) gens = std::move(rest);
  }
  return gens;
}

namespace {

// How each element of src is reached from the generators: stage s holds the
// elements first generated once g_0..g_s are available.
struct Derivation {
  Element target;
  Element lhs;
  Element rhs;
  bool inverse;  // target = lhs *^-1 rhs, else lhs * rhs
};

struct Plan {
  std::vector<Element> gens;
  std::vector<std::vector<Derivation>> stages;
  std::vector<std::vector<Element>> members;  // closure of g_0..g_s, discovery order
};

Plan make_plan(const QuandleTable& t) {
  Plan plan;
  plan.gens = generating_set(t);
  const std::size_t n = t.order();
  std::vector<bool> in(n, false);
  std::vector<Element> members;
  for (Element g : plan.gens) {
    std::vector<Derivation> stage;
    if (!in[g]) {
      in[g] = true;
      members.push_back(g);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      const std::size_t sz = members.size();
      for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t j = 0; j < sz; ++j) {
          const Element a = members[i], b = members[j];
          const Element star = t.op(a, b);
          if (!in[star]) {
            in[star] = true;
            members.push_back(star);
            stage.push_back({star, a, b, false});
            grew = true;
          }
          const Element inv = t.op_inv(a, b);
          if (!in[inv]) {
            in[inv] = true;
            members.push_back(inv);
            stage.push_back({inv, a, b, true});
            grew = true;
          }
        }
      }
    }
    plan.stages.push_back(std::move(stage));
    plan.members.push_back(members);
  }
  return plan;
}

class HomSearch {
 public:
  HomSearch(const QuandleTable& src, const QuandleTable& dst, const Plan& plan, HomFilter filter)
      : src_(src), dst_(dst), plan_(plan), filter_(filter),
        f_(src.order(), kUnset), assigned_(src.order(), false) {}

  void run_from(Element first_image, std::vector<std::vector<Element>>& out) {
    out_ = &out;
    descend(0, first_image);
  }

 private:
  static constexpr Element kUnset = ~Element{0};

  bool wants_injective() const {
    return filter_ == HomFilter::Injective || filter_ == HomFilter::Bijective;
  }

  // Assigns g_s -> image, derives the rest of stage s, checks the law on
  // every pair touching the new elements, then recurses.
  void descend(std::size_t s, Element image) {
    const Element g = plan_.gens[s];
    std::vector<Element> touched;
    auto undo = [&] {
      for (Element x : touched) {
        f_[x] = kUnset;
        assigned_[x] = false;
      }
    };
    auto set = [&](Element x, Element v) {
      f_[x] = v;
      assigned_[x] = true;
      touched.push_back(x);
    };
    if (assigned_[g]) {
      // Generator already derived; cannot happen with a closure-based plan.
      if (f_[g] != image) return;
    } else {
      set(g, image);
    }
    for (const auto& d : plan_.stages[s]) {
      const Element v = d.inverse ? dst_.op_inv(f_[d.lhs], f_[d.rhs]) : dst_.op(f_[d.lhs], f_[d.rhs]);
      set(d.target, v);
    }
    if (!consistent(s, touched)) {
      undo();
      return;
    }
    if (s + 1 == plan_.gens.size()) {
      if (accept()) out_->push_back(f_);
    } else {
      for (Element v = 0; v < dst_.order(); ++v) descend(s + 1, v);
    }
    undo();
  }

  bool consistent(std::size_t s, const std::vector<Element>& fresh) const {
    const auto& members = plan_.members[s];
    for (Element x : fresh) {
      for (Element y : members) {
        if (f_[src_.op(x, y)] != dst_.op(f_[x], f_[y])) return false;
        if (f_[src_.op(y, x)] != dst_.op(f_[y], f_[x])) return false;
      }
    }
    if (wants_injective()) {
      std::vector<bool> seen(dst_.order(), false);
      for (Element x : members) {
        if (seen[f_[x]]) return false;
        seen[f_[x]] = true;
      }
    }
    return true;
  }

  bool accept() const {
    if (filter_ == HomFilter::All || filter_ == HomFilter::Injective) return true;
    std::vector<bool> hit(dst_.order(), false);
    std::size_t count = 0;
    for (Element v : f_)
      if (!hit[v]) {
        hit[v] = true;
        ++count;
      }
    return count == dst_.order();
  }

  const QuandleTable& src_;
  const QuandleTable& dst_;
  const Plan& plan_;
  HomFilter filter_;
  std::vector<Element> f_;
  std::vector<bool> assigned_;
  std::vector<std::vector<Element>>* out_ = nullptr;
};

}  // namespace

std::vector<QuandleMap> homs(const QuandleTable& src, const QuandleTable& dst, HomFilter filter,
                             unsigned jobs) {
  if (filter == HomFilter::Bijective && src.order() != dst.order()) return {};
  if (filter == HomFilter::Injective && src.order() > dst.order()) return {};
  if (filter == HomFilter::Surjective && src.order() < dst.order()) return {};
  const Plan plan = make_plan(src);

  std::vector<std::vector<std::vector<Element>>> slots(dst.order());
  detail::parallel_for(jobs, dst.order(), [&](std::size_t v) {
    HomSearch search(src, dst, plan, filter);
    search.run_from(static_cast<Element>(v), slots[v]);
  });
  std::vector<std::vector<Element>> found;
  for (auto& s : slots)
    for (auto& f : s) found.push_back(std::move(f));
  std::sort(found.begin(), found.end());

  std::vector<QuandleMap> out;
  out.reserve(found.size());
  for (auto& images : found) out.push_back(QuandleMap::make(src, dst, std::move(images)));
  return out;
}

FiniteMonoid FiniteMonoid::from_maps(const QuandleTable& t, std::vector<QuandleMap> maps) {
  FiniteMonoid m;
  m.carrier_ = t;
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  for (const auto& f : maps) {
    if (!(f.src() == t) || !(f.dst() == t)) {
      throw Error(ErrorKind::InvalidArgument, "monoid element is not a self-map of the carrier");
    }
  }
  m.elements_ = std::move(maps);
  for (std::size_t i = 0; i < m.elements_.size(); ++i) m.lookup_.emplace(m.elements_[i].images(), i);

  std::vector<Element> id(t.order());
  std::iota(id.begin(), id.end(), 0);
  auto it = m.lookup_.find(id);
  if (it == m.lookup_.end()) throw Error(ErrorKind::InvalidArgument, "identity missing from monoid");
  m.identity_ = it->second;

  for (std::size_t f = 0; f < m.size(); ++f) {
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (!m.find(compose_images(m.elements_[f].images(), m.elements_[g].images()))) {
        throw Error(ErrorKind::InvalidArgument, "monoid elements not closed under composition");
      }
    }
  }
  return m;
}

std::size_t FiniteMonoid::compose(std::size_t f, std::size_t g) const {
  return *find(compose_images(elements_[f].images(), elements_[g].images()));
}

std::optional<std::size_t> FiniteMonoid::find(std::span<const Element> images) const {
  auto it = lookup_.find(std::vector<Element>(images.begin(), images.end()));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FiniteMonoid::composition_table() const {
  const std::size_t k = size();
  std::vector<std::size_t> table(k * k);
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t g = 0; g < k; ++g) table[f * k + g] = compose(f, g);
  return table;
}

bool FiniteMonoid::associative() const {
  const auto table = composition_table();
  const std::size_t k = size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (table[table[a * k + b] * k + c] != table[a * k + table[b * k + c]]) return false;
  return true;
}

std::vector<std::size_t> FiniteMonoid::generators() const {
  std::vector<std::size_t> gens;
  std::vector<bool> reached(size(), false);
  reached[identity_] = true;
  std::vector<std::size_t> members{identity_};
  for (std::size_t candidate = 0; candidate < size(); ++candidate) {
    if (reached[candidate]) continue;
    gens.push_back(candidate);
    // Re-close the submonoid under right multiplication by all generators.
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t g : gens) {
        auto p = compose(members[i], g);
        if (!reached[p]) {
          reached[p] = true;
          members.push_back(p);
        }
      }
    }
  }
  return gens;
}

FiniteGroup FiniteGroup::from_maps(const QuandleTable& t, std::vector<QuandleMap> maps) {
  FiniteGroup g;
  static_cast<FiniteMonoid&>(g) = FiniteMonoid::from_maps(t, std::move(maps));
  g.inverses_.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.element(i);
    if (!f.bijective()) throw Error(ErrorKind::InvalidArgument, "group element is not a bijection");
    auto inv = g.find(inverse_permutation(f.images()));
    if (!inv) throw Error(ErrorKind::InvalidArgument, "group element inverse missing");
    g.inverses_[i] = *inv;
  }
  return g;
}

FiniteMonoid end_monoid(const QuandleTable& t, unsigned jobs) {
  return FiniteMonoid::from_maps(t, homs(t, t, HomFilter::All, jobs));
}

FiniteGroup aut_group(const QuandleTable& t, unsigned jobs) {
  return FiniteGroup::from_maps(t, homs(t, t, HomFilter::Bijective, jobs));
}

FiniteGroup inn_group(const QuandleTable& t) {
  std::set<Permutation> gens;
  for (Element q = 0; q < t.order(); ++q) gens.insert(right_translation(t, q));
  Permutation id(t.order());
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> seen{id};
  std::vector<Permutation> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      auto p = compose_images(g, queue[i]);
      if (seen.insert(p).second) queue.push_back(std::move(p));
    }
  }
  std::vector<QuandleMap> maps;
  maps.reserve(seen.size());
  for (const auto& p : seen) maps.push_back(QuandleMap::make(t, t, p));
  return FiniteGroup::from_maps(t, std::move(maps));
}

QuandleMap induced_on_quotient(const QuandleMap& f, const QuotientResult& q) {
  const auto& proj = q.projection;
  if (!(f.src() == proj.src()) || !(f.dst() == proj.src())) {
    throw Error(ErrorKind::InvalidArgument, "induced map needs an endomorphism of the quotiented quandle");
  }
  const std::size_t k = q.quotient.order();
  std::vector<Element> images(k, static_cast<Element>(k));
  std::vector<Element> witness(k, 0);
  for (Element x = 0; x < f.src().order(); ++x) {
    const Element cls = proj(x);
    const Element target = proj(f(x));
    if (images[cls] == k) {
      images[cls] = target;
      witness[cls] = x;
    } else if (images[cls] != target) {
      throw Error(ErrorKind::IllDefinedInducedMap,
                  "congruence not invariant: " + std::to_string(witness[cls]) + " ~ " +
                      std::to_string(x) + " but f(" + std::to_string(witness[cls]) + ") = " +
                      std::to_string(f(witness[cls])) + " and f(" + std::to_string(x) +
                      ") = " + std::to_string(f(x)) + " are not related");
    }
  }
  return QuandleMap::make(q.quotient, q.quotient, std::move(images));
}

QuandleMap induced_on_quotient(const QuandleMap& f, const Congruence& c) {
  return induced_on_quotient(f, quotient(f.src(), c));
}

FirstIsoWitness first_iso_witness(const QuandleMap& f) {
  auto q = quotient(f.src(), kernel(f));
  auto im = generated_subquandle(f.dst(), f.image());
  if (im.elements.size() != q.quotient.order()) {
    throw Error(ErrorKind::Internal, "image is not closed or kernel index mismatch");
  }
  auto reps = kernel(f).partition().representatives();
  std::vector<Element> images(q.quotient.order());
  for (std::size_t cls = 0; cls < reps.size(); ++cls) {
    auto pos = std::lower_bound(im.elements.begin(), im.elements.end(), f(reps[cls]));
    images[cls] = static_cast<Element>(pos - im.elements.begin());
  }
  auto iso = QuandleMap::make(q.quotient, im.table, std::move(images));
  if (!iso.bijective()) throw Error(ErrorKind::Internal, "first isomorphism witness not bijective");
  return FirstIsoWitness{std::move(q), std::move(im), std::move(iso)};
}

SeparationContext::SeparationContext(QuandleTable t)
    : t_(std::move(t)), all_(all_congruences(t_)) {
  const std::size_t n = t_.order();
  for (std::size_t k = 0; k <= n; ++k) {
    auto b = bounded_intersection(all_, n, std::max<std::size_t>(k, 1));
    quotients_.push_back(quotient(t_, b));
    bounded_.push_back(std::move(b));
  }
}

const Congruence& SeparationContext::separator(Element a, Element b) const {
  for (const auto& c : all_)
    if (!c.same_class(a, b)) return c;
  throw Error(ErrorKind::InvalidArgument, "no congruence separates equal elements");
}

EndSeparation separate_endomorphisms(const SeparationContext& ctx, const QuandleMap& f,
                                     const QuandleMap& g) {
  if (f.images() == g.images()) {
    throw Error(ErrorKind::InvalidArgument, "cannot separate an endomorphism from itself");
  }
  const auto& t = ctx.table();
  if (!(f.src() == t) || !(g.src() == t) || !(f.dst() == t) || !(g.dst() == t)) {
    throw Error(ErrorKind::InvalidArgument, "maps are not endomorphisms of the context quandle");
  }
  Element q0 = 0;
  while (f(q0) == g(q0)) ++q0;
  const auto& sep = ctx.separator(f(q0), g(q0));
  const auto& bar = ctx.bounded(sep.index());
  const auto& q = ctx.bounded_quotient(sep.index());
  auto f_bar = induced_on_quotient(f, q);
  auto g_bar = induced_on_quotient(g, q);
  if (f_bar.images() == g_bar.images()) {
    throw Error(ErrorKind::Internal, "induced maps coincide after separation");
  }
  return EndSeparation{q0, sep, bar, q, std::move(f_bar), std::move(g_bar)};
}

EndSeparation separate_endomorphisms(const QuandleTable& t, const QuandleMap& f,
                                     const QuandleMap& g) {
  if (f.images() == g.images()) {
    throw Error(ErrorKind::InvalidArgument, "cannot separate an endomorphism from itself");
  }
  SeparationContext ctx(t);
  return separate_endomorphisms(ctx, f, g);
}

}  // namespace quandle
