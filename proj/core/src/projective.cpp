#include "quandle/projective.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "quandle/errors.hpp"
#include "quandle/io.hpp"

namespace quandle {

DirectedPreorder DirectedPreorder::chain(std::size_t m) {
  DirectedPreorder p{m, std::vector<bool>(m * m, false)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) p.relation[i * m + j] = true;
  return p;
}

DirectedPreorder DirectedPreorder::from_pairs(std::size_t m, std::span<const NodePair> pairs) {
  DirectedPreorder p{m, std::vector<bool>(m * m, false)};
  for (std::size_t i = 0; i < m; ++i) p.relation[i * m + i] = true;
  for (auto [i, j] : pairs) {
    if (i >= m || j >= m) throw Error(ErrorKind::InvalidSystem, "relation mentions a missing node");
    p.relation[i * m + j] = true;
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (p.relation[i * m + k])
        for (std::size_t j = 0; j < m; ++j)
          if (p.relation[k * m + j]) p.relation[i * m + j] = true;
  return p;
}

std::optional<std::string> DirectedPreorder::defect() const {
  if (relation.size() != size * size) return "relation matrix has the wrong size";
  if (size == 0) return "a directed set is non-empty";
  for (std::size_t i = 0; i < size; ++i)
    if (!le(i, i)) return "not reflexive at node " + std::to_string(i);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (le(i, j))
        for (std::size_t k = 0; k < size; ++k)
          if (le(j, k) && !le(i, k)) {
            return "not transitive: " + std::to_string(i) + " <= " + std::to_string(j) + " <= " +
                   std::to_string(k);
          }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      bool bounded = false;
      for (std::size_t k = 0; k < size && !bounded; ++k) bounded = le(i, k) && le(j, k);
      if (!bounded) {
        return "not directed: nodes " + std::to_string(i) + " and " + std::to_string(j) +
               " have no upper bound";
      }
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> DirectedPreorder::tops() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < size; ++t) {
    bool top = true;
    for (std::size_t i = 0; i < size && top; ++i) top = le(i, t);
    if (top) out.push_back(t);
  }
  return out;
}

std::vector<Element> ProjectiveSystem::phi(std::size_t i, std::size_t j) const {
  if (auto it = maps.find({i, j}); it != maps.end()) return it->second;
  if (i == j && i < quandles.size()) {
    std::vector<Element> id(quandles[i].order());
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  throw Error(ErrorKind::InvalidSystem,
              "missing connecting map phi_" + std::to_string(i) + "," + std::to_string(j));
}

SystemReport validate_system(const ProjectiveSystem& s) {
  SystemReport r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  if (s.quandles.size() != s.order.size) {
    fail("system has " + std::to_string(s.quandles.size()) + " quandles for " +
         std::to_string(s.order.size) + " nodes");
    return r;
  }
  if (auto d = s.order.defect()) {
    fail("preorder " + *d);
    return r;
  }
  const std::size_t m = s.size();
  bool maps_ok = true;
  for (const auto& [key, images] : s.maps) {
    auto [i, j] = key;
    const std::string name = "phi_" + std::to_string(i) + "," + std::to_string(j);
    if (i >= m || j >= m || !s.order.le(i, j)) {
      fail(name + " given but " + std::to_string(i) + " <= " + std::to_string(j) + " does not hold");
      maps_ok = false;
      continue;
    }
    if (!is_homomorphism(s.quandles[j], s.quandles[i], images)) {
      fail(name + " is not a homomorphism Q_" + std::to_string(j) + " -> Q_" + std::to_string(i));
      maps_ok = false;
      continue;
    }
    if (i == j) {
      for (Element x = 0; x < images.size(); ++x) {
        if (images[x] != x) {
          fail(name + " is not the identity");
          maps_ok = false;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && s.order.le(i, j) && !s.maps.contains({i, j})) {
        fail("missing phi_" + std::to_string(i) + "," + std::to_string(j));
        maps_ok = false;
      }
    }
  }
  if (!maps_ok) return r;

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!s.order.le(i, j)) continue;
      const auto phi_ij = s.phi(i, j);
      for (std::size_t k = 0; k < m; ++k) {
        if (!s.order.le(j, k)) continue;
        if (compose_images(phi_ij, s.phi(j, k)) != s.phi(i, k)) {
          fail("cocycle violated: phi_" + std::to_string(i) + "," + std::to_string(j) + " o phi_" +
               std::to_string(j) + "," + std::to_string(k) + " != phi_" + std::to_string(i) + "," +
               std::to_string(k));
          if (!r.first_cocycle_violation) r.first_cocycle_violation = std::array{i, j, k};
        }
      }
    }
  }
  return r;
}

std::optional<std::size_t> LimitResult::find(std::span<const Element> thread) const {
  std::vector<Element> key(thread.begin(), thread.end());
  auto it = std::lower_bound(threads.begin(), threads.end(), key);
  if (it == threads.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - threads.begin());
}

namespace {

void require_valid(const ProjectiveSystem& s) {
  auto report = validate_system(s);
  if (!report.valid) throw Error(ErrorKind::InvalidSystem, report.violations.front());
}

// Builds the componentwise operation and projections on sorted threads.
LimitResult finish_limit(const ProjectiveSystem& s, std::vector<std::vector<Element>> threads) {
  LimitResult lim;
  std::sort(threads.begin(), threads.end());
  threads.erase(std::unique(threads.begin(), threads.end()), threads.end());
  lim.threads = std::move(threads);
  if (lim.threads.empty()) return lim;
  const std::size_t k = lim.threads.size();
  const std::size_t m = s.size();
  std::vector<Element> cells(k * k);
  std::vector<Element> z(m);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t i = 0; i < m; ++i) z[i] = s.quandles[i].op(lim.threads[a][i], lim.threads[b][i]);
      auto idx = lim.find(z);
      if (!idx) throw Error(ErrorKind::Internal, "thread set not closed under the operation");
      cells[a * k + b] = static_cast<Element>(*idx);
    }
  }
  lim.table = QuandleTable::from_cells(k, std::move(cells));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Element> images(k);
    for (std::size_t a = 0; a < k; ++a) images[a] = lim.threads[a][i];
    lim.projections.push_back(QuandleMap::make(*lim.table, s.quandles[i], std::move(images)));
  }
  return lim;
}

}  // namespace

LimitResult limit(const ProjectiveSystem& s) {
  require_valid(s);
  const std::size_t top = s.order.tops().front();
  std::vector<std::vector<Element>> maps_from_top;
  for (std::size_t i = 0; i < s.size(); ++i) maps_from_top.push_back(s.phi(i, top));
  std::vector<std::vector<Element>> threads;
  for (Element x = 0; x < s.quandles[top].order(); ++x) {
    std::vector<Element> thread(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) thread[i] = maps_from_top[i][x];
    threads.push_back(std::move(thread));
  }
  return finish_limit(s, std::move(threads));
}

LimitResult limit_by_product_filter(const ProjectiveSystem& s, std::size_t max_product) {
  require_valid(s);
  std::vector<std::size_t> orders;
  std::size_t total = 1;
  for (const auto& q : s.quandles) {
    orders.push_back(q.order());
    total *= q.order();
    if (total > max_product) throw Error(ErrorKind::StageTooLarge, "product too large to filter");
  }
  ProductIndexer idx(orders);
  std::vector<std::vector<Element>> threads;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    auto tuple = idx.coords(p);
    bool coherent = true;
    for (const auto& [key, images] : s.maps) {
      if (images[tuple[key.second]] != tuple[key.first]) {
        coherent = false;
        break;
      }
    }
    if (coherent) threads.push_back(std::move(tuple));
  }
  return finish_limit(s, std::move(threads));
}

SurjectivityReport check_surjective_projections(const ProjectiveSystem& s) {
  require_valid(s);
  SurjectivityReport r;
  for (const auto& [key, images] : s.maps) {
    std::vector<bool> hit(s.quandles[key.first].order(), false);
    for (Element v : images) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      r.hypothesis_met = false;
      r.non_surjective_maps.push_back(key);
    }
  }
  auto lim = limit(s);
  r.limit_nonempty = !lim.empty();
  if (r.limit_nonempty) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!lim.projections[i].surjective()) r.non_surjective_projections.push_back(i);
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) r.non_surjective_projections.push_back(i);
  }
  return r;
}

MediatingMap mediating_map(const ProjectiveSystem& s, const LimitResult& lim,
                           const QuandleTable& r, std::span<const QuandleMap> fam) {
  if (fam.size() != s.size()) {
    throw Error(ErrorKind::IncompatibleFamily, "family needs one map per node");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(fam[i].src() == r) || !(fam[i].dst() == s.quandles[i])) {
      throw Error(ErrorKind::IncompatibleFamily,
                  "family map " + std::to_string(i) + " has the wrong source or target");
    }
  }
  for (const auto& [key, images] : s.maps) {
    auto [i, j] = key;
    for (Element x = 0; x < r.order(); ++x) {
      if (images[fam[j](x)] != fam[i](x)) {
        throw Error(ErrorKind::IncompatibleFamily,
                    "phi_" + std::to_string(i) + "," + std::to_string(j) + " o fam_" +
                        std::to_string(j) + " != fam_" + std::to_string(i) + " at x = " +
                        std::to_string(x));
      }
    }
  }
  if (!lim.table) throw Error(ErrorKind::Internal, "compatible family into an empty limit");

  std::vector<Element> images(r.order());
  bool unique = true;
  for (Element x = 0; x < r.order(); ++x) {
    std::vector<Element> thread(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) thread[i] = fam[i](x);
    auto idx = lim.find(thread);
    if (!idx) throw Error(ErrorKind::Internal, "mediating tuple is not a thread");
    images[x] = static_cast<Element>(*idx);
    // Any map agreeing with every projection must pick a thread with these
    // coordinates; count the candidates.
    std::size_t candidates = 0;
    for (std::size_t t = 0; t < lim.threads.size(); ++t) {
      bool agrees = true;
      for (std::size_t i = 0; i < s.size() && agrees; ++i) agrees = lim.projections[i](t) == thread[i];
      candidates += agrees ? 1 : 0;
    }
    unique = unique && candidates == 1;
  }
  return MediatingMap{QuandleMap::make(r, *lim.table, std::move(images)), unique};
}

CongruenceSystem congruence_system(const QuandleTable& t) {
  CongruenceSystem cs;
  cs.congruences = all_congruences(t);
  const std::size_t m = cs.congruences.size();
  cs.system.order = DirectedPreorder{m, std::vector<bool>(m * m, false)};
  for (const auto& c : cs.congruences) {
    auto q = quotient(t, c);
    cs.system.quandles.push_back(q.quotient);
    cs.projections.push_back(std::move(q.projection));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      // Reverse inclusion: i <= j iff congruence_j is contained in congruence_i.
      if (!cs.congruences[j].refines(cs.congruences[i])) continue;
      cs.system.order.relation[i * m + j] = true;
      if (i == j) continue;
      auto reps = cs.congruences[j].partition().representatives();
      std::vector<Element> images(reps.size());
      for (std::size_t c = 0; c < reps.size(); ++c)
        images[c] = static_cast<Element>(cs.congruences[i].label(reps[c]));
      cs.system.maps.emplace(NodePair{i, j}, std::move(images));
    }
  }
  return cs;
}

ProjectiveSystem trivial_tower(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "tower needs at least one stage");
  ProjectiveSystem s;
  s.order = DirectedPreorder::chain(k);
  for (std::size_t p = 1; p <= k; ++p) s.quandles.push_back(trivial(p));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::size_t p = i + 1, q = j + 1;
      std::vector<Element> images(q);
      for (std::size_t x = 1; x <= q; ++x) images[x - 1] = static_cast<Element>((x <= p ? x : p) - 1);
      s.maps.emplace(NodePair{i, j}, std::move(images));
    }
  }
  return s;
}

ProjectiveSystem group_tower_functor(const GroupSystem& groups, QuandleFunctor functor) {
  if (groups.groups.size() != groups.order.size) {
    throw Error(ErrorKind::InvalidSystem, "group system node count mismatch");
  }
  if (auto d = groups.order.defect()) throw Error(ErrorKind::InvalidSystem, "preorder " + *d);
  for (const auto& [key, images] : groups.maps) {
    if (!groups.order.le(key.first, key.second) ||
        !is_group_homomorphism(groups.groups[key.second], groups.groups[key.first], images)) {
      throw Error(ErrorKind::InvalidSystem, "connecting map " + std::to_string(key.first) + "," +
                                                std::to_string(key.second) +
                                                " is not a group homomorphism");
    }
  }
  ProjectiveSystem s;
  s.order = groups.order;
  for (const auto& g : groups.groups) {
    s.quandles.push_back(functor.kind == QuandleFunctor::Kind::Core ? core(g)
                                                                     : conj(g, functor.exponent));
  }
  s.maps = groups.maps;
  for (const auto& [key, images] : s.maps) {
    if (!is_homomorphism(s.quandles[key.second], s.quandles[key.first], images)) {
      throw Error(ErrorKind::Internal, "group homomorphism " + std::to_string(key.first) + "," +
                                           std::to_string(key.second) +
                                           " is not a quandle homomorphism");
    }
  }
  require_valid(s);
  return s;
}

GroupSystem cyclic_tower(std::size_t p, std::size_t k) {
  if (p < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "cyclic tower needs p, k >= 1");
  GroupSystem gs;
  gs.order = DirectedPreorder::chain(k);
  std::vector<std::size_t> orders;
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    n *= p;
    orders.push_back(n);
    gs.groups.push_back(GroupTable::cyclic(n));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      gs.maps.emplace(NodePair{i, j}, cyclic_reduction(orders[j], orders[i]));
  return gs;
}

ImageSystem image_system(const ProjectiveSystem& s, const LimitResult& lim,
                         std::span<const std::size_t> sub) {
  if (!lim.table) throw Error(ErrorKind::InvalidArgument, "empty limit has no subquandles");
  if (sub.empty()) throw Error(ErrorKind::InvalidArgument, "empty sub-thread set");
  std::set<std::size_t> members(sub.begin(), sub.end());
  for (auto t : members)
    if (t >= lim.threads.size()) throw Error(ErrorKind::InvalidArgument, "thread index out of range");
  for (auto a : members) {
    for (auto b : members) {
      const auto c = lim.table->op(static_cast<Element>(a), static_cast<Element>(b));
      if (!members.contains(c)) {
        throw Error(ErrorKind::NotClosed, "threads " + std::to_string(a) + " * " + std::to_string(b) +
                                              " = " + std::to_string(c) + " leaves the subset");
      }
    }
  }

  const std::size_t m = s.size();
  ImageSystem out;
  out.system.order = s.order;
  out.node_elements.resize(m);
  std::vector<std::vector<Element>> local(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::set<Element> image;
    for (auto t : members) image.insert(lim.threads[t][i]);
    out.node_elements[i].assign(image.begin(), image.end());
    auto sq = generated_subquandle(s.quandles[i], out.node_elements[i]);
    if (sq.elements != out.node_elements[i]) {
      throw Error(ErrorKind::Internal, "projection image is not a subquandle");
    }
    out.system.quandles.push_back(sq.table);
    local[i].assign(s.quandles[i].order(), 0);
    for (std::size_t e = 0; e < sq.elements.size(); ++e) local[i][sq.elements[e]] = static_cast<Element>(e);
  }
  for (const auto& [key, images] : s.maps) {
    auto [i, j] = key;
    std::vector<Element> restricted;
    for (Element y : out.node_elements[j]) restricted.push_back(local[i][images[y]]);
    out.system.maps.emplace(key, std::move(restricted));
  }
  out.limit = limit(out.system);

  std::set<std::vector<Element>> expected;
  for (auto t : members) expected.insert(lim.threads[t]);
  std::set<std::vector<Element>> got;
  for (const auto& th : out.limit.threads) {
    std::vector<Element> ambient(m);
    for (std::size_t i = 0; i < m; ++i) ambient[i] = out.node_elements[i][th[i]];
    got.insert(std::move(ambient));
  }
  out.isomorphic = got == expected;
  return out;
}

ProductEmbedding embed_into_product(const QuandleTable& t, std::size_t max_materialized) {
  ProductEmbedding e;
  const auto all = all_congruences(t);
  const std::size_t n = t.order();
  for (Element p = 0; p < n; ++p) {
    for (Element q = p + 1; q < n; ++q) {
      const auto it = std::find_if(all.begin(), all.end(),
                                   [&](const Congruence& c) { return !c.same_class(p, q); });
      e.pairs.emplace_back(p, q);
      e.factors.push_back(*it);
      e.factor_tables.push_back(quotient(t, *it).quotient);
      if (it->is_diagonal()) e.diagonal_only.emplace_back(p, q);
    }
  }
  e.coordinates.resize(n);
  for (Element x = 0; x < n; ++x)
    for (const auto& c : e.factors) e.coordinates[x].push_back(static_cast<Element>(c.label(x)));
  std::set<std::vector<Element>> distinct(e.coordinates.begin(), e.coordinates.end());
  e.injective = distinct.size() == n;

  std::size_t total = 1;
  for (const auto& f : e.factor_tables) {
    total *= f.order();
    if (total > max_materialized) return e;
  }
  if (e.factor_tables.empty()) {
    e.as_map = QuandleMap::make(t, trivial(1), std::vector<Element>(n, 0));
    return e;
  }
  std::vector<std::size_t> orders;
  for (const auto& f : e.factor_tables) orders.push_back(f.order());
  ProductIndexer idx(orders);
  std::vector<Element> images(n);
  for (Element x = 0; x < n; ++x) images[x] = static_cast<Element>(idx.index(e.coordinates[x]));
  e.as_map = QuandleMap::make(t, product(e.factor_tables), std::move(images));
  return e;
}

ProjectiveSystem random_surjective_system(CensusSource& census, std::uint64_t seed,
                                          std::size_t max_nodes, std::size_t max_order) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t order = uniform(1, max_order);
  const auto& tables = census.get(order).tables;
  const QuandleTable base = tables[uniform(0, tables.size() - 1)];
  const auto all = all_congruences(base);

  const std::size_t m = uniform(1, std::max<std::size_t>(1, max_nodes));
  std::vector<Congruence> nodes;
  for (std::size_t i = 0; i + 1 < m; ++i) nodes.push_back(all[uniform(0, all.size() - 1)]);
  if (nodes.empty()) {
    nodes.push_back(all[uniform(0, all.size() - 1)]);
  } else {
    auto top = nodes.front();
    for (const auto& c : nodes) top = top.meet(c);
    nodes.push_back(top);
  }
  std::vector<std::size_t> shuffle(nodes.size());
  std::iota(shuffle.begin(), shuffle.end(), 0);
  std::shuffle(shuffle.begin(), shuffle.end(), rng);
  std::vector<Congruence> ordered;
  for (auto k : shuffle) ordered.push_back(nodes[k]);

  const std::size_t size = ordered.size();
  ProjectiveSystem s;
  s.order = DirectedPreorder{size, std::vector<bool>(size * size, false)};
  std::vector<Permutation> relabel(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto q = quotient(base, ordered[i]).quotient;
    const std::size_t k = q.order();
    relabel[i].resize(k);
    std::iota(relabel[i].begin(), relabel[i].end(), 0);
    std::shuffle(relabel[i].begin(), relabel[i].end(), rng);
    std::vector<Element> cells(k * k);
    for (Element a = 0; a < k; ++a)
      for (Element b = 0; b < k; ++b)
        cells[relabel[i][a] * k + relabel[i][b]] = relabel[i][q.op(a, b)];
    s.quandles.push_back(QuandleTable::from_cells(k, std::move(cells)));
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (!ordered[j].refines(ordered[i])) continue;
      s.order.relation[i * size + j] = true;
      if (i == j) continue;
      const auto back = inverse_permutation(relabel[j]);
      const auto reps = ordered[j].partition().representatives();
      std::vector<Element> images(reps.size());
      for (Element y = 0; y < reps.size(); ++y) {
        const auto cls_j = back[y];
        images[y] = relabel[i][ordered[i].label(reps[cls_j])];
      }
      s.maps.emplace(NodePair{i, j}, std::move(images));
    }
  }
  return s;
}

ProjectiveSystem parse_system(std::string_view text, const std::filesystem::path& base_dir) {
  auto lines = io::split_lines(text);
  std::optional<std::size_t> m;
  std::vector<NodePair> le_pairs;
  std::vector<std::optional<QuandleTable>> quandles;
  std::map<NodePair, std::vector<Element>> maps;

  auto node = [&](const std::string& tok, std::size_t line_no) {
    auto v = io::parse_int(tok, line_no);
    if (!m) throw ParseError("'nodes' must come first", line_no);
    if (v < 0 || static_cast<std::size_t>(v) >= *m) {
      throw ParseError("node " + tok + " out of range", line_no);
    }
    return static_cast<std::size_t>(v);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string line = lines[i];
    std::replace(line.begin(), line.end(), ':', ' ');
    auto tokens = io::split_ws(line);
    if (tokens.empty() || tokens[0].starts_with('#')) continue;
    if (tokens[0] == "nodes") {
      if (m || tokens.size() != 2) throw ParseError("expected a single 'nodes m'", line_no);
      auto v = io::parse_int(tokens[1], line_no);
      if (v <= 0) throw ParseError("node count must be positive", line_no);
      m = static_cast<std::size_t>(v);
      quandles.assign(*m, std::nullopt);
    } else if (tokens[0] == "le") {
      if (tokens.size() != 3) throw ParseError("expected 'le i j'", line_no);
      le_pairs.emplace_back(node(tokens[1], line_no), node(tokens[2], line_no));
    } else if (tokens[0] == "quandle") {
      if (tokens.size() < 4) throw ParseError("expected 'quandle i file|inline ...'", line_no);
      const auto idx = node(tokens[1], line_no);
      if (quandles[idx]) throw ParseError("quandle " + tokens[1] + " defined twice", line_no);
      if (tokens[2] == "file") {
        auto path = std::filesystem::path(tokens[3]);
        if (path.is_relative()) path = base_dir / path;
        quandles[idx] = io::read_qnd(path);
      } else if (tokens[2] == "inline") {
        auto n = io::parse_int(tokens[3], line_no);
        if (n <= 0) throw ParseError("inline quandle order must be positive", line_no);
        const auto rows = static_cast<std::size_t>(n);
        if (i + rows >= lines.size()) throw ParseError("inline quandle is truncated", line_no);
        std::string chunk = "quandle " + tokens[3] + "\n";
        for (std::size_t r = 1; r <= rows; ++r) chunk += lines[i + r] + "\n";
        quandles[idx] = io::parse_qnd(chunk, line_no);
        i += rows;
      } else {
        throw ParseError("expected 'file' or 'inline'", line_no);
      }
    } else if (tokens[0] == "map") {
      if (tokens.size() < 3) throw ParseError("expected 'map i j: images'", line_no);
      NodePair key{node(tokens[1], line_no), node(tokens[2], line_no)};
      std::vector<Element> images;
      for (std::size_t t = 3; t < tokens.size(); ++t) {
        auto v = io::parse_int(tokens[t], line_no);
        if (v < 0) throw ParseError("map images are non-negative", line_no);
        images.push_back(static_cast<Element>(v));
      }
      if (!maps.emplace(key, std::move(images)).second) {
        throw ParseError("map " + tokens[1] + " " + tokens[2] + " given twice", line_no);
      }
    } else {
      throw ParseError("unknown directive '" + tokens[0] + "'", line_no);
    }
  }
  if (!m) throw ParseError("missing 'nodes' line", std::nullopt);

  ProjectiveSystem s;
  s.order = DirectedPreorder::from_pairs(*m, le_pairs);
  for (std::size_t i = 0; i < *m; ++i) {
    if (!quandles[i]) throw ParseError("no quandle given for node " + std::to_string(i), std::nullopt);
    s.quandles.push_back(*quandles[i]);
  }
  s.maps = std::move(maps);

  // Fill pairs implied by composition.
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < *m; ++i) {
      for (std::size_t k = 0; k < *m; ++k) {
        if (i == k || !s.order.le(i, k) || s.maps.contains({i, k})) continue;
        for (std::size_t j = 0; j < *m; ++j) {
          auto a = s.maps.find({i, j});
          auto b = s.maps.find({j, k});
          if (a == s.maps.end() || b == s.maps.end()) continue;
          if (b->second.size() != s.quandles[k].order()) continue;
          bool fits = std::all_of(b->second.begin(), b->second.end(),
                                  [&](Element v) { return v < a->second.size(); });
          if (!fits) continue;
          s.maps.emplace(NodePair{i, k}, compose_images(a->second, b->second));
          grew = true;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < *m; ++i)
    for (std::size_t j = 0; j < *m; ++j)
      if (i != j && s.order.le(i, j) && !s.maps.contains({i, j}))
        throw ParseError("missing map " + std::to_string(i) + " " + std::to_string(j) +
                             " and it is not implied by composition",
                         std::nullopt);
  return s;
}

ProjectiveSystem read_system(const std::filesystem::path& path) {
  return parse_system(io::slurp(path), path.parent_path());
}

std::string format_system(const ProjectiveSystem& s) {
  std::string out = "nodes " + std::to_string(s.size()) + "\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && s.order.le(i, j)) out += "le " + std::to_string(i) + " " + std::to_string(j) + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto qnd = io::format_qnd(s.quandles[i]);
    out += "quandle " + std::to_string(i) + " inline" + qnd.substr(qnd.find(' '));
  }
  for (const auto& [key, images] : s.maps) {
    out += "map " + std::to_string(key.first) + " " + std::to_string(key.second) + ":";
    for (Element v : images) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

}  // namespace quandle
