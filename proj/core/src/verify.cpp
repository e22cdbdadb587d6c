#include "quandle/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "quandle/detail/parallel.hpp"
#include "quandle/errors.hpp"
#include "quandle/io.hpp"
#include "quandle/morphism.hpp"

namespace quandle {

namespace {

using Clock = std::chrono::steady_clock;
using Images = std::vector<Element>;

std::string classes(const Congruence& c) { return io::format_classes(c.labels()); }
std::string map_text(std::span<const Element> images) { return io::format_map(images); }

// Runs body, which fills detail or sets a witness, and times it.
TheoremReport run_check(std::string id, std::string input,
                        const std::function<void(TheoremReport&)>& body) {
  TheoremReport r{std::move(id), std::move(input), true, std::nullopt, {}, {}};
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.witness = std::string("error: ") + e.what();
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  if (r.witness && r.pass) r.pass = false;
  return r;
}

// Endomorphism images over a congruence's classes.
Images induced(std::span<const Element> f, const Congruence& c, std::span<const Element> reps) {
  Images out(reps.size());
  for (std::size_t k = 0; k < reps.size(); ++k) out[k] = static_cast<Element>(c.label(f[reps[k]]));
  return out;
}

struct MapSet {
  std::vector<Images> elems;
  std::unordered_map<Images, std::size_t, ImagesHash> index;

  explicit MapSet(std::vector<Images> maps) {
    std::sort(maps.begin(), maps.end());
    maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
    elems = std::move(maps);
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  }
  std::optional<std::size_t> find(const Images& m) const {
    auto it = index.find(m);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

struct LimitCheck {
  std::optional<std::string> witness;
  std::size_t threads = 0;
};

// Checks that the maps `source` on t (closed under composition, generated by
// source[gens]) are isomorphic to the limit, over `nodes` ordered by reverse
// inclusion, of the node sets `node_maps` (maps on t/node). Every source map
// must preserve every node, and the induced maps must cover each node set.
LimitCheck check_transformation_limit(const QuandleTable& t, const std::vector<Images>& source,
                                      const std::vector<std::size_t>& gens,
                                      const std::vector<Congruence>& nodes,
                                      const std::vector<MapSet>& node_maps) {
  LimitCheck out;
  auto fail = [&](std::string w) {
    out.witness = std::move(w);
    return out;
  };
  const std::size_t m = nodes.size();
  const std::size_t n = t.order();

  // Directedness: the family is closed under intersection.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto meet = nodes[i].meet(nodes[j]);
      if (std::find(nodes.begin(), nodes.end(), meet) == nodes.end()) {
        return fail("intersection of " + classes(nodes[i]) + " and " + classes(nodes[j]) +
                    " is missing from the family");
      }
    }
  }

  std::vector<std::vector<Element>> reps(m);
  for (std::size_t i = 0; i < m; ++i) reps[i] = nodes[i].partition().representatives();

  // omega[i][s]: index in node_maps[i] of the map induced by source[s].
  std::vector<std::vector<std::size_t>> omega(m, std::vector<std::size_t>(source.size()));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<bool> hit(node_maps[i].elems.size(), false);
    for (std::size_t s = 0; s < source.size(); ++s) {
      const auto im = induced(source[s], nodes[i], reps[i]);
      for (Element x = 0; x < n; ++x) {
        if (im[nodes[i].label(x)] != nodes[i].label(source[s][x])) {
          return fail("map " + map_text(source[s]) + " does not preserve " + classes(nodes[i]) +
                      " at x = " + std::to_string(x));
        }
      }
      auto idx = node_maps[i].find(im);
      if (!idx) {
        return fail("induced map " + map_text(im) + " on " + classes(nodes[i]) +
                    " is missing from the node set");
      }
      omega[i][s] = *idx;
      hit[*idx] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      return fail("induced maps do not cover the node set at " + classes(nodes[i]));
    }
  }

  auto le = [&](std::size_t i, std::size_t j) { return nodes[j].refines(nodes[i]); };

  // Connecting maps M_j -> M_i for nodes[j] inside nodes[i].
  std::map<NodePair, std::vector<std::size_t>> conn;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || !le(i, j)) continue;
      std::vector<std::size_t> table(node_maps[j].elems.size());
      for (std::size_t k = 0; k < table.size(); ++k) {
        const auto& mj = node_maps[j].elems[k];
        Images down(reps[i].size());
        for (std::size_t c = 0; c < reps[i].size(); ++c)
          down[c] = static_cast<Element>(nodes[i].label(reps[j][mj[nodes[j].label(reps[i][c])]]));
        for (Element x = 0; x < n; ++x) {
          if (down[nodes[i].label(x)] != nodes[i].label(reps[j][mj[nodes[j].label(x)]])) {
            return fail("connecting map " + classes(nodes[j]) + " -> " + classes(nodes[i]) +
                        " is ill-defined on " + map_text(mj));
          }
        }
        auto idx = node_maps[i].find(down);
        if (!idx) return fail("connecting map leaves the node set at " + classes(nodes[i]));
        table[k] = *idx;
      }
      for (std::size_t s = 0; s < source.size(); ++s) {
        if (table[omega[j][s]] != omega[i][s]) {
          return fail("connecting map " + classes(nodes[j]) + " -> " + classes(nodes[i]) +
                      " does not commute with the induced map of " + map_text(source[s]));
        }
      }
      conn.emplace(NodePair{i, j}, std::move(table));
    }
  }
  for (const auto& [ij, a] : conn) {
    for (const auto& [jk, b] : conn) {
      if (ij.second != jk.first) continue;
      const auto& c = conn.at({ij.first, jk.second});
      for (std::size_t x = 0; x < b.size(); ++x) {
        if (a[b[x]] != c[x]) {
          return fail("connecting maps violate the composition law on nodes " +
                      std::to_string(ij.first) + ", " + std::to_string(ij.second) + ", " +
                      std::to_string(jk.second));
        }
      }
    }
  }

  // Limit by thread filtering, coarse nodes first.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return nodes[a].index() < nodes[b].index(); });
  std::vector<std::vector<std::size_t>> threads;
  std::vector<std::size_t> thread(m);
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == m) {
      threads.push_back(thread);
      return;
    }
    const std::size_t j = order[depth];
    for (std::size_t k = 0; k < node_maps[j].elems.size(); ++k) {
      bool coherent = true;
      for (std::size_t d = 0; d < depth && coherent; ++d) {
        const std::size_t i = order[d];
        // Nodes are distinct congruences, so at most one direction holds.
        if (le(i, j)) coherent = conn.at({i, j})[k] == thread[i];
        else if (le(j, i)) coherent = conn.at({j, i})[thread[i]] == k;
      }
      if (!coherent) continue;
      thread[j] = k;
      extend(depth + 1);
    }
  };
  extend(0);
  std::sort(threads.begin(), threads.end());
  out.threads = threads.size();
  auto find_thread = [&](const std::vector<std::size_t>& th) {
    return std::binary_search(threads.begin(), threads.end(), th);
  };

  // Pointwise composition of threads, as node indices.
  auto compose_threads = [&](const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> c(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto idx = node_maps[i].find(compose_images(node_maps[i].elems[a[i]], node_maps[i].elems[b[i]]));
      if (!idx) return std::nullopt;
      c[i] = *idx;
    }
    return c;
  };
  auto canonical = [&](std::size_t s) {
    std::vector<std::size_t> th(m);
    for (std::size_t i = 0; i < m; ++i) th[i] = omega[i][s];
    return th;
  };

  // The limit is a monoid: identity thread and closure.
  std::vector<std::size_t> identity(m);
  for (std::size_t i = 0; i < m; ++i) {
    Images id(reps[i].size());
    std::iota(id.begin(), id.end(), 0);
    auto idx = node_maps[i].find(id);
    if (!idx) return fail("node set at " + classes(nodes[i]) + " lacks the identity");
    identity[i] = *idx;
  }
  if (!find_thread(identity)) return fail("identity is not a thread");
  std::vector<std::vector<std::size_t>> right;
  if (threads.size() * threads.size() <= 250'000) {
    right = threads;
  } else {
    for (auto g : gens) right.push_back(canonical(g));
  }
  for (const auto& a : threads) {
    for (const auto& b : right) {
      auto c = compose_threads(a, b);
      if (!c || !find_thread(*c)) return fail("threads are not closed under composition");
    }
  }

  // Canonical map: a bijective homomorphism onto the limit.
  std::unordered_map<Images, std::size_t, ImagesHash> source_index;
  for (std::size_t s = 0; s < source.size(); ++s) source_index.emplace(source[s], s);
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t s = 0; s < source.size(); ++s) {
    auto th = canonical(s);
    if (!find_thread(th)) return fail("image of " + map_text(source[s]) + " is not a thread");
    if (!seen.insert(th).second) {
      return fail("canonical map is not injective at " + map_text(source[s]));
    }
  }
  if (seen.size() != threads.size()) {
    return fail("canonical map misses " + std::to_string(threads.size() - seen.size()) + " threads");
  }
  for (std::size_t s = 0; s < source.size(); ++s) {
    for (auto g : gens) {
      auto it = source_index.find(compose_images(source[s], source[g]));
      if (it == source_index.end()) return fail("source maps are not closed under composition");
      auto prod = compose_threads(canonical(s), canonical(g));
      if (!prod || *prod != canonical(it->second)) {
        return fail("canonical map does not preserve the composite " + map_text(source[s]) +
                    " o " + map_text(source[g]));
      }
    }
  }
  return out;
}

std::vector<Images> images_of(const FiniteMonoid& mon) {
  std::vector<Images> out;
  for (const auto& f : mon.elements()) out.push_back(f.images());
  return out;
}

MapSet induced_set(const std::vector<Images>& source, const Congruence& c) {
  const auto reps = c.partition().representatives();
  std::vector<Images> maps;
  for (const auto& f : source) maps.push_back(induced(f, c, reps));
  return MapSet(std::move(maps));
}

std::string thread_text(const std::vector<Element>& th) {
  std::string s = "(";
  for (std::size_t i = 0; i < th.size(); ++i) s += (i ? "," : "") + std::to_string(th[i]);
  return s + ")";
}

}  // namespace

TheoremReport verify_lemma_fully_invariant(const QuandleTable& t) {
  return run_check("fully-invariant-bound", {}, [&](TheoremReport& r) {
    const auto end = end_monoid(t);
    const auto all = all_congruences(t);
    for (const auto& gamma : all) {
      const auto bar = bounded_intersection(all, t.order(), gamma.index());
      if (!bar.refines(gamma)) {
        r.witness = "bounded intersection " + classes(bar) + " not inside " + classes(gamma);
        return;
      }
      for (const auto& f : end.elements()) {
        for (Element x = 0; x < t.order(); ++x) {
          for (Element y = x + 1; y < t.order(); ++y) {
            if (bar.same_class(x, y) && !bar.same_class(f(x), f(y))) {
              r.witness = classes(bar) + " not invariant under " + map_text(f.images()) +
                          " at (" + std::to_string(x) + "," + std::to_string(y) + ")";
              return;
            }
          }
        }
      }
    }
    if (!bounded_intersection(all, t.order(), t.order()).is_diagonal()) {
      r.witness = "intersection at index " + std::to_string(t.order()) + " is not the diagonal";
      return;
    }
    r.detail = std::to_string(all.size()) + " congruences against " +
               std::to_string(end.size()) + " endomorphisms";
  });
}

TheoremReport verify_hopfian(const QuandleTable& t) {
  return run_check("hopfian", {}, [&](TheoremReport& r) {
    const auto onto = homs(t, t, HomFilter::Surjective);
    for (const auto& f : onto) {
      if (!f.injective()) {
        r.witness = "surjective endomorphism " + map_text(f.images()) + " is not injective";
        return;
      }
    }
    r.detail = std::to_string(onto.size()) + " surjective endomorphisms, all bijective";
  });
}

TheoremReport verify_end_separation(const QuandleTable& t) {
  return run_check("end-separation", {}, [&](TheoremReport& r) {
    const auto end = end_monoid(t);
    const SeparationContext ctx(t);
    std::vector<std::optional<bool>> invariant(t.order() + 1);
    std::size_t pairs = 0;
    for (const auto& f : end.elements()) {
      for (const auto& g : end.elements()) {
        if (f == g) continue;
        ++pairs;
        const auto sep = separate_endomorphisms(ctx, f, g);
        const auto pair_text = map_text(f.images()) + " / " + map_text(g.images());
        const Element a = f(sep.q0), b = g(sep.q0);
        if (a == b || sep.separating.same_class(a, b)) {
          r.witness = "separating congruence does not split " + pair_text;
          return;
        }
        if (!sep.alpha_bar.refines(sep.separating)) {
          r.witness = "bounded intersection not inside the separating congruence for " + pair_text;
          return;
        }
        const auto k = sep.separating.index();
        if (!(sep.alpha_bar == bounded_intersection(ctx.congruences(), t.order(), k))) {
          r.witness = "reported intersection is not the index " + std::to_string(k) + " bound";
          return;
        }
        if (!invariant[k]) invariant[k] = is_fully_invariant(t, sep.alpha_bar, end.elements());
        if (!*invariant[k]) {
          r.witness = classes(sep.alpha_bar) + " is not fully invariant";
          return;
        }
        const auto reps = sep.alpha_bar.partition().representatives();
        const auto fb = induced(f.images(), sep.alpha_bar, reps);
        const auto gb = induced(g.images(), sep.alpha_bar, reps);
        if (fb != sep.f_bar.images() || gb != sep.g_bar.images()) {
          r.witness = "induced maps disagree with recomputation for " + pair_text;
          return;
        }
        if (fb == gb) {
          r.witness = "induced maps coincide for " + pair_text;
          return;
        }
        if (!is_homomorphism(sep.quotient.quotient, sep.quotient.quotient, fb)) {
          r.witness = "induced map " + map_text(fb) + " is not an endomorphism of the quotient";
          return;
        }
      }
    }
    r.detail = std::to_string(pairs) + " ordered pairs separated";
  });
}

TheoremReport verify_end_limit(const QuandleTable& t) {
  return run_check("end-limit", {}, [&](TheoremReport& r) {
    const auto end = end_monoid(t);
    if (!end.associative()) {
      r.witness = "composition in End is not associative";
      return;
    }
    const auto source = images_of(end);
    std::vector<Congruence> nodes;
    for (const auto& c : all_congruences(t))
      if (is_fully_invariant(t, c, end.elements())) nodes.push_back(c);
    if (std::none_of(nodes.begin(), nodes.end(), [](const Congruence& c) { return c.is_diagonal(); })) {
      r.witness = "diagonal is not fully invariant";
      return;
    }
    std::vector<MapSet> sets;
    for (const auto& c : nodes) sets.push_back(induced_set(source, c));
    auto check = check_transformation_limit(t, source, end.generators(), nodes, sets);
    if (check.witness) {
      r.witness = *check.witness;
      return;
    }
    r.detail = std::to_string(nodes.size()) + " fully invariant congruences, limit of " +
               std::to_string(check.threads) + " = |End| " + std::to_string(end.size());
  });
}

TheoremReport verify_aut_inn_limit(const QuandleTable& t) {
  return run_check("aut-inn-limit", {}, [&](TheoremReport& r) {
    const auto end = end_monoid(t);
    const auto aut = aut_group(t);
    const auto inn = inn_group(t);
    const auto all = all_congruences(t);
    std::vector<Congruence> characteristic, invariant;
    for (const auto& c : all) {
      if (is_characteristic(t, c, aut.elements())) characteristic.push_back(c);
      if (is_fully_invariant(t, c, end.elements())) invariant.push_back(c);
    }

    const auto aut_source = images_of(aut);
    std::vector<MapSet> aut_sets;
    for (const auto& c : characteristic) aut_sets.push_back(induced_set(aut_source, c));
    auto aut_check = check_transformation_limit(t, aut_source, aut.generators(), characteristic, aut_sets);
    if (aut_check.witness) {
      r.witness = "Aut: " + *aut_check.witness;
      return;
    }

    const auto inn_source = images_of(inn);
    auto inn_over = [&](const std::vector<Congruence>& nodes) {
      std::vector<MapSet> sets;
      for (const auto& c : nodes) sets.push_back(MapSet(images_of(inn_group(quotient(t, c).quotient))));
      return check_transformation_limit(t, inn_source, inn.generators(), nodes, sets);
    };
    auto inn_char = inn_over(characteristic);
    auto inn_inv = inn_over(invariant);
    if (inn_char.witness) {
      r.witness = "Inn over characteristic congruences: " + *inn_char.witness;
      return;
    }
    r.detail = std::to_string(characteristic.size()) + " characteristic congruences, |Aut| " +
               std::to_string(aut.size()) + " = limit " + std::to_string(aut_check.threads) +
               ", |Inn| " + std::to_string(inn.size()) + " = limit " +
               std::to_string(inn_char.threads) + "; over " + std::to_string(invariant.size()) +
               " fully invariant congruences Inn " +
               (inn_inv.witness ? "differs: " + *inn_inv.witness : std::string("agrees"));
  });
}

TheoremReport verify_limit_existence(const ProjectiveSystem& s) {
  return run_check("limit-onto", {}, [&](TheoremReport& r) {
    const auto report = validate_system(s);
    if (!report.valid) {
      r.witness = "invalid system: " + report.violations.front();
      return;
    }
    const auto surj = check_surjective_projections(s);
    const auto lim = limit(s);
    if (lim.table) {
      RawTable raw{lim.table->order(), {}};
      for (Element v : lim.table->cells()) raw.cells.push_back(v);
      if (!check_axioms(raw).ok()) {
        r.witness = "limit table fails the quandle axioms";
        return;
      }
    }
    std::size_t product_size = 1;
    for (const auto& q : s.quandles) product_size = std::min<std::size_t>(product_size * q.order(), 200'001);
    if (product_size <= 200'000) {
      const auto filtered = limit_by_product_filter(s);
      if (filtered.threads != lim.threads) {
        r.witness = "thread filtering finds " + std::to_string(filtered.threads.size()) +
                    " threads, propagation " + std::to_string(lim.threads.size());
        return;
      }
    }
    if (!surj.hypothesis_met) {
      const auto [i, j] = surj.non_surjective_maps.front();
      r.detail = "hypothesis unmet: phi_" + std::to_string(i) + "," + std::to_string(j) +
                 " not onto; limit has " + std::to_string(lim.threads.size()) + " threads";
      return;
    }
    if (!surj.limit_nonempty) {
      r.witness = "limit is empty";
      return;
    }
    if (!surj.non_surjective_projections.empty()) {
      r.witness = "projection to node " + std::to_string(surj.non_surjective_projections.front()) +
                  " is not onto";
      return;
    }
    r.detail = std::to_string(s.size()) + " nodes, " + std::to_string(lim.threads.size()) +
               " threads, all projections onto";
  });
}

TheoremReport verify_eta_stage(const Presentation& p, std::size_t bound, CensusSource& census) {
  return run_check("eta-stage", {}, [&](TheoremReport& r) {
    const auto stage = completion_stage(p, bound, census);
    const auto generated = generated_subquandle(stage.table, stage.eta);
    if (generated.elements.size() != stage.table.order()) {
      r.witness = "generator images span " + std::to_string(generated.elements.size()) + " of " +
                  std::to_string(stage.table.order()) + " stage elements";
      return;
    }
    for (std::size_t k = 0; k < stage.factors.size(); ++k) {
      if (!factor_projection(stage, k).surjective()) {
        r.witness = "projection onto factor " + std::to_string(k) + " is not onto";
        return;
      }
    }
    for (const auto& rel : p.relations()) {
      if (evaluate(rel.lhs, stage.table, stage.eta) != evaluate(rel.rhs, stage.table, stage.eta)) {
        r.witness = "relation " + p.print(rel.lhs) + " = " + p.print(rel.rhs) + " fails in the stage";
        return;
      }
    }
    const auto terms = terms_up_to_depth(p.rank(), p.rank() <= 2 ? 2 : 1);
    std::vector<Element> values;
    for (const auto& term : terms) {
      const auto v = evaluate(term, stage.table, stage.eta);
      for (std::size_t k = 0; k < stage.factors.size(); ++k) {
        const auto& f = stage.factors[k];
        if (evaluate(term, f.target, f.assignment) != stage.elements[v][k]) {
          r.witness = "eta disagrees with factor " + std::to_string(k) + " on " + p.print(term);
          return;
        }
      }
      values.push_back(v);
    }
    const auto sample = terms_up_to_depth(p.rank(), 1);
    std::size_t pairs = 0, separated = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      for (std::size_t j = i + 1; j < sample.size(); ++j) {
        ++pairs;
        if (evaluate(sample[i], stage.table, stage.eta) != evaluate(sample[j], stage.table, stage.eta))
          ++separated;
      }
    }
    r.detail = "stage order " + std::to_string(stage.table.order()) + " from " +
               std::to_string(stage.factors.size()) + " quotients, " + std::to_string(separated) +
               " of " + std::to_string(pairs) + " sampled term pairs separated";
  });
}

TheoremReport verify_profinite_kernel(const QuandleTable& t) {
  return run_check("profinite-kernel", {}, [&](TheoremReport& r) {
    const auto k = profinite_kernel(t);
    if (!k.is_diagonal()) {
      r.witness = "intersection of congruences is " + classes(k);
      return;
    }
    r.detail = "diagonal";
  });
}

TheoremReport verify_mediating_iso(const QuandleTable& t) {
  return run_check("mediating-iso", {}, [&](TheoremReport& r) {
    const auto cs = congruence_system(t);
    const auto lim = limit(cs.system);
    const auto mm = mediating_map(cs.system, lim, t, cs.projections);
    if (!mm.theta.bijective()) {
      r.witness = "mediating map " + map_text(mm.theta.images()) + " is not bijective";
      return;
    }
    if (!mm.unique) {
      r.witness = "mediating map is not unique";
      return;
    }
    r.detail = std::to_string(cs.congruences.size()) + " nodes, " +
               std::to_string(lim.threads.size()) + " threads";
  });
}

TheoremReport verify_product_embedding(const QuandleTable& t) {
  return run_check("product-embedding", {}, [&](TheoremReport& r) {
    const auto e = embed_into_product(t);
    if (!e.injective) {
      r.witness = "separating coordinates collide";
      return;
    }
    if (e.as_map && !e.as_map->injective()) {
      r.witness = "product map is not injective";
      return;
    }
    r.detail = std::to_string(e.pairs.size()) + " pairs, " + std::to_string(e.diagonal_only.size()) +
               " separated only by the diagonal";
  });
}

TheoremReport verify_image_systems(const ProjectiveSystem& s) {
  return run_check("image-systems", {}, [&](TheoremReport& r) {
    const auto lim = limit(s);
    if (lim.empty()) {
      r.detail = "empty limit";
      return;
    }
    std::set<std::vector<Element>> subs;
    for (Element x = 0; x < lim.table->order(); ++x) {
      const Element seed[] = {x};
      subs.insert(generated_subquandle(*lim.table, seed).elements);
    }
    std::vector<Element> everything(lim.table->order());
    std::iota(everything.begin(), everything.end(), 0);
    subs.insert(everything);
    for (const auto& sub : subs) {
      std::vector<std::size_t> idx(sub.begin(), sub.end());
      const auto img = image_system(s, lim, idx);
      if (!img.isomorphic) {
        r.witness = "image system of sub-threads " + thread_text(sub) + " has a different limit";
        return;
      }
    }
    r.detail = std::to_string(subs.size()) + " closed sub-thread sets";
  });
}

Scope parse_scope(std::string_view text) {
  if (text == "fixtures") return Scope{};
  if (text.starts_with("census:")) {
    const auto rest = text.substr(7);
    std::size_t n = 0;
    for (char c : rest) {
      if (c < '0' || c > '9') throw Error(ErrorKind::InvalidArgument, "bad census scope");
      n = n * 10 + static_cast<std::size_t>(c - '0');
      if (n > kCensusCap) break;
    }
    if (rest.empty() || n == 0) throw Error(ErrorKind::InvalidArgument, "bad census scope");
    if (n > kCensusCap) {
      throw Error(ErrorKind::CensusCapExceeded,
                  "census scope above order " + std::to_string(kCensusCap));
    }
    return Scope{Scope::Kind::Census, n, {}};
  }
  if (text.starts_with("file:") && text.size() > 5) {
    return Scope{Scope::Kind::File, 0, std::string(text.substr(5))};
  }
  throw Error(ErrorKind::InvalidArgument,
              "scope must be 'fixtures', 'census:N' or 'file:PATH', got '" + std::string(text) + "'");
}

namespace {

using Job = std::function<std::vector<TheoremReport>()>;

std::vector<TheoremReport> label(std::vector<TheoremReport> reports, const std::string& input) {
  for (auto& r : reports) r.input = input;
  return reports;
}

Job quandle_job(QuandleTable t, std::string name) {
  return [t = std::move(t), name = std::move(name)] {
    return label({verify_lemma_fully_invariant(t), verify_hopfian(t), verify_end_separation(t),
                  verify_end_limit(t), verify_aut_inn_limit(t), verify_profinite_kernel(t),
                  verify_mediating_iso(t), verify_product_embedding(t),
                  verify_image_systems(congruence_system(t).system)},
                 name);
  };
}

Job system_job(ProjectiveSystem s, std::string name) {
  return [s = std::move(s), name = std::move(name)] {
    return label({verify_limit_existence(s), verify_image_systems(s)}, name);
  };
}

Job presentation_job(Presentation p, std::size_t bound, std::string name, CensusSource& census) {
  return [p = std::move(p), bound, name = std::move(name), &census] {
    return label({verify_eta_stage(p, bound, census)}, name);
  };
}

constexpr std::size_t kFileStageBound = 3;

}  // namespace

std::vector<TheoremReport> run_suite(const Scope& scope, CensusSource& census, unsigned jobs) {
  std::vector<Job> work;
  switch (scope.kind) {
    case Scope::Kind::Fixtures: {
      for (std::size_t n = 1; n <= 4; ++n) work.push_back(quandle_job(trivial(n), "T_" + std::to_string(n)));
      work.push_back(quandle_job(dihedral(3), "R_3"));
      work.push_back(quandle_job(core(GroupTable::cyclic(4)), "R_4"));
      const QuandleTable t2[] = {trivial(2), trivial(2)};
      work.push_back(quandle_job(product(t2), "T_2xT_2"));
      work.push_back(quandle_job(conj(GroupTable::symmetric(3), 1), "conj(S_3,1)"));
      work.push_back(system_job(trivial_tower(5), "trivial_tower(5)"));
      work.push_back(system_job(group_tower_functor(cyclic_tower(3, 2), QuandleFunctor::core()),
                                "core(Z/9->Z/3)"));
      work.push_back(system_job(group_tower_functor(cyclic_tower(2, 3), QuandleFunctor::conj(1)),
                                "conj(Z/8->Z/4->Z/2)"));
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        work.push_back(system_job(random_surjective_system(census, seed, 4),
                                  "random_system(" + std::to_string(seed) + ")"));
      }
      work.push_back(presentation_job(Presentation::free({"a", "b"}), 3, "free(a,b)", census));
      work.push_back(presentation_job(Presentation::free({"a"}), 3, "free(a)", census));
      work.push_back(presentation_job(parse_presentation("gens a b\nrel a = b\n"), 3, "<a,b|a=b>",
                                      census));
      break;
    }
    case Scope::Kind::Census: {
      for (std::size_t n = 1; n <= scope.max_order; ++n) {
        const auto& file = census.get(n);
        for (std::size_t i = 0; i < file.tables.size(); ++i) {
          work.push_back(quandle_job(file.tables[i],
                                     "census:" + std::to_string(n) + "#" + std::to_string(i)));
        }
      }
      break;
    }
    case Scope::Kind::File: {
      const std::filesystem::path path(scope.path);
      const auto name = "file:" + scope.path;
      if (path.extension() == ".qsys") {
        work.push_back(system_job(read_system(path), name));
      } else if (path.extension() == ".qpres") {
        work.push_back(presentation_job(read_presentation(path), kFileStageBound, name, census));
      } else {
        work.push_back(quandle_job(io::read_qnd(path), name));
      }
      break;
    }
  }
  std::vector<std::vector<TheoremReport>> slots(work.size());
  detail::parallel_for(jobs, work.size(), [&](std::size_t i) { slots[i] = work[i](); });
  std::vector<TheoremReport> out;
  for (auto& slot : slots)
    for (auto& r : slot) out.push_back(std::move(r));
  return out;
}

bool all_passed(const std::vector<TheoremReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const TheoremReport& r) { return r.pass; });
}

std::string format_reports(const std::vector<TheoremReport>& reports, ReportFormat format,
                           bool with_timing) {
  auto ms = [](std::chrono::nanoseconds d) {
    return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(d).count()) + " ms";
  };
  std::string out;
  if (format == ReportFormat::Machine) {
    for (const auto& r : reports) {
      out += "THEOREM " + r.id + (r.pass ? " PASS " : " FAIL ") + r.input + " " +
             (r.pass ? r.detail : *r.witness);
      if (with_timing) out += " [" + ms(r.elapsed) + "]";
      out += "\n";
    }
    return out;
  }
  std::size_t id_width = 7, input_width = 5;
  for (const auto& r : reports) {
    id_width = std::max(id_width, r.id.size());
    input_width = std::max(input_width, r.input.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out += pad("theorem", id_width) + "  " + pad("input", input_width) + "  result  detail\n";
  std::size_t failed = 0;
  for (const auto& r : reports) {
    failed += r.pass ? 0 : 1;
    out += pad(r.id, id_width) + "  " + pad(r.input, input_width) + "  " +
           (r.pass ? "PASS    " : "FAIL    ") + (r.pass ? r.detail : *r.witness);
    if (with_timing) out += " [" + ms(r.elapsed) + "]";
    out += "\n";
  }
  out += std::to_string(reports.size()) + " checks, " + std::to_string(failed) + " failed\n";
  return out;
}

}  // namespace quandle
