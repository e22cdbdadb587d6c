#include "quandle/census.hpp"
#include "quandle/errors.hpp"
#include "quandle/projective.hpp"
#include "support.hpp"

using namespace quandle;

namespace {

std::vector<std::vector<std::uint32_t>> oracle_threads(const ProjectiveSystem& s) {
  std::vector<std::size_t> orders;
  for (const auto& q : s.quandles) orders.push_back(q.order());
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  for (const auto& [k, v] : s.maps) maps[k] = std::vector<std::uint32_t>(v.begin(), v.end());
  return oracle::threads(orders, maps);
}

// Chain 0 <= 1 <= ... with phi_ij constant at element 0 for i < j.
ProjectiveSystem constant_chain(std::vector<QuandleTable> nodes) {
  ProjectiveSystem s;
  s.order = DirectedPreorder::chain(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      s.maps[{i, j}] = std::vector<Element>(nodes[j].order(), 0);
  s.quandles = std::move(nodes);
  return s;
}

}  // namespace

TEST_CASE("preorders") {
  const auto c = DirectedPreorder::chain(3);
  CHECK(c.le(0, 2));
  CHECK_FALSE(c.le(2, 0));
  CHECK(c.tops() == std::vector<std::size_t>{2});
  CHECK_FALSE(c.defect());
  const NodePair pairs[] = {{0, 2}, {1, 2}};
  const auto v = DirectedPreorder::from_pairs(3, pairs);
  CHECK_FALSE(v.defect());
  const NodePair none[] = {{0, 0}};
  CHECK(DirectedPreorder::from_pairs(2, none).defect());
  const NodePair cycle[] = {{0, 1}, {1, 0}};
  const auto eq = DirectedPreorder::from_pairs(2, cycle);
  CHECK_FALSE(eq.defect());
  CHECK(eq.tops().size() == 2);
}

TEST_CASE("trivial tower threads") {
  const auto s = trivial_tower(3);
  CHECK(validate_system(s).valid);
  const auto lim = limit(s);
  using T = std::vector<Element>;
  CHECK(lim.threads == std::vector<T>{T{0, 0, 0}, T{0, 1, 1}, T{0, 1, 2}});
  CHECK(*lim.table == trivial(3));
  for (std::size_t k = 1; k <= 12; ++k) {
    const auto l = limit(trivial_tower(k));
    CHECK(l.threads.size() == k);
    CHECK(*l.table == trivial(k));
  }
  CHECK_THROWS_AS(trivial_tower(0), Error);
}

TEST_CASE("system validation names the broken triple") {
  const auto s = read_system(support::data("bad_cocycle.qsys"));
  const auto r = validate_system(s);
  CHECK_FALSE(r.valid);
  REQUIRE(r.first_cocycle_violation);
  CHECK(*r.first_cocycle_violation == std::array<std::size_t, 3>{0, 1, 2});
  CHECK_THROWS_AS(limit(s), Error);

  ProjectiveSystem single;
  single.order = DirectedPreorder::chain(1);
  single.quandles = {dihedral(3)};
  CHECK(validate_system(single).valid);
  CHECK(limit(single).table->order() == 3);

  auto missing = trivial_tower(3);
  missing.maps.erase({0, 2});
  CHECK_FALSE(validate_system(missing).valid);
  CHECK_THROWS_AS(missing.phi(0, 2), Error);

  ProjectiveSystem not_hom;
  not_hom.order = DirectedPreorder::chain(2);
  not_hom.quandles = {dihedral(3), dihedral(3)};
  not_hom.maps[{0, 1}] = {0, 0, 1};
  CHECK_FALSE(validate_system(not_hom).valid);
  not_hom.maps[{0, 1}] = {0, 2, 1};
  CHECK(validate_system(not_hom).valid);
}

TEST_CASE("constant systems") {
  // With a top node the limit is a copy of the top quandle; a point on top
  // leaves exactly one thread.
  const auto one = limit(constant_chain({dihedral(3), trivial(2), trivial(1)}));
  CHECK(one.threads.size() == 1);
  CHECK(one.threads[0] == std::vector<Element>{0, 0, 0});
  const auto top = limit(constant_chain({trivial(2), dihedral(3)}));
  CHECK(top.threads.size() == 3);
  for (const auto& th : top.threads) CHECK(th[0] == 0);
}

TEST_CASE("limits agree with thread filtering") {
  CensusSource census;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = random_surjective_system(census, seed);
    REQUIRE(validate_system(s).valid);
    for (const auto& [k, m] : s.maps) {
      std::set<Element> image(m.begin(), m.end());
      CHECK(image.size() == s.quandles[k.first].order());
    }
    const auto lim = limit(s);
    const auto filtered = limit_by_product_filter(s);
    CHECK(lim.threads == filtered.threads);
    const auto want = oracle_threads(s);
    CHECK(lim.threads.size() == want.size());
    CHECK(check_surjective_projections(s).conclusion_holds());
  }
  CHECK(format_system(random_surjective_system(census, 5)) ==
        format_system(random_surjective_system(census, 5)));
}

TEST_CASE("non-surjective systems report the unmet hypothesis") {
  const auto s = read_system(support::data("not_onto.qsys"));
  const auto r = check_surjective_projections(s);
  CHECK_FALSE(r.hypothesis_met);
  CHECK(r.non_surjective_maps == std::vector<NodePair>{{0, 1}});
  CHECK(r.limit_nonempty);
  CHECK_FALSE(r.conclusion_holds());
}

TEST_CASE("mediating maps") {
  for (const auto& t : {trivial(3), dihedral(3), conj(GroupTable::symmetric(3), 1)}) {
    const auto cs = congruence_system(t);
    CHECK(validate_system(cs.system).valid);
    const auto lim = limit(cs.system);
    const auto mm = mediating_map(cs.system, lim, t, cs.projections);
    CHECK(mm.theta.bijective());
    CHECK(mm.unique);
  }
  CHECK(congruence_system(trivial(3)).system.size() == 5);
  CHECK(congruence_system(dihedral(3)).system.size() == 2);
  CHECK(congruence_system(trivial(1)).system.size() == 1);

  const auto cs = congruence_system(trivial(3));
  const auto lim = limit(cs.system);
  std::vector<QuandleMap> fam;
  for (std::size_t i = 0; i < cs.system.size(); ++i)
    fam.push_back(QuandleMap::make(trivial(1), cs.system.quandles[i], {0}));
  const auto point = mediating_map(cs.system, lim, trivial(1), fam);
  CHECK(point.unique);
  // swap two classes at the finest node: no longer compatible
  auto bad = cs.projections;
  std::size_t fine = 0;
  while (!cs.congruences[fine].is_diagonal()) ++fine;
  bad[fine] = compose(QuandleMap::make(trivial(3), trivial(3), {1, 0, 2}), bad[fine]);
  CHECK_THROWS_AS(mediating_map(cs.system, lim, trivial(3), bad), Error);
}

TEST_CASE("group towers") {
  const auto core9 = group_tower_functor(cyclic_tower(3, 2), QuandleFunctor::core());
  CHECK(core9.quandles[0] == dihedral(3));
  CHECK(core9.quandles[1] == dihedral(9));
  const auto lim = limit(core9);
  CHECK(find_isomorphism(*lim.table, dihedral(9)).has_value());
  CHECK(check_surjective_projections(core9).conclusion_holds());

  const auto conj8 = group_tower_functor(cyclic_tower(2, 3), QuandleFunctor::conj(1));
  for (const auto& q : conj8.quandles) CHECK(q == trivial(q.order()));
  const auto core2 = group_tower_functor(cyclic_tower(2, 1), QuandleFunctor::core());
  CHECK(core2.quandles[0] == trivial(2));

  GroupSystem broken = cyclic_tower(2, 2);
  broken.maps[{0, 1}] = {0, 1, 1, 0};
  CHECK_THROWS_AS(group_tower_functor(broken, QuandleFunctor::core()), Error);
}

TEST_CASE("image systems") {
  const auto s = group_tower_functor(cyclic_tower(3, 2), QuandleFunctor::core());
  const auto lim = limit(s);
  // the threads of 0 mod 3 form a copy of R_3
  std::vector<std::size_t> sub;
  for (std::size_t t = 0; t < lim.threads.size(); ++t)
    if (lim.threads[t][1] % 3 == 0) sub.push_back(t);
  const auto img = image_system(s, lim, sub);
  CHECK(img.isomorphic);
  CHECK(img.node_elements[0] == std::vector<Element>{0});
  const std::size_t open[] = {0, 1};
  try {
    image_system(s, lim, open);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
}

TEST_CASE("separating product embedding") {
  const auto e = embed_into_product(trivial(3));
  CHECK(e.injective);
  CHECK(e.pairs.size() == 3);
  CHECK(e.diagonal_only.empty());
  REQUIRE(e.as_map);
  CHECK(e.as_map->injective());
  for (const auto& f : e.factor_tables) CHECK(f == trivial(2));

  const auto r = embed_into_product(dihedral(3));
  CHECK(r.injective);
  CHECK(r.diagonal_only.size() == 3);
  const auto one = embed_into_product(trivial(1));
  CHECK(one.injective);
  CHECK(one.pairs.empty());
}

TEST_CASE("qsys files") {
  const auto s = read_system(support::data("trivtower3.qsys"));
  CHECK(s.maps.contains({0, 2}));
  CHECK(s.phi(0, 2) == std::vector<Element>{0, 0, 0});
  CHECK(limit(s).threads.size() == 3);
  const auto text = format_system(s);
  CHECK(format_system(parse_system(text)) == text);
  auto line_of = [](std::string_view t) -> std::optional<std::size_t> {
    try {
      parse_system(t);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::nullopt;
  };
  CHECK(line_of("nodes 2\nle 0 5\n") == 2u);
  CHECK(line_of("le 0 1\n") == 1u);
  CHECK(line_of("nodes 1\nquandle 0 inline 2\n0 0\n") == 2u);
  CHECK(line_of("nodes 1\nbogus\n") == 2u);
  CHECK_THROWS_AS(parse_system("nodes 2\nle 0 1\nquandle 0 inline 1\n0\nquandle 1 inline 1\n0\n"),
                  ParseError);
}
