#include "quandle/census.hpp"
#include "quandle/congruence.hpp"
#include "quandle/errors.hpp"
#include "quandle/morphism.hpp"
#include "support.hpp"

using namespace quandle;

namespace {

std::vector<QuandleTable> small_quandles() {
  std::vector<QuandleTable> out;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& t : census(n).tables) out.push_back(t);
  out.push_back(conj(GroupTable::symmetric(3), 1));
  out.push_back(dihedral(6));
  return out;
}

}  // namespace

TEST_CASE("partitions normalize labels") {
  const std::size_t raw[] = {5, 5, 2, 9};
  const auto p = Partition::from_labels(raw);
  CHECK(p.labels() == std::vector<std::size_t>{0, 0, 1, 2});
  CHECK(p.index() == 3);
  CHECK(p.representatives() == std::vector<Element>{0, 2, 3});
  CHECK(Partition::diagonal(4).refines(p));
  CHECK(p.refines(Partition::full(4)));
  CHECK_THROWS_AS(Partition::from_labels(std::span<const std::size_t>{}), Error);
}

TEST_CASE("congruence lattice matches the set-partition oracle") {
  for (const auto& t : small_quandles()) {
    const auto all = all_congruences(t);
    const auto want = oracle::congruences(t.order(), support::cells(t));
    CHECK(all.size() == want.size());
    std::set<std::vector<std::size_t>> got;
    for (const auto& c : all) {
      got.insert(c.labels());
      CHECK(is_congruence(t, c.partition()));
    }
    CHECK(got == std::set<std::vector<std::size_t>>(want.begin(), want.end()));
    CHECK(std::is_sorted(all.begin(), all.end()));
  }
}

TEST_CASE("fixture congruence counts") {
  CHECK(all_congruences(dihedral(3)).size() == 2);
  CHECK(all_congruences(trivial(3)).size() == 5);
  CHECK(all_congruences(trivial(1)).size() == 1);
}

TEST_CASE("closure is the least congruence containing the pairs") {
  const auto t = dihedral(6);
  const ElementPair pairs[] = {{0, 3}};
  const auto c = congruence_closure(t, pairs);
  CHECK(c.same_class(0, 3));
  for (const auto& d : all_congruences(t))
    if (d.same_class(0, 3)) CHECK(c.refines(d));
  // in R_3 any identification collapses everything
  const ElementPair one[] = {{0, 1}};
  CHECK(congruence_closure(dihedral(3), one).index() == 1);
}

TEST_CASE("join and meet stay inside the lattice") {
  for (const auto& t : {trivial(4), dihedral(6), conj(GroupTable::symmetric(3), 1)}) {
    const auto all = all_congruences(t);
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto m = a.meet(b);
        const auto j = join(t, a, b);
        CHECK(std::find(all.begin(), all.end(), m) != all.end());
        CHECK(std::find(all.begin(), all.end(), j) != all.end());
        CHECK(a.refines(j));
        CHECK(b.refines(j));
        CHECK(m.refines(a));
      }
  }
}

TEST_CASE("quotients and kernels") {
  const auto t = trivial(3);
  const std::size_t labels[] = {0, 0, 1};
  const auto q = quotient(t, Partition::from_labels(labels));
  CHECK(q.quotient == trivial(2));
  CHECK(q.projection.images() == std::vector<Element>{0, 0, 1});
  CHECK(kernel(q.projection).labels() == std::vector<std::size_t>{0, 0, 1});
  const std::size_t bad[] = {0, 0, 1};
  try {
    quotient(dihedral(3), Partition::from_labels(bad));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACongruence);
  }
}

TEST_CASE("first isomorphism theorem round trip") {
  for (const auto& t : {dihedral(6), trivial(3), conj(GroupTable::symmetric(3), 1)}) {
    for (const auto& f : homs(t, dihedral(3))) {
      const auto w = first_iso_witness(f);
      CHECK(w.iso.bijective());
      CHECK(w.quotient.quotient.order() == w.image.elements.size());
      CHECK(find_isomorphism(quotient(t, kernel(f)).quotient, w.image.table).has_value());
    }
  }
}

TEST_CASE("bounded intersection is fully invariant and shrinks") {
  for (const auto& t : small_quandles()) {
    const auto all = all_congruences(t);
    const auto end = end_monoid(t);
    std::optional<Congruence> previous;
    for (std::size_t n = 1; n <= t.order(); ++n) {
      const auto b = bounded_intersection(all, t.order(), n);
      CHECK(is_fully_invariant(t, b, end.elements()));
      for (const auto& c : all)
        if (c.index() <= n) CHECK(b.refines(c));
      if (previous) CHECK(b.refines(*previous));
      previous = b;
    }
    CHECK(previous->is_diagonal());
    CHECK(profinite_kernel(t).is_diagonal());
    CHECK(bounded_intersection(t, 1).index() == 1);
  }
}

TEST_CASE("bounded intersection on the fixtures") {
  CHECK(bounded_intersection(trivial(3), 2).is_diagonal());
  CHECK(bounded_intersection(trivial(3), 1).index() == 1);
  // only the full congruence has index at most 2 in R_3
  CHECK(bounded_intersection(dihedral(3), 2).index() == 1);
  CHECK(bounded_intersection(dihedral(3), 3).is_diagonal());
}

TEST_CASE("fully invariant versus characteristic on T_3") {
  const auto t = trivial(3);
  const auto end = end_monoid(t);
  const auto aut = aut_group(t);
  std::size_t invariant = 0, characteristic = 0;
  for (const auto& c : all_congruences(t)) {
    invariant += is_fully_invariant(t, c, end.elements());
    characteristic += is_characteristic(t, c, aut.elements());
  }
  CHECK(invariant == 2);
  CHECK(characteristic == 2);
  CHECK_THROWS_AS(is_fully_invariant(t, Congruence::full(3), std::span<const QuandleMap>{}), Error);
}

TEST_CASE("congruence enumeration is independent of jobs") {
  const auto t = conj(GroupTable::symmetric(4), 1);
  CHECK(all_congruences(t, 1) == all_congruences(t, 3));
}
