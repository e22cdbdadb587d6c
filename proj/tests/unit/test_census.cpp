#include <random>

#include "quandle/census.hpp"
#include "quandle/errors.hpp"
#include "support.hpp"

using namespace quandle;

TEST_CASE("census counts") {
  const std::size_t want[] = {1, 1, 3, 7, 22};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(census(n).count() == want[n - 1]);
  CHECK(census(6).count() == 73);
  CHECK(labeled_census(3).count() == 5);
  CHECK(labeled_census(4).count() == 36);
}

TEST_CASE("labeled enumeration matches the all-tables oracle") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto want = oracle::labeled_quandles(n);
    std::sort(want.begin(), want.end());
    std::vector<oracle::Cells> got;
    for (const auto& t : enumerate_tables(n)) got.push_back(support::cells(t));
    std::sort(got.begin(), got.end());
    CHECK(got == want);
    CHECK(census(n).count() == oracle::isomorphism_classes(n, want));
  }
}

TEST_CASE("census entries are canonical, sorted and pairwise non-isomorphic") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto c = census(n);
    for (std::size_t i = 0; i < c.count(); ++i) {
      const auto& t = c.tables[i];
      CHECK(oracle::is_quandle(n, support::cells(t)));
      CHECK(is_canonical(t));
      CHECK(support::cells(t) == oracle::canonical_key(n, support::cells(t)));
      if (i) CHECK(c.tables[i - 1] < t);
    }
  }
}

TEST_CASE("canonical form is a relabeling invariant") {
  std::mt19937_64 rng(7);
  for (const auto& t : census(5).tables) {
    Permutation p(5);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const auto cells = oracle::relabel(5, support::cells(t), p);
    const auto u = QuandleTable::from_cells(5, std::vector<Element>(cells.begin(), cells.end()));
    const auto cf = canonical_form(u);
    CHECK(cf.table == t);
    // relabel[old] = new maps u onto its canonical form
    for (Element a = 0; a < 5; ++a)
      for (Element b = 0; b < 5; ++b)
        CHECK(cf.table.op(cf.relabel[a], cf.relabel[b]) == cf.relabel[u.op(a, b)]);
    const auto iso = find_isomorphism(t, u);
    REQUIRE(iso);
    for (Element a = 0; a < 5; ++a)
      for (Element b = 0; b < 5; ++b) CHECK(u.op((*iso)[a], (*iso)[b]) == (*iso)[t.op(a, b)]);
  }
  CHECK_FALSE(find_isomorphism(trivial(3), dihedral(3)));
}

TEST_CASE("canonical form on symmetric tables of order 6 to 8") {
  CHECK(canonical_form(trivial(8)).table == trivial(8));
  std::mt19937_64 rng(11);
  for (const auto& t : {dihedral(6), conj(GroupTable::symmetric(3), 1), core(GroupTable::symmetric(3))}) {
    Permutation p(6);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const auto cells = oracle::relabel(6, support::cells(t), p);
    const auto u = QuandleTable::from_cells(6, std::vector<Element>(cells.begin(), cells.end()));
    CHECK(support::cells(canonical_form(u).table) == oracle::canonical_key(6, support::cells(t)));
  }
}

TEST_CASE("enumeration is independent of jobs") {
  CHECK(census(5, 1).tables == census(5, 3).tables);
}

TEST_CASE("census cap") {
  CHECK_THROWS_AS(enumerate_tables(7), Error);
  CHECK_THROWS_AS(census(0), Error);
  std::size_t streamed = 0;
  stream_tables(4, [&](const QuandleTable&) { ++streamed; });
  CHECK(streamed == 36);
}

TEST_CASE("census file format round trip") {
  const auto c = census(4);
  const auto text = format_census(c);
  CHECK(text.starts_with("census 4 7\n"));
  const auto back = parse_census(text);
  CHECK(back.tables == c.tables);
  const auto l = labeled_census(3);
  CHECK(format_census(l).starts_with("census 3 5 labeled\n"));
  CHECK(parse_census(format_census(l)).tables == l.tables);
}

TEST_CASE("census parser rejects bad files") {
  const auto text = format_census(census(3));
  auto expect_format_error = [](const std::string& s) {
    try {
      parse_census(s);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CensusFormat);
    }
  };
  expect_format_error("census 3 4" + text.substr(text.find('\n')));
  // swap the first two entries: no longer sorted
  const auto c = census(3);
  CensusFile swapped{3, false, {c.tables[1], c.tables[0], c.tables[2]}};
  expect_format_error(format_census(swapped));
  // a non-canonical relabeling
  CensusFile relabeled{3, false, {QuandleTable::from_rows({{0, 0, 0}, {2, 1, 1}, {1, 2, 2}})}};
  if (!is_canonical(relabeled.tables[0])) expect_format_error(format_census(relabeled));
  // a malformed block is a parse error, not a census-level one
  CHECK_THROWS_AS(parse_census("census 3 1\nquandle 3\n0 0\n"), ParseError);
}

TEST_CASE("census source caches to disk") {
  const auto dir = support::scratch("census");
  {
    CensusSource src(dir);
    CHECK(src.get(4).count() == 7);
    CHECK(std::filesystem::exists(dir / "census_4.txt"));
    CHECK_THROWS_AS(src.get(7), Error);
  }
  CensusSource again(dir);
  CHECK(again.get(4).tables == census(4).tables);
  store(labeled_census(3), dir / "census_3.txt");
  CHECK_THROWS_AS(again.get(3), Error);
}
