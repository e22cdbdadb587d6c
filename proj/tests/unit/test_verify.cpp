#include "quandle/errors.hpp"
#include "quandle/verify.hpp"
#include "support.hpp"

using namespace quandle;

TEST_CASE("fixture suite passes") {
  CensusSource census;
  const auto reports = run_suite(parse_scope("fixtures"), census, 1);
  CHECK(reports.size() > 50);
  for (const auto& r : reports) {
    INFO(r.id << " " << r.input << " " << r.witness.value_or(""));
    CHECK(r.pass);
  }
  CHECK(all_passed(reports));
}

TEST_CASE("suite output does not depend on jobs") {
  CensusSource census;
  const auto scope = parse_scope("census:3");
  const auto one = format_reports(run_suite(scope, census, 1), ReportFormat::Machine);
  const auto three = format_reports(run_suite(scope, census, 3), ReportFormat::Machine);
  CHECK(one == three);
}

TEST_CASE("scope parsing") {
  CHECK(parse_scope("fixtures").kind == Scope::Kind::Fixtures);
  const auto c = parse_scope("census:4");
  CHECK(c.kind == Scope::Kind::Census);
  CHECK(c.max_order == 4);
  const auto f = parse_scope("file:x/y.qnd");
  CHECK(f.kind == Scope::Kind::File);
  CHECK(f.path == "x/y.qnd");
  for (const char* bad : {"", "census", "census:", "census:x", "census:0", "file:", "everything"})
    CHECK_THROWS_AS(parse_scope(bad), Error);
  try {
    parse_scope("census:7");
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CensusCapExceeded);
  }
}

TEST_CASE("file scope dispatches on the extension") {
  CensusSource census;
  const auto q = run_suite(parse_scope("file:" + support::data("R3.qnd").string()), census);
  CHECK_FALSE(q.empty());
  CHECK(all_passed(q));
  const auto s = run_suite(parse_scope("file:" + support::data("trivtower3.qsys").string()), census);
  CHECK_FALSE(s.empty());
  CHECK(all_passed(s));
  const auto p = run_suite(parse_scope("file:" + support::data("free2.qpres").string()), census);
  CHECK_FALSE(p.empty());
  CHECK(all_passed(p));
}

TEST_CASE("failures carry witnesses") {
  const auto bad = read_system(support::data("bad_cocycle.qsys"));
  const auto r = verify_limit_existence(bad);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness);
  CHECK_FALSE(r.witness->empty());
  const auto machine = format_reports({r}, ReportFormat::Machine);
  CHECK(machine.starts_with("THEOREM " + r.id + " FAIL "));
  CHECK_FALSE(all_passed({r}));

  const auto vacuous = verify_limit_existence(read_system(support::data("not_onto.qsys")));
  CHECK(vacuous.pass);
  CHECK(vacuous.detail.starts_with("hypothesis unmet"));
}

TEST_CASE("individual verifiers on small quandles") {
  for (const auto& t : {trivial(1), trivial(3), dihedral(3), dihedral(5), support::r4()}) {
    CHECK(verify_lemma_fully_invariant(t).pass);
    CHECK(verify_hopfian(t).pass);
    CHECK(verify_end_separation(t).pass);
    CHECK(verify_end_limit(t).pass);
    CHECK(verify_aut_inn_limit(t).pass);
    CHECK(verify_profinite_kernel(t).pass);
    CHECK(verify_mediating_iso(t).pass);
    CHECK(verify_product_embedding(t).pass);
  }
  CensusSource census;
  CHECK(verify_eta_stage(Presentation::free({"a", "b"}), 3, census).pass);
  CHECK(verify_limit_existence(trivial_tower(6)).pass);
  CHECK(verify_image_systems(trivial_tower(4)).pass);
}

TEST_CASE("plain report layout") {
  const auto text = format_reports({verify_hopfian(dihedral(3))}, ReportFormat::Plain);
  CHECK(text.starts_with("theorem"));
  CHECK(text.find("1 checks, 0 failed") != std::string::npos);
  const auto timed = format_reports({verify_hopfian(dihedral(3))}, ReportFormat::Plain, true);
  CHECK(timed.size() > text.size());
}
