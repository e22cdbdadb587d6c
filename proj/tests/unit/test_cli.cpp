#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "quandle/io.hpp"
#include "support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = quandle::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& name) { return support::data(name).string(); }

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("analyze reports fixture invariants") {
  const auto r3 = run({"analyze", path("R3.qnd")});
  CHECK(r3.code == 0);
  CHECK(has_line(r3.out, "order 3"));
  CHECK(has_line(r3.out, "axioms ok"));
  CHECK(has_line(r3.out, "congruences 2"));
  CHECK(has_line(r3.out, "|End| 9"));
  CHECK(has_line(r3.out, "|Aut| 6"));
  CHECK(has_line(r3.out, "|Inn| 6"));
  const auto t3 = run({"analyze", path("T3.qnd")});
  CHECK(has_line(t3.out, "congruences 5"));
  CHECK(has_line(t3.out, "|End| 27"));
  CHECK(has_line(t3.out, "|Inn| 1"));
  const auto bad = run({"analyze", path("bad_q2.qnd")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("axioms fail Q2") != std::string::npos);
  CHECK(run({"analyze", path("short.qnd")}).code == 2);
  CHECK(run({"analyze", path("missing.qnd")}).code != 0);
}

TEST_CASE("census subcommand") {
  CHECK(run({"census", "--order", "4"}).out == "7\n");
  CHECK(run({"census", "--order", "3", "--labeled"}).out == "5\n");
  CHECK(run({"census", "--order", "9"}).code == 2);
  CHECK(run({"census", "--order", "0"}).code == 2);
  const auto dir = support::scratch("cli-census");
  const auto file = (dir / "c4.txt").string();
  CHECK(run({"census", "--order", "4", "--out", file}).code == 0);
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "census 4 7");
}

TEST_CASE("quotient and hom") {
  const auto q = run({"quotient", path("T3.qnd"), "--classes", "0", "0", "1", "--map"});
  CHECK(q.code == 0);
  CHECK(q.out.starts_with(quandle::io::format_qnd(quandle::trivial(2))));
  CHECK(has_line(q.out, "map 0 0 1"));
  CHECK(run({"quotient", path("R3.qnd"), "--classes", "0", "0", "1"}).code == 1);
  CHECK(run({"quotient", path("R3.qnd"), "--classes", "0", "1"}).code == 2);
  const auto h = run({"hom", path("R3.qnd"), path("T3.qnd")});
  CHECK(has_line(h.out, "homs 3"));
  CHECK(has_line(run({"hom", path("T3.qnd"), path("R3.qnd"), "--filter", "bijective"}).out, "homs 0"));
}

TEST_CASE("monoid listing") {
  const auto m = run({"monoid", path("R3.qnd"), "--kind", "aut"});
  CHECK(m.code == 0);
  CHECK(has_line(m.out, "elements 6"));
  CHECK(has_line(m.out, "table"));
  CHECK(m.out.find("generators") != std::string::npos);
}

TEST_CASE("limits and surjectivity") {
  const auto l = run({"limit", path("trivtower3.qsys"), "--check-surjectivity"});
  CHECK(l.code == 0);
  CHECK(has_line(l.out, "threads 3"));
  CHECK(has_line(l.out, "thread 0 1 2"));
  CHECK(has_line(l.out, "connecting maps onto"));
  CHECK(has_line(l.out, "projections onto"));
  const auto n = run({"limit", path("not_onto.qsys"), "--check-surjectivity"});
  CHECK(n.code == 0);
  CHECK(has_line(n.out, "connecting maps not all onto"));
  CHECK(run({"limit", path("bad_cocycle.qsys")}).code == 1);
}

TEST_CASE("presented quandles") {
  const auto s = run({"separate", path("free2.qpres"), "--t1", "a", "--t2", "a*b", "--bound", "3"});
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "separated a a*b"));
  const auto ns = run({"separate", path("collapse.qpres"), "--t1", "a", "--t2", "b", "--bound", "3"});
  CHECK(ns.code == 1);
  CHECK(ns.err.starts_with("not separated: "));
  CHECK(run({"separate", path("free2.qpres"), "--t1", "a*", "--t2", "b", "--bound", "3"}).code == 2);
  CHECK(run({"count-quotients", path("free2.qpres"), "--order", "2"}).out == "1\n");
  const auto c = run({"complete", path("free2.qpres"), "--bound", "2"});
  CHECK(c.code == 0);
  CHECK(c.out.starts_with("stage 2 order "));
}

TEST_CASE("verify and global options") {
  const auto v = run({"verify", "--scope", "fixtures", "--format", "machine", "--jobs", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.starts_with("THEOREM "));
  CHECK(v.out.find(" FAIL ") == std::string::npos);
  const auto front = run({"--format", "machine", "verify", "--scope", "fixtures"});
  CHECK(front.out == v.out);
  CHECK(run({"verify", "--scope", "census:9"}).code == 2);
  CHECK(run({"verify", "--scope", "nonsense"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"census"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"monoid", path("R3.qnd"), "--kind", "all"}).code == 2);
}
