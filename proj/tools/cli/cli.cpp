#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>

#include "quandle/census.hpp"
#include "quandle/congruence.hpp"
#include "quandle/errors.hpp"
#include "quandle/io.hpp"
#include "quandle/morphism.hpp"
#include "quandle/presented.hpp"
#include "quandle/projective.hpp"
#include "quandle/verify.hpp"

namespace quandle::cli {

namespace {

// Failures that mean the request itself was bad rather than its answer.
int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::MalformedTable:
    case ErrorKind::AxiomViolation:
    case ErrorKind::EmptyQuandle:
    case ErrorKind::MalformedPartition:
    case ErrorKind::CensusCapExceeded:
    case ErrorKind::CensusFormat:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidAutomorphism:
      return kUsageError;
    default:
      return kDomainFailure;
  }
}

struct Globals {
  unsigned jobs = 1;
  std::string format = "plain";
  std::string census_dir;

  CensusSource census() const {
    if (!census_dir.empty()) return CensusSource(std::filesystem::path(census_dir), jobs);
    return CensusSource::from_environment(jobs);
  }
};

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

void print_monoid(std::ostream& out, const FiniteMonoid& m) {
  out << "elements " << m.size() << "\n";
  for (const auto& f : m.elements()) out << io::format_map(f.images()) << "\n";
  out << "table\n";
  const auto table = m.composition_table();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << table[i * m.size() + j];
    out << "\n";
  }
  out << "generators";
  for (auto g : m.generators()) out << " " << g;
  out << "\n";
}

int cmd_census(const Globals& g, std::size_t order, const std::string& path, bool labeled,
               std::ostream& out) {
  if (order < 1 || order > kCensusCap) {
    throw Error(ErrorKind::CensusCapExceeded,
                "--order must lie in [1, " + std::to_string(kCensusCap) + "]");
  }
  const auto file = labeled ? labeled_census(order, g.jobs) : census(order, g.jobs);
  if (!path.empty()) store(file, path);
  out << file.count() << "\n";
  return kOk;
}

int cmd_analyze(const std::string& path, std::ostream& out) {
  const auto raw = io::parse_raw_qnd(io::slurp(path));
  out << "order " << raw.n << "\n";
  const auto axioms = check_axioms(raw);
  if (!axioms.ok()) {
    const auto& w = *axioms.first_violation;
    const char* name = w.axiom == Axiom::Q1 ? "Q1" : w.axiom == Axiom::Q2 ? "Q2" : "Q3";
    out << "axioms fail " << name << " at " << w.i << " " << w.j << " " << w.k << "\n";
    return kDomainFailure;
  }
  out << "axioms ok\n";
  const auto t = QuandleTable::from_raw(raw);
  const auto end = end_monoid(t);
  const auto aut = aut_group(t);
  const auto inn = inn_group(t);
  const auto all = all_congruences(t);
  out << "congruences " << all.size() << "\n";
  for (const auto& c : all) {
    out << "index " << c.index() << " " << io::format_classes(c.labels()) << " fully-invariant "
        << (is_fully_invariant(t, c, end.elements()) ? "yes" : "no") << " characteristic "
        << (is_characteristic(t, c, aut.elements()) ? "yes" : "no") << "\n";
  }
  out << "|End| " << end.size() << "\n";
  out << "|Aut| " << aut.size() << "\n";
  out << "|Inn| " << inn.size() << "\n";
  return kOk;
}

int cmd_quotient(const std::string& path, const std::vector<std::string>& spec, bool show_map,
                 std::ostream& out) {
  const auto t = io::read_qnd(path);
  const auto labels = io::parse_classes(join(spec));
  if (labels.size() != t.order()) {
    throw Error(ErrorKind::MalformedPartition, "--classes needs " + std::to_string(t.order()) +
                                                   " labels, got " + std::to_string(labels.size()));
  }
  const auto q = quotient(t, Partition::from_labels(labels));
  out << io::format_qnd(q.quotient);
  if (show_map) out << io::format_map(q.projection.images()) << "\n";
  return kOk;
}

int cmd_hom(const Globals& g, const std::string& src, const std::string& dst,
            const std::string& filter, std::ostream& out) {
  const auto a = io::read_qnd(src);
  const auto b = io::read_qnd(dst);
  const HomFilter f = filter == "surjective" ? HomFilter::Surjective
                      : filter == "injective" ? HomFilter::Injective
                      : filter == "bijective" ? HomFilter::Bijective
                                              : HomFilter::All;
  const auto maps = homs(a, b, f, g.jobs);
  out << "homs " << maps.size() << "\n";
  for (const auto& m : maps) out << io::format_map(m.images()) << "\n";
  return kOk;
}

int cmd_monoid(const Globals& g, const std::string& path, const std::string& kind,
               std::ostream& out) {
  const auto t = io::read_qnd(path);
  if (kind == "end") print_monoid(out, end_monoid(t, g.jobs));
  else if (kind == "aut") print_monoid(out, aut_group(t, g.jobs));
  else print_monoid(out, inn_group(t));
  return kOk;
}

int cmd_limit(const std::string& path, bool check_surjectivity, std::ostream& out) {
  const auto s = read_system(path);
  const auto report = validate_system(s);
  if (!report.valid) throw Error(ErrorKind::InvalidSystem, report.violations.front());
  const auto lim = limit(s);
  out << "threads " << lim.threads.size() << "\n";
  for (const auto& th : lim.threads) {
    out << "thread";
    for (auto x : th) out << " " << x;
    out << "\n";
  }
  if (lim.table) out << io::format_qnd(*lim.table);
  if (!check_surjectivity) return kOk;
  const auto surj = check_surjective_projections(s);
  out << "connecting maps " << (surj.hypothesis_met ? "onto" : "not all onto") << "\n";
  out << "projections " << (surj.conclusion_holds() ? "onto" : "not all onto") << "\n";
  return surj.hypothesis_met && !surj.conclusion_holds() ? kDomainFailure : kOk;
}

int cmd_complete(const std::string& path, std::size_t bound, CensusSource& census,
                 std::ostream& out) {
  const auto p = read_presentation(path);
  const auto stage = completion_stage(p, bound, census);
  out << "stage " << stage.bound << " order " << stage.table.order() << " factors "
      << stage.factors.size() << "\n";
  for (const auto& f : stage.factors) {
    out << "factor order " << f.order << " census " << f.census_index << " assignment";
    for (auto x : f.assignment) out << " " << x;
    out << "\n";
  }
  out << "eta";
  for (auto e : stage.eta) out << " " << e;
  out << "\n" << io::format_qnd(stage.table);
  return kOk;
}

int cmd_separate(const std::string& path, const std::string& t1, const std::string& t2,
                 std::size_t bound, CensusSource& census, std::ostream& out, std::ostream& err) {
  const auto p = read_presentation(path);
  const auto a = p.parse(t1);
  const auto b = p.parse(t2);
  const auto result = separate_words(p, a, b, bound, census);
  if (!result.certificate) {
    err << "not separated: " << result.reason << "\n";
    return kDomainFailure;
  }
  const auto& c = *result.certificate;
  out << "separated " << p.print(a) << " " << p.print(b) << "\n";
  out << "assignment";
  for (std::size_t i = 0; i < c.assignment.size(); ++i)
    out << " " << p.generators()[i] << "=" << c.assignment[i];
  out << "\n";
  out << "values " << c.value1 << " " << c.value2 << "\n";
  out << io::format_qnd(c.target);
  return kOk;
}

int cmd_count_quotients(const std::string& path, std::size_t order, CensusSource& census,
                        std::ostream& out) {
  const auto p = read_presentation(path);
  out << count_finite_quotients(p, order, census) << "\n";
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& scope_text, bool timing, CensusSource& census,
               std::ostream& out) {
  const auto scope = parse_scope(scope_text);
  const auto reports = run_suite(scope, census, g.jobs);
  out << format_reports(reports,
                        g.format == "machine" ? ReportFormat::Machine : ReportFormat::Plain, timing);
  return all_passed(reports) ? kOk : kDomainFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quandles, their congruences, limits and finite quotients", "quandle"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads for parallel searches")
      ->check(CLI::Range(1U, 256U));
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"plain", "machine"}));
  app.add_option("--census-dir", g.census_dir,
                 "Census cache directory (default: $QUANDLE_CENSUS_DIR)");

  std::size_t order = 0, bound = 0;
  std::string out_path, file, file2, filter = "all", kind = "end", t1, t2, scope;
  bool labeled = false, check_surj = false, show_map = false, timing = false;
  std::vector<std::string> classes;

  auto* census_cmd = app.add_subcommand("census", "Enumerate quandles of one order up to isomorphism");
  census_cmd->add_option("--order", order, "Order n")->required();
  census_cmd->add_option("--out", out_path, "Census file to write");
  census_cmd->add_flag("--labeled", labeled, "Keep every labeled table");

  auto* analyze_cmd = app.add_subcommand("analyze", "Axioms, congruences and End/Aut/Inn sizes");
  analyze_cmd->add_option("file", file, ".qnd file")->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient by a congruence");
  quotient_cmd->add_option("file", file, ".qnd file")->required();
  quotient_cmd->add_option("--classes", classes, "Class labels, one per element")
      ->required()
      ->expected(1, -1);
  quotient_cmd->add_flag("--map", show_map, "Also print the projection");

  auto* hom_cmd = app.add_subcommand("hom", "Homomorphisms between two quandles");
  hom_cmd->add_option("src", file, "Source .qnd")->required();
  hom_cmd->add_option("dst", file2, "Target .qnd")->required();
  hom_cmd->add_option("--filter", filter, "all|surjective|injective|bijective")
      ->check(CLI::IsMember({"all", "surjective", "injective", "bijective"}));

  auto* monoid_cmd = app.add_subcommand("monoid", "End, Aut or Inn with its composition table");
  monoid_cmd->add_option("file", file, ".qnd file")->required();
  monoid_cmd->add_option("--kind", kind, "end|aut|inn")->check(CLI::IsMember({"end", "aut", "inn"}));

  auto* limit_cmd = app.add_subcommand("limit", "Limit of a projective system");
  limit_cmd->add_option("system", file, ".qsys file")->required();
  limit_cmd->add_flag("--check-surjectivity", check_surj, "Check that projections are onto");

  auto* complete_cmd = app.add_subcommand("complete", "Finite stage of the profinite completion");
  complete_cmd->add_option("presentation", file, ".qpres file")->required();
  complete_cmd->add_option("--bound", bound, "Largest quotient order")->required();

  auto* separate_cmd = app.add_subcommand("separate", "Separate two terms in a finite quotient");
  separate_cmd->add_option("presentation", file, ".qpres file")->required();
  separate_cmd->add_option("--t1", t1, "First term")->required();
  separate_cmd->add_option("--t2", t2, "Second term")->required();
  separate_cmd->add_option("--bound", bound, "Largest quotient order")->required();

  auto* count_cmd = app.add_subcommand("count-quotients", "Number of quotients of one order");
  count_cmd->add_option("presentation", file, ".qpres file")->required();
  count_cmd->add_option("--order", order, "Quotient order")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  verify_cmd->add_option("--scope", scope, "fixtures | census:N | file:PATH")->required();
  verify_cmd->add_flag("--timing", timing, "Append timings (output no longer deterministic)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*census_cmd) return cmd_census(g, order, out_path, labeled, out);
    if (*analyze_cmd) return cmd_analyze(file, out);
    if (*quotient_cmd) return cmd_quotient(file, classes, show_map, out);
    if (*hom_cmd) return cmd_hom(g, file, file2, filter, out);
    if (*monoid_cmd) return cmd_monoid(g, file, kind, out);
    if (*limit_cmd) return cmd_limit(file, check_surj, out);
    auto census = g.census();
    if (*complete_cmd) return cmd_complete(file, bound, census, out);
    if (*separate_cmd) return cmd_separate(file, t1, t2, bound, census, out, err);
    if (*count_cmd) return cmd_count_quotients(file, order, census, out);
    if (*verify_cmd) return cmd_verify(g, scope, timing, census, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsageError;
}

}  // namespace quandle::cli
