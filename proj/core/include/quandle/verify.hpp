#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quandle/census.hpp"
#include "quandle/presented.hpp"
#include "quandle/projective.hpp"
#include "quandle/table.hpp"

namespace quandle {

struct TheoremReport {
  std::string id;
  std::string input;
  bool pass = true;
  std::optional<std::string> witness;  // always set on failure
  std::string detail;                  // what was checked
  std::chrono::nanoseconds elapsed{0};
};

// For every congruence g the intersection of all congruences of index at
// most index(g) lies inside g and is fully invariant under End(t).
TheoremReport verify_lemma_fully_invariant(const QuandleTable& t);

// Every surjective endomorphism is bijective.
TheoremReport verify_hopfian(const QuandleTable& t);

// Every ordered pair of distinct endomorphisms is separated in End of a
// fully invariant quotient; each witness is re-derived from scratch.
TheoremReport verify_end_separation(const QuandleTable& t);

// End(t) is isomorphic, as a monoid, to the limit of its images in
// End(t/a) over the fully invariant congruences a.
TheoremReport verify_end_limit(const QuandleTable& t);

// Aut(t) onto the limit of its images in Aut(t/a), and Inn(t) onto the
// limit of Inn(t/a), over the characteristic congruences. The Inn check is
// repeated over the fully invariant congruences and both outcomes reported.
TheoremReport verify_aut_inn_limit(const QuandleTable& t);

// With onto connecting maps the limit is non-empty, a quandle, and every
// projection is onto. Otherwise the report passes vacuously and says so.
TheoremReport verify_limit_existence(const ProjectiveSystem& s);

// The generator images generate the completion stage, each factor
// projection is onto, and eta agrees with evaluation in every factor.
TheoremReport verify_eta_stage(const Presentation& p, std::size_t bound, CensusSource& census);

// Intersection of all congruences is the diagonal.
TheoremReport verify_profinite_kernel(const QuandleTable& t);

// The mediating map from t into the limit of its quotient system is an
// isomorphism and unique.
TheoremReport verify_mediating_iso(const QuandleTable& t);

// The separating-product embedding is an injective homomorphism.
TheoremReport verify_product_embedding(const QuandleTable& t);

// Sub-thread sets of the limit of s (the subquandle generated by each
// thread) are recovered as limits of their image systems.
TheoremReport verify_image_systems(const ProjectiveSystem& s);

struct Scope {
  enum class Kind { Fixtures, Census, File } kind = Kind::Fixtures;
  std::size_t max_order = 0;  // Census
  std::string path;           // File
};

// "fixtures", "census:N" or "file:PATH". Throws ErrorKind::InvalidArgument.
Scope parse_scope(std::string_view text);

// Reports come back in a fixed order regardless of jobs.
std::vector<TheoremReport> run_suite(const Scope& scope, CensusSource& census, unsigned jobs = 1);

enum class ReportFormat { Plain, Machine };

std::string format_reports(const std::vector<TheoremReport>& reports, ReportFormat format,
                           bool with_timing = false);

bool all_passed(const std::vector<TheoremReport>& reports);

}  // namespace quandle
