#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quandle/census.hpp"
#include "quandle/map.hpp"
#include "quandle/table.hpp"
#include "quandle/term.hpp"

namespace quandle {

struct Relation {
  Term lhs;
  Term rhs;
};

// A finitely presented quandle, held purely syntactically. Semantic
// questions are answered through finite quotients only.
class Presentation {
 public:
  // Throws ErrorKind::InvalidArgument for repeated or empty generator
  // symbols, or relations mentioning undeclared generators.
  static Presentation make(std::vector<std::string> generators, std::vector<Relation> relations);
  static Presentation free(std::vector<std::string> generators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t rank() const { return generators_.size(); }

  Term parse(std::string_view text) const { return parse_term(text, generators_); }
  std::string print(const Term& t) const { return to_string(t, generators_); }

 private:
  std::vector<std::string> generators_;
  std::vector<Relation> relations_;
};

// .qpres format: one "gens a b c" line, then "rel <term> = <term>" lines.
// Blank lines and lines starting with '#' are ignored.
Presentation parse_presentation(std::string_view text);
Presentation read_presentation(const std::filesystem::path& path);
std::string format_presentation(const Presentation& p);

using Assignment = std::vector<Element>;  // generator index -> element

bool satisfies_relations(const Presentation& p, const QuandleTable& f, std::span<const Element> a);

// Every generator assignment into f satisfying all relations, in
// lexicographic order. With surjective_only, the images must also generate f.
std::vector<Assignment> quotient_homs(const Presentation& p, const QuandleTable& f,
                                      bool surjective_only, unsigned jobs = 1);

struct SeparationCertificate {
  QuandleTable target;
  Assignment assignment;
  Element value1;
  Element value2;
};

struct SeparationResult {
  std::optional<SeparationCertificate> certificate;
  std::string reason;  // set when no certificate was found
};

// Independent re-check: relations hold, the values match evaluation and
// differ.
bool validate_certificate(const Presentation& p, const Term& t1, const Term& t2,
                          const SeparationCertificate& c);

// Scans census quandles of order 2..order_bound (census order, then
// lexicographic assignments) and returns the first certificate separating
// t1 from t2. Not finding one is a result, not an error.
SeparationResult separate_words(const Presentation& p, const Term& t1, const Term& t2,
                                std::size_t order_bound, CensusSource& census);

struct StageFactor {
  std::size_t order;
  std::size_t census_index;
  QuandleTable target;
  Assignment assignment;  // surjective, relation-satisfying
};

// Finite stage Q_n of the profinite completion: the subquandle of the
// product of all surjective quotients of order <= n generated by the
// generators' images.
struct CompletionStage {
  std::size_t bound;
  std::vector<StageFactor> factors;             // by (order, census index, assignment)
  std::vector<std::vector<Element>> elements;   // coordinates, sorted
  QuandleTable table;
  std::vector<Element> eta;                     // generator -> element of table
};

struct StageLimits {
  std::size_t max_factors = 256;
  std::size_t max_elements = 4096;
};

// Throws ErrorKind::StageTooLarge when a limit is exceeded.
CompletionStage completion_stage(const Presentation& p, std::size_t index_bound,
                                 CensusSource& census, StageLimits limits = {});

// Coordinate projection Q_hi -> Q_lo; requires lo.factors to be a prefix of
// hi.factors (true for stages of one presentation with lo.bound <= hi.bound).
QuandleMap stage_projection(const CompletionStage& hi, const CompletionStage& lo);

// Composite Q_n -> F for one participating factor.
QuandleMap factor_projection(const CompletionStage& stage, std::size_t factor);

// Number of congruences with quotient of order exactly n:
// sum over census F of |surjective assignments onto F| / |Aut(F)|.
std::size_t count_finite_quotients(const Presentation& p, std::size_t n, CensusSource& census);

}  // namespace quandle
