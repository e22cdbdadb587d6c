#include "quandle/presented.hpp"

#include <algorithm>
#include <tuple>
#include <map>
#include <set>

#include "quandle/detail/parallel.hpp"
#include "quandle/errors.hpp"
#include "quandle/io.hpp"
#include "quandle/morphism.hpp"

namespace quandle {

Presentation Presentation::make(std::vector<std::string> generators,
                                std::vector<Relation> relations) {
  if (generators.empty()) {
    throw Error(ErrorKind::InvalidArgument, "a presentation needs at least one generator");
  }
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator symbol");
    if (!seen.insert(g).second) {
      throw Error(ErrorKind::InvalidArgument, "generator '" + g + "' declared twice");
    }
  }
  for (const auto& r : relations) {
    if (std::max(r.lhs.max_generator(), r.rhs.max_generator()) >= generators.size()) {
      throw Error(ErrorKind::InvalidArgument, "relation uses an undeclared generator");
    }
  }
  Presentation p;
  p.generators_ = std::move(generators);
  p.relations_ = std::move(relations);
  return p;
}

Presentation Presentation::free(std::vector<std::string> generators) {
  return make(std::move(generators), {});
}

Presentation parse_presentation(std::string_view text) {
  auto lines = io::split_lines(text);
  std::optional<std::vector<std::string>> gens;
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> rel_lines;  // line, body, column
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto tokens = io::split_ws(lines[i]);
    if (tokens.empty() || tokens[0].starts_with('#')) continue;
    if (tokens[0] == "gens") {
      if (gens) throw ParseError("duplicate 'gens' line", line_no);
      gens = std::vector<std::string>(tokens.begin() + 1, tokens.end());
      if (gens->empty()) throw ParseError("'gens' needs at least one symbol", line_no);
      for (std::size_t g = 0; g < gens->size(); ++g)
        if (std::find(gens->begin(), gens->begin() + g, (*gens)[g]) != gens->begin() + g)
          throw ParseError("generator '" + (*gens)[g] + "' listed twice", line_no);
    } else if (tokens[0] == "rel") {
      if (!gens) throw ParseError("'rel' before 'gens'", line_no);
      auto pos = lines[i].find("rel");
      rel_lines.emplace_back(line_no, lines[i].substr(pos + 3), pos + 3);
    } else {
      throw ParseError("unknown directive '" + tokens[0] + "'", line_no);
    }
  }
  if (!gens) throw ParseError("missing 'gens' line", std::nullopt);

  std::vector<Relation> relations;
  for (const auto& [line_no, body, column] : rel_lines) {
    auto eq = body.find('=');
    if (eq == std::string::npos || body.find('=', eq + 1) != std::string::npos) {
      throw ParseError("relation must have the form '<term> = <term>'", line_no);
    }
    auto side = [&, line_no = line_no, column = column](std::string_view s, std::size_t base) {
      try {
        return parse_term(s, *gens);
      } catch (const ParseError& e) {
        // Re-anchor the offset to the line.
        throw ParseError(e.detail(), line_no, e.offset() ? std::optional(*e.offset() + column + base) : std::nullopt);
      }
    };
    relations.push_back({side(std::string_view(body).substr(0, eq), 0),
                         side(std::string_view(body).substr(eq + 1), eq + 1)});
  }
  try {
    return Presentation::make(*gens, std::move(relations));
  } catch (const Error& e) {
    throw ParseError(e.what(), std::nullopt);
  }
}

Presentation read_presentation(const std::filesystem::path& path) {
  return parse_presentation(io::slurp(path));
}

std::string format_presentation(const Presentation& p) {
  std::string out = "gens";
  for (const auto& g : p.generators()) out += " " + g;
  out += "\n";
  for (const auto& r : p.relations()) out += "rel " + p.print(r.lhs) + " = " + p.print(r.rhs) + "\n";
  return out;
}

bool satisfies_relations(const Presentation& p, const QuandleTable& f, std::span<const Element> a) {
  return std::all_of(p.relations().begin(), p.relations().end(), [&](const Relation& r) {
    return evaluate(r.lhs, f, a) == evaluate(r.rhs, f, a);
  });
}

namespace {

class AssignmentSearch {
 public:
  AssignmentSearch(const Presentation& p, const QuandleTable& f, bool surjective_only)
      : p_(p), f_(f), surjective_only_(surjective_only), by_depth_(p.rank()) {
    for (const auto& r : p.relations()) {
      by_depth_[std::max(r.lhs.max_generator(), r.rhs.max_generator())].push_back(&r);
    }
  }

  void run(Element first, std::vector<Assignment>& out) {
    out_ = &out;
    current_.assign(p_.rank(), 0);
    place(0, first);
  }

 private:
  void place(std::size_t g, Element v) {
    current_[g] = v;
    for (const Relation* r : by_depth_[g]) {
      if (evaluate(r->lhs, f_, current_) != evaluate(r->rhs, f_, current_)) return;
    }
    if (g + 1 == p_.rank()) {
      if (surjective_only_) {
        auto mask = closure_mask(f_, current_);
        if (!std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) return;
      }
      out_->push_back(current_);
      return;
    }
    for (Element w = 0; w < f_.order(); ++w) place(g + 1, w);
  }

  const Presentation& p_;
  const QuandleTable& f_;
  bool surjective_only_;
  std::vector<std::vector<const Relation*>> by_depth_;
  Assignment current_;
  std::vector<Assignment>* out_ = nullptr;
};

}  // namespace

std::vector<Assignment> quotient_homs(const Presentation& p, const QuandleTable& f,
                                      bool surjective_only, unsigned jobs) {
  std::vector<std::vector<Assignment>> slots(f.order());
  detail::parallel_for(jobs, f.order(), [&](std::size_t v) {
    AssignmentSearch search(p, f, surjective_only);
    search.run(static_cast<Element>(v), slots[v]);
  });
  std::vector<Assignment> out;
  for (auto& s : slots)
    for (auto& a : s) out.push_back(std::move(a));
  return out;
}

bool validate_certificate(const Presentation& p, const Term& t1, const Term& t2,
                          const SeparationCertificate& c) {
  if (c.assignment.size() != p.rank()) return false;
  for (Element v : c.assignment)
    if (v >= c.target.order()) return false;
  for (const auto& r : p.relations()) {
    if (evaluate(r.lhs, c.target, c.assignment) != evaluate(r.rhs, c.target, c.assignment)) {
      return false;
    }
  }
  const Element v1 = evaluate(t1, c.target, c.assignment);
  const Element v2 = evaluate(t2, c.target, c.assignment);
  return v1 == c.value1 && v2 == c.value2 && v1 != v2;
}

SeparationResult separate_words(const Presentation& p, const Term& t1, const Term& t2,
                                std::size_t order_bound, CensusSource& census) {
  if (std::max(t1.max_generator(), t2.max_generator()) >= p.rank()) {
    throw Error(ErrorKind::InvalidArgument, "term uses an undeclared generator");
  }
  if (t1 == t2) return {std::nullopt, "identical terms"};
  for (std::size_t n = 2; n <= order_bound; ++n) {
    const auto& tables = census.get(n).tables;
    for (const auto& f : tables) {
      for (auto& a : quotient_homs(p, f, false)) {
        const Element v1 = evaluate(t1, f, a);
        const Element v2 = evaluate(t2, f, a);
        if (v1 == v2) continue;
        SeparationCertificate cert{f, std::move(a), v1, v2};
        if (!validate_certificate(p, t1, t2, cert)) {
          throw Error(ErrorKind::Internal, "separation certificate failed re-validation");
        }
        return {std::move(cert), {}};
      }
    }
  }
  return {std::nullopt, "no separating quotient of order <= " + std::to_string(order_bound)};
}

CompletionStage completion_stage(const Presentation& p, std::size_t index_bound,
                                 CensusSource& census, StageLimits limits) {
  if (index_bound == 0) throw Error(ErrorKind::InvalidArgument, "stage bound must be positive");
  CompletionStage stage{index_bound, {}, {}, trivial(1), {}};
  for (std::size_t n = 1; n <= index_bound; ++n) {
    const auto& tables = census.get(n).tables;
    for (std::size_t ci = 0; ci < tables.size(); ++ci) {
      for (auto& a : quotient_homs(p, tables[ci], true)) {
        stage.factors.push_back({n, ci, tables[ci], std::move(a)});
        if (stage.factors.size() > limits.max_factors) {
          throw Error(ErrorKind::StageTooLarge,
                      "stage " + std::to_string(index_bound) + " needs more than " +
                          std::to_string(limits.max_factors) + " factors");
        }
      }
    }
  }

  const std::size_t k = stage.factors.size();
  auto op = [&](const std::vector<Element>& x, const std::vector<Element>& y, bool inverse) {
    std::vector<Element> z(k);
    for (std::size_t f = 0; f < k; ++f) {
      const auto& t = stage.factors[f].target;
      z[f] = inverse ? t.op_inv(x[f], y[f]) : t.op(x[f], y[f]);
    }
    return z;
  };

  std::vector<std::vector<Element>> gens(p.rank(), std::vector<Element>(k));
  for (std::size_t g = 0; g < p.rank(); ++g)
    for (std::size_t f = 0; f < k; ++f) gens[g][f] = stage.factors[f].assignment[g];

  std::set<std::vector<Element>> seen(gens.begin(), gens.end());
  std::vector<std::vector<Element>> members(seen.begin(), seen.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto [x, y, inv] : {std::tuple{i, j, false}, std::tuple{j, i, false},
                               std::tuple{i, j, true}, std::tuple{j, i, true}}) {
        auto z = op(members[x], members[y], inv);
        if (seen.insert(z).second) {
          members.push_back(std::move(z));
          if (members.size() > limits.max_elements) {
            throw Error(ErrorKind::StageTooLarge,
                        "stage " + std::to_string(index_bound) + " has more than " +
                            std::to_string(limits.max_elements) + " elements");
          }
        }
      }
    }
  }

  stage.elements.assign(seen.begin(), seen.end());
  std::map<std::vector<Element>, Element> index;
  for (std::size_t e = 0; e < stage.elements.size(); ++e) {
    index.emplace(stage.elements[e], static_cast<Element>(e));
  }
  const std::size_t m = stage.elements.size();
  std::vector<Element> cells(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      cells[a * m + b] = index.at(op(stage.elements[a], stage.elements[b], false));
  stage.table = QuandleTable::from_cells_unchecked(m, std::move(cells));
  for (const auto& g : gens) stage.eta.push_back(index.at(g));
  return stage;
}

QuandleMap stage_projection(const CompletionStage& hi, const CompletionStage& lo) {
  if (lo.factors.size() > hi.factors.size()) {
    throw Error(ErrorKind::InvalidArgument, "projection must go to a lower stage");
  }
  for (std::size_t f = 0; f < lo.factors.size(); ++f) {
    const auto& a = hi.factors[f];
    const auto& b = lo.factors[f];
    if (a.order != b.order || a.census_index != b.census_index || a.assignment != b.assignment) {
      throw Error(ErrorKind::InvalidArgument, "lower stage factors are not a prefix");
    }
  }
  std::map<std::vector<Element>, Element> index;
  for (std::size_t e = 0; e < lo.elements.size(); ++e) {
    index.emplace(lo.elements[e], static_cast<Element>(e));
  }
  std::vector<Element> images;
  images.reserve(hi.elements.size());
  for (const auto& x : hi.elements) {
    std::vector<Element> prefix(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lo.factors.size()));
    auto it = index.find(prefix);
    if (it == index.end()) throw Error(ErrorKind::Internal, "stage projection leaves the lower stage");
    images.push_back(it->second);
  }
  return QuandleMap::make(hi.table, lo.table, std::move(images));
}

QuandleMap factor_projection(const CompletionStage& stage, std::size_t factor) {
  if (factor >= stage.factors.size()) throw Error(ErrorKind::InvalidArgument, "no such factor");
  std::vector<Element> images;
  for (const auto& x : stage.elements) images.push_back(x[factor]);
  return QuandleMap::make(stage.table, stage.factors[factor].target, std::move(images));
}

std::size_t count_finite_quotients(const Presentation& p, std::size_t n, CensusSource& census) {
  std::size_t total = 0;
  for (const auto& f : census.get(n).tables) {
    const std::size_t surjections = quotient_homs(p, f, true).size();
    const std::size_t aut = aut_group(f).size();
    if (surjections % aut != 0) {
      throw Error(ErrorKind::Internal, "automorphism action on surjections is not free");
    }
    total += surjections / aut;
  }
  return total;
}

}  // namespace quandle
