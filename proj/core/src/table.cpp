#include "quandle/table.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "quandle/errors.hpp"
#include "quandle/group.hpp"

namespace quandle {

RawTable RawTable::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  RawTable raw;
  raw.n = rows.size();
  raw.cells.reserve(raw.n * raw.n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != raw.n) {
      throw Error(ErrorKind::MalformedTable,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(raw.n));
    }
    raw.cells.insert(raw.cells.end(), rows[i].begin(), rows[i].end());
  }
  return raw;
}

AxiomReport check_axioms(const RawTable& candidate) {
  const std::size_t n = candidate.n;
  if (n == 0) throw Error(ErrorKind::EmptyQuandle, "quandles are non-empty");
  if (candidate.cells.size() != n * n) {
    throw Error(ErrorKind::MalformedTable,
                "expected " + std::to_string(n * n) + " entries, got " +
                    std::to_string(candidate.cells.size()));
  }
  for (std::size_t c = 0; c < candidate.cells.size(); ++c) {
    const auto v = candidate.cells[c];
    if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
      throw Error(ErrorKind::MalformedTable,
                  "entry [" + std::to_string(c / n) + "][" + std::to_string(c % n) + "] = " +
                      std::to_string(v) + " is outside [0, " + std::to_string(n) + ")");
    }
  }
  auto at = [&](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(candidate.cells[i * n + j]);
  };

  AxiomReport report;
  auto note = [&](Axiom a, std::size_t i, std::size_t j, std::size_t k) {
    if (!report.first_violation) {
      report.first_violation = AxiomViolation{a, static_cast<Element>(i),
                                              static_cast<Element>(j), static_cast<Element>(k)};
    }
  };

  for (std::size_t i = 0; i < n && report.q1_ok; ++i) {
    if (at(i, i) != i) {
      report.q1_ok = false;
      note(Axiom::Q1, i, i, i);
    }
  }

  // Smallest (i, k, j) with i < k colliding in column j.
  std::optional<AxiomViolation> q2;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> first(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = at(i, j);
      if (first[v] != n) {
        AxiomViolation w{Axiom::Q2, static_cast<Element>(first[v]), static_cast<Element>(i),
                         static_cast<Element>(j)};
        auto key = [](const AxiomViolation& x) { return std::tie(x.i, x.j, x.k); };
        if (!q2 || key(w) < key(*q2)) q2 = w;
        break;
      }
      first[v] = i;
    }
  }
  if (q2) {
    report.q2_ok = false;
    note(Axiom::Q2, q2->i, q2->j, q2->k);
  }

  for (std::size_t i = 0; i < n && report.q3_ok; ++i) {
    for (std::size_t j = 0; j < n && report.q3_ok; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (at(at(i, j), k) != at(at(i, k), at(j, k))) {
          report.q3_ok = false;
          note(Axiom::Q3, i, j, k);
          break;
        }
      }
    }
  }
  return report;
}

namespace {

std::string describe(const AxiomViolation& v) {
  const char* names[] = {"Q1 (idempotence)", "Q2 (right translations bijective)",
                         "Q3 (right self-distributivity)"};
  return std::string("axiom ") + names[static_cast<int>(v.axiom)] + " fails at (" +
         std::to_string(v.i) + ", " + std::to_string(v.j) + ", " + std::to_string(v.k) + ")";
}

}  // namespace

QuandleTable QuandleTable::build(std::size_t n, std::vector<Element> cells) {
  if (n == 0) throw Error(ErrorKind::EmptyQuandle, "quandles are non-empty");
  if (cells.size() != n * n) throw Error(ErrorKind::MalformedTable, "table is not n x n");
  std::vector<Element> dual(n * n, static_cast<Element>(n));
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t y = 0; y < n; ++y) {
      Element x = cells[z * n + y];
      if (x >= n) throw Error(ErrorKind::MalformedTable, "entry out of range");
      if (dual[x * n + y] != n) {
        throw Error(ErrorKind::AxiomViolation,
                    "axiom Q2 (right translations bijective) fails in column " +
                        std::to_string(y));
      }
      dual[x * n + y] = static_cast<Element>(z);
    }
  }
  return QuandleTable(std::make_shared<const Data>(Data{n, std::move(cells), std::move(dual)}));
}

QuandleTable QuandleTable::from_raw(const RawTable& raw) {
  auto report = check_axioms(raw);
  if (!report.ok()) throw Error(ErrorKind::AxiomViolation, describe(*report.first_violation));
  std::vector<Element> cells(raw.cells.begin(), raw.cells.end());
  return build(raw.n, std::move(cells));
}

QuandleTable QuandleTable::from_rows(const std::vector<std::vector<Element>>& rows) {
  std::vector<std::vector<std::int64_t>> wide;
  wide.reserve(rows.size());
  for (const auto& r : rows) wide.emplace_back(r.begin(), r.end());
  return from_raw(RawTable::from_rows(wide));
}

QuandleTable QuandleTable::from_cells(std::size_t n, std::vector<Element> cells) {
  RawTable raw{n, std::vector<std::int64_t>(cells.begin(), cells.end())};
  auto report = check_axioms(raw);
  if (!report.ok()) throw Error(ErrorKind::AxiomViolation, describe(*report.first_violation));
  return build(n, std::move(cells));
}

QuandleTable QuandleTable::from_cells_unchecked(std::size_t n, std::vector<Element> cells) {
  return build(n, std::move(cells));
}

std::vector<std::vector<Element>> QuandleTable::rows() const {
  std::vector<std::vector<Element>> out;
  for (std::size_t i = 0; i < order(); ++i) {
    auto r = row(static_cast<Element>(i));
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

bool operator==(const QuandleTable& a, const QuandleTable& b) {
  return a.data_ == b.data_ || (a.order() == b.order() && a.data_->cells == b.data_->cells);
}

std::strong_ordering operator<=>(const QuandleTable& a, const QuandleTable& b) {
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return a.data_->cells <=> b.data_->cells;
}

QuandleTable dual(const QuandleTable& t) {
  auto d = t.dual_cells();
  return QuandleTable::from_cells_unchecked(t.order(), std::vector<Element>(d.begin(), d.end()));
}

QuandleTable trivial(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::EmptyQuandle, "trivial quandle needs n >= 1");
  std::vector<Element> cells(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = static_cast<Element>(i);
  return QuandleTable::from_cells(n, std::move(cells));
}

QuandleTable conj(const GroupTable& g, std::int64_t n) {
  const std::size_t k = g.order();
  std::vector<Element> cells(k * k);
  for (Element y = 0; y < k; ++y) {
    Element yn = g.power(y, n);
    Element yinv_n = g.inv(yn);
    for (Element x = 0; x < k; ++x) cells[x * k + y] = g.mul(g.mul(yinv_n, x), yn);
  }
  return QuandleTable::from_cells(k, std::move(cells));
}

QuandleTable core(const GroupTable& g) {
  const std::size_t k = g.order();
  std::vector<Element> cells(k * k);
  for (Element x = 0; x < k; ++x)
    for (Element y = 0; y < k; ++y) cells[x * k + y] = g.mul(g.mul(y, g.inv(x)), y);
  return QuandleTable::from_cells(k, std::move(cells));
}

QuandleTable alexander(const GroupTable& g, const Permutation& psi) {
  if (psi.size() != g.order() || !is_group_automorphism(g, psi)) {
    throw Error(ErrorKind::InvalidAutomorphism, "psi is not a group automorphism");
  }
  const std::size_t k = g.order();
  std::vector<Element> cells(k * k);
  for (Element x = 0; x < k; ++x)
    for (Element y = 0; y < k; ++y) cells[x * k + y] = g.mul(psi[g.mul(x, g.inv(y))], y);
  return QuandleTable::from_cells(k, std::move(cells));
}

QuandleTable dihedral(std::size_t n) { return core(GroupTable::cyclic(n)); }

ProductIndexer::ProductIndexer(std::vector<std::size_t> orders)
    : orders_(std::move(orders)), strides_(orders_.size()), size_(1) {
  for (std::size_t f = orders_.size(); f-- > 0;) {
    strides_[f] = size_;
    size_ *= orders_[f];
  }
}

std::size_t ProductIndexer::index(std::span<const Element> coords) const {
  std::size_t idx = 0;
  for (std::size_t f = 0; f < orders_.size(); ++f) idx += coords[f] * strides_[f];
  return idx;
}

std::vector<Element> ProductIndexer::coords(std::size_t index) const {
  std::vector<Element> out(orders_.size());
  for (std::size_t f = 0; f < orders_.size(); ++f) out[f] = coord(index, f);
  return out;
}

Element ProductIndexer::coord(std::size_t index, std::size_t factor) const {
  return static_cast<Element>((index / strides_[factor]) % orders_[factor]);
}

QuandleTable product(std::span<const QuandleTable> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "product of an empty list");
  std::vector<std::size_t> orders;
  for (const auto& f : factors) orders.push_back(f.order());
  ProductIndexer idx(orders);
  const std::size_t n = idx.size();
  std::vector<Element> cells(n * n);
  std::vector<Element> a, b, c(factors.size());
  for (std::size_t x = 0; x < n; ++x) {
    a = idx.coords(x);
    for (std::size_t y = 0; y < n; ++y) {
      b = idx.coords(y);
      for (std::size_t f = 0; f < factors.size(); ++f) c[f] = factors[f].op(a[f], b[f]);
      cells[x * n + y] = static_cast<Element>(idx.index(c));
    }
  }
  return QuandleTable::from_cells_unchecked(n, std::move(cells));
}

std::vector<bool> closure_mask(const QuandleTable& t, std::span<const Element> seed) {
  const std::size_t n = t.order();
  if (seed.empty()) throw Error(ErrorKind::InvalidArgument, "empty generating seed");
  std::vector<bool> in(n, false);
  std::vector<Element> members;
  for (Element s : seed) {
    if (s >= n) throw Error(ErrorKind::InvalidArgument, "seed element out of range");
    if (!in[s]) {
      in[s] = true;
      members.push_back(s);
    }
  }
  // members grows while we scan it; every pair (a, b) is visited once.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Element a = members[i], b = members[j];
      for (Element v : {t.op(a, b), t.op(b, a), t.op_inv(a, b), t.op_inv(b, a)}) {
        if (!in[v]) {
          in[v] = true;
          members.push_back(v);
        }
      }
    }
  }
  return in;
}

Subquandle generated_subquandle(const QuandleTable& t, std::span<const Element> seed) {
  auto in = closure_mask(t, seed);
  std::vector<Element> elems;
  std::vector<Element> local(t.order(), 0);
  for (Element x = 0; x < t.order(); ++x) {
    if (in[x]) {
      local[x] = static_cast<Element>(elems.size());
      elems.push_back(x);
    }
  }
  const std::size_t k = elems.size();
  std::vector<Element> cells(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cells[i * k + j] = local[t.op(elems[i], elems[j])];
  return Subquandle{std::move(elems), QuandleTable::from_cells_unchecked(k, std::move(cells))};
}

Permutation right_translation(const QuandleTable& t, Element q) {
  if (q >= t.order()) throw Error(ErrorKind::InvalidArgument, "element out of range");
  Permutation p(t.order());
  for (Element x = 0; x < t.order(); ++x) p[x] = t.op(x, q);
  return p;
}

bool is_permutation(std::span<const Element> p) {
  std::vector<bool> seen(p.size(), false);
  for (Element v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation inverse_permutation(std::span<const Element> p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<Element>(i);
  return inv;
}

}  // namespace quandle
