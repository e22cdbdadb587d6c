#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace quandle {

class GroupTable;

// Elements of a finite quandle are always 0-based indices; labels belong to
// the I/O layer.
using Element = std::uint32_t;
using Permutation = std::vector<Element>;

// A candidate operation table that has not been validated yet. Entries are
// signed so that out-of-range input (including negatives) stays observable.
struct RawTable {
  std::size_t n = 0;
  std::vector<std::int64_t> cells;  // row-major, cells[i * n + j] = i * j

  static RawTable from_rows(const std::vector<std::vector<std::int64_t>>& rows);
};

enum class Axiom { Q1, Q2, Q3 };

struct AxiomViolation {
  Axiom axiom;
  // Q1: (i, i, i).  Q2: (i, k, j) with i < k and i*j == k*j.
  // Q3: (i, j, k) with (i*j)*k != (i*k)*(j*k).
  Element i, j, k;
};

struct AxiomReport {
  bool q1_ok = true;
  bool q2_ok = true;
  bool q3_ok = true;
  std::optional<AxiomViolation> first_violation;

  bool ok() const { return q1_ok && q2_ok && q3_ok; }
};

// Checks idempotence, bijectivity of right translations and right
// self-distributivity exhaustively. Throws ErrorKind::MalformedTable when the
// candidate is not an n x n array over [0, n), and ErrorKind::EmptyQuandle
// for n = 0.
AxiomReport check_axioms(const RawTable& candidate);

// Immutable finite quandle stored as its operation table, row = left operand.
// Copies share storage. The dual table (x *^-1 y) is precomputed.
class QuandleTable {
 public:
  // Validating constructors; throw ErrorKind::AxiomViolation with the first
  // witness when the table is not a quandle.
  static QuandleTable from_raw(const RawTable& raw);
  static QuandleTable from_rows(const std::vector<std::vector<Element>>& rows);
  static QuandleTable from_cells(std::size_t n, std::vector<Element> cells);

  // For callers that derive the table from a structure already known to be a
  // quandle (substructures, quotients, products). Only range and column
  // bijectivity are checked, since the dual table needs them.
  static QuandleTable from_cells_unchecked(std::size_t n, std::vector<Element> cells);

  std::size_t order() const { return data_->n; }
  Element op(Element a, Element b) const { return data_->cells[a * data_->n + b]; }
  Element op_inv(Element a, Element b) const { return data_->dual[a * data_->n + b]; }

  std::span<const Element> row(Element a) const {
    return std::span<const Element>(data_->cells).subspan(a * data_->n, data_->n);
  }
  std::span<const Element> cells() const { return data_->cells; }
  std::span<const Element> dual_cells() const { return data_->dual; }
  std::vector<std::vector<Element>> rows() const;

  friend bool operator==(const QuandleTable& a, const QuandleTable& b);
  friend std::strong_ordering operator<=>(const QuandleTable& a, const QuandleTable& b);

 private:
  struct Data {
    std::size_t n;
    std::vector<Element> cells;
    std::vector<Element> dual;
  };
  explicit QuandleTable(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static QuandleTable build(std::size_t n, std::vector<Element> cells);

  std::shared_ptr<const Data> data_;
};

// x *^-1 y as its own quandle: d[x][y] = the unique z with z * y = x.
QuandleTable dual(const QuandleTable& t);

// x * y = x. Throws ErrorKind::EmptyQuandle for n = 0.
QuandleTable trivial(std::size_t n);

// x * y = y^-n x y^n.
QuandleTable conj(const GroupTable& g, std::int64_t n);

// x * y = y x^-1 y.
QuandleTable core(const GroupTable& g);

// x * y = psi(x y^-1) y. Throws ErrorKind::InvalidAutomorphism unless psi is a
// group automorphism of g.
QuandleTable alexander(const GroupTable& g, const Permutation& psi);

// Dihedral quandle R_n = Core(Z/n): x * y = 2y - x mod n.
QuandleTable dihedral(std::size_t n);

// Componentwise operation on the Cartesian product. Element (c_0, ..., c_{k-1})
// has index ((c_0 * n_1 + c_1) * n_2 + ...), i.e. lexicographic order.
QuandleTable product(std::span<const QuandleTable> factors);

// Mixed-radix coordinates for product indices.
class ProductIndexer {
 public:
  explicit ProductIndexer(std::vector<std::size_t> orders);

  std::size_t size() const { return size_; }
  std::size_t arity() const { return orders_.size(); }
  std::size_t index(std::span<const Element> coords) const;
  std::vector<Element> coords(std::size_t index) const;
  Element coord(std::size_t index, std::size_t factor) const;

 private:
  std::vector<std::size_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_;
};

struct Subquandle {
  // Ambient elements in increasing order; elements[k] is the image of the
  // new element k under the inclusion.
  std::vector<Element> elements;
  QuandleTable table;
};

// Smallest subset containing seed that is closed under * and *^-1.
// Throws ErrorKind::InvalidArgument for an empty seed or an out-of-range
// element.
Subquandle generated_subquandle(const QuandleTable& t, std::span<const Element> seed);

// Closure only, as a membership mask over t's elements.
std::vector<bool> closure_mask(const QuandleTable& t, std::span<const Element> seed);

// R_q: x -> x * q.
Permutation right_translation(const QuandleTable& t, Element q);

bool is_permutation(std::span<const Element> p);
Permutation inverse_permutation(std::span<const Element> p);

}  // namespace quandle
