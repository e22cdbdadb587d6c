#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quandle/table.hpp"

namespace quandle {

// Finite group by multiplication table. Input side of the Conj, Core and
// Alexander constructions.
class GroupTable {
 public:
  // Validates closure, associativity, a two-sided identity and inverses;
  // throws ErrorKind::InvalidArgument otherwise.
  static GroupTable from_cells(std::size_t n, std::vector<Element> mul);

  static GroupTable cyclic(std::size_t n);
  // Symmetric group on k letters; elements are the permutations of
  // {0..k-1} in lexicographic order, (p*q)(x) = p(q(x)).
  static GroupTable symmetric(std::size_t k);

  std::size_t order() const { return n_; }
  Element mul(Element a, Element b) const { return mul_[a * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element identity() const { return id_; }
  Element power(Element a, std::int64_t e) const;

  std::span<const Element> cells() const { return mul_; }

  friend bool operator==(const GroupTable&, const GroupTable&) = default;

 private:
  GroupTable() = default;

  std::size_t n_ = 0;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  Element id_ = 0;
};

bool is_group_homomorphism(const GroupTable& src, const GroupTable& dst,
                           std::span<const Element> images);
bool is_group_automorphism(const GroupTable& g, std::span<const Element> psi);

// Reduction Z/m -> Z/n, x -> x mod n; requires n | m.
std::vector<Element> cyclic_reduction(std::size_t m, std::size_t n);

}  // namespace quandle
