#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quandle/census.hpp"
#include "quandle/congruence.hpp"
#include "quandle/group.hpp"
#include "quandle/map.hpp"
#include "quandle/table.hpp"

namespace quandle {

// Finite preorder given by its relation matrix. Antisymmetry is not
// required: equivalent nodes are allowed.
struct DirectedPreorder {
  std::size_t size = 0;
  std::vector<bool> relation;  // relation[i * size + j] <=> i <= j

  bool le(std::size_t i, std::size_t j) const { return relation[i * size + j]; }

  static DirectedPreorder chain(std::size_t m);
  // Reflexive-transitive closure of the given pairs (i <= j).
  static DirectedPreorder from_pairs(std::size_t m,
                                     std::span<const std::pair<std::size_t, std::size_t>> pairs);

  // First failure of reflexivity, transitivity or directedness, if any.
  std::optional<std::string> defect() const;
  // Nodes above every node.
  std::vector<std::size_t> tops() const;
};

using NodePair = std::pair<std::size_t, std::size_t>;

// Quandles indexed by a directed preorder with connecting maps
// phi_ij : Q_j -> Q_i for i <= j. Identity maps phi_ii may be omitted.
struct ProjectiveSystem {
  DirectedPreorder order;
  std::vector<QuandleTable> quandles;
  std::map<NodePair, std::vector<Element>> maps;

  std::size_t size() const { return order.size; }
  // phi_ij, or the identity for i == j when not stored. Throws
  // ErrorKind::InvalidSystem when a required map is missing.
  std::vector<Element> phi(std::size_t i, std::size_t j) const;
};

struct SystemReport {
  bool valid = true;
  std::vector<std::string> violations;
  std::optional<std::array<std::size_t, 3>> first_cocycle_violation;  // (i, j, k)
};

// Never throws on a bad system: everything lands in the report.
SystemReport validate_system(const ProjectiveSystem& s);

struct LimitResult {
  std::vector<std::vector<Element>> threads;  // sorted lexicographically
  std::optional<QuandleTable> table;          // absent iff there are no threads
  std::vector<QuandleMap> projections;        // per node, when table exists

  bool empty() const { return threads.empty(); }
  std::optional<std::size_t> find(std::span<const Element> thread) const;
};

// Threads propagate down from a top node (a finite directed preorder always
// has one). Throws ErrorKind::InvalidSystem for an invalid system.
LimitResult limit(const ProjectiveSystem& s);

// Filters the full Cartesian product of the node quandles. Exponential; used
// to cross-check limit() on small systems. Throws ErrorKind::StageTooLarge
// beyond max_product tuples.
LimitResult limit_by_product_filter(const ProjectiveSystem& s, std::size_t max_product = 1'000'000);

struct SurjectivityReport {
  bool hypothesis_met = true;              // every connecting map onto
  std::vector<NodePair> non_surjective_maps;
  bool limit_nonempty = false;
  std::vector<std::size_t> non_surjective_projections;

  bool conclusion_holds() const { return limit_nonempty && non_surjective_projections.empty(); }
};

SurjectivityReport check_surjective_projections(const ProjectiveSystem& s);

struct MediatingMap {
  QuandleMap theta;  // r -> limit table
  bool unique;
};

// fam[i] : r -> Q_i. Throws ErrorKind::IncompatibleFamily naming (i, j, x)
// when phi_ij(fam_j(x)) != fam_i(x).
MediatingMap mediating_map(const ProjectiveSystem& s, const LimitResult& lim,
                           const QuandleTable& r, std::span<const QuandleMap> fam);

struct CongruenceSystem {
  ProjectiveSystem system;
  std::vector<Congruence> congruences;  // node i
  std::vector<QuandleMap> projections;  // t -> t / congruence_i
};

// Nodes are all congruences under reverse inclusion, with the quotients and
// canonical projections.
CongruenceSystem congruence_system(const QuandleTable& t);

// Nodes p = 1..k (index p - 1), Q_p = T_p, and phi_{p,q}(x) = x for x <= p,
// p otherwise (1-based values).
ProjectiveSystem trivial_tower(std::size_t k);

struct GroupSystem {
  DirectedPreorder order;
  std::vector<GroupTable> groups;
  std::map<NodePair, std::vector<Element>> maps;  // group homs G_j -> G_i
};

struct QuandleFunctor {
  enum class Kind { Conj, Core } kind;
  std::int64_t exponent = 1;  // Conj only

  static QuandleFunctor conj(std::int64_t n) { return {Kind::Conj, n}; }
  static QuandleFunctor core() { return {Kind::Core, 0}; }
};

// Applies Conj_n or Core nodewise, keeping the underlying maps. Throws
// ErrorKind::InvalidSystem for a bad group system and ErrorKind::Internal if
// a group homomorphism fails to be a quandle homomorphism.
ProjectiveSystem group_tower_functor(const GroupSystem& groups, QuandleFunctor functor);

// Chain Z/p^k -> ... -> Z/p (node 0 = Z/p) with reductions.
GroupSystem cyclic_tower(std::size_t p, std::size_t k);

struct ImageSystem {
  ProjectiveSystem system;
  std::vector<std::vector<Element>> node_elements;  // ambient elements per node
  LimitResult limit;
  bool isomorphic;  // limit threads coincide with the chosen sub-threads
};

// sub lists thread indices of lim. Throws ErrorKind::NotClosed with a
// witness if they do not form a subquandle.
ImageSystem image_system(const ProjectiveSystem& s, const LimitResult& lim,
                         std::span<const std::size_t> sub);

struct ProductEmbedding {
  std::vector<NodePair> pairs;           // unordered pairs p < q, one factor each
  std::vector<Congruence> factors;       // minimal-index separating congruence
  std::vector<QuandleTable> factor_tables;
  std::vector<std::vector<Element>> coordinates;  // element -> tuple
  std::vector<NodePair> diagonal_only;   // pairs only the diagonal separates
  bool injective = false;
  std::optional<QuandleMap> as_map;      // into product(factor_tables), when small
};

// Separating-product embedding. For each pair the factor is the first
// minimal-index congruence splitting it; when that is the diagonal the
// factor is t itself and the pair is flagged.
ProductEmbedding embed_into_product(const QuandleTable& t, std::size_t max_materialized = 4096);

// Random projective system of canonical quotient maps: a census quandle Q
// (order <= max_order), up to max_nodes congruences on it plus their meet,
// ordered by reverse inclusion, nodes shuffled and relabeled. Every
// connecting map is onto.
ProjectiveSystem random_surjective_system(CensusSource& census, std::uint64_t seed,
                                          std::size_t max_nodes = 5, std::size_t max_order = 5);

// .qsys format:
//   nodes m
//   le i j                    (reflexive pairs implicit, closed transitively)
//   quandle i file <path>     (relative to base_dir)
//   quandle i inline <n>      followed by n table rows
//   map i j: <images of Q_j>  (phi_ij)
// Maps missing for i < j are derived by composition when possible.
ProjectiveSystem parse_system(std::string_view text, const std::filesystem::path& base_dir = {});
ProjectiveSystem read_system(const std::filesystem::path& path);
std::string format_system(const ProjectiveSystem& s);

}  // namespace quandle
