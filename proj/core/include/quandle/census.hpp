#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quandle/table.hpp"

namespace quandle {

// Orders up to this bound are enumerated with isomorph rejection by default.
inline constexpr std::size_t kCensusCap = 6;

struct CanonicalForm {
  QuandleTable table;     // lexicographically least row-major relabeling
  Permutation relabel;    // relabel[old] = new label
};

// Branch and bound over partial relabelings, pruning on the first row and
// by automorphisms met at equal leaves. Exponential in the worst case; meant
// for census-sized tables.
CanonicalForm canonical_form(const QuandleTable& t);

bool is_canonical(const QuandleTable& t);

// An isomorphism a -> b (images[x] = image of x), if one exists.
std::optional<Permutation> find_isomorphism(const QuandleTable& a, const QuandleTable& b);

// Every labeled quandle of order n exactly once, in search order. Columns are
// right translations fixing their own index; each new column is closed
// under sigma_{sigma_k(j)} = sigma_k sigma_j sigma_k^-1 (right
// self-distributivity) before the next free choice. Throws
// ErrorKind::CensusCapExceeded for n > kCensusCap; use stream_tables for
// larger orders.
std::vector<QuandleTable> enumerate_tables(std::size_t n, unsigned jobs = 1);

// Uncapped, single-threaded; the callback sees each labeled table once.
// Throws ErrorKind::EmptyQuandle for n = 0.
void stream_tables(std::size_t n, const std::function<void(const QuandleTable&)>& visit);

struct CensusFile {
  std::size_t order = 0;
  bool labeled = false;  // true: every labeled table, not one per class
  std::vector<QuandleTable> tables;

  std::size_t count() const { return tables.size(); }
};

// Canonical representatives, sorted and duplicate-free.
CensusFile census(std::size_t n, unsigned jobs = 1);
CensusFile labeled_census(std::size_t n, unsigned jobs = 1);

// Census file format: "census <n> <count>" (plus " labeled" for labeled
// files), then one .qnd block per entry separated by blank lines.
std::string format_census(const CensusFile& c);
// Verifies axioms, canonicity, strict ordering and the count header.
CensusFile parse_census(std::string_view text);
void store(const CensusFile& c, const std::filesystem::path& path);
CensusFile load(const std::filesystem::path& path);

// Lazily computed, cached censuses. When a directory is configured, files
// named census_<n>.txt are read from it and missing ones are written back.
class CensusSource {
 public:
  explicit CensusSource(std::optional<std::filesystem::path> dir = std::nullopt,
                        unsigned jobs = 1);
  // Uses $QUANDLE_CENSUS_DIR when set.
  static CensusSource from_environment(unsigned jobs = 1);

  // Throws ErrorKind::CensusCapExceeded above kCensusCap.
  const CensusFile& get(std::size_t n);

 private:
  std::optional<std::filesystem::path> dir_;
  unsigned jobs_;
  std::mutex mutex_;
  std::map<std::size_t, CensusFile> cache_;
};

}  // namespace quandle
