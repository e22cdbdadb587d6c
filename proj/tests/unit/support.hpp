#pragma once

#include <doctest.h>

#include <filesystem>
#include <string>

#include "oracles.hpp"
#include "quandle/group.hpp"
#include "quandle/table.hpp"

namespace support {

inline oracle::Cells cells(const quandle::QuandleTable& t) {
  return oracle::Cells(t.cells().begin(), t.cells().end());
}

inline quandle::QuandleTable r3() { return quandle::dihedral(3); }
inline quandle::QuandleTable r4() { return quandle::core(quandle::GroupTable::cyclic(4)); }
inline quandle::QuandleTable t(std::size_t n) { return quandle::trivial(n); }

// Directory of checked-in fixture files.
inline std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(QUANDLE_TEST_DATA) / name;
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("quandle-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace support
