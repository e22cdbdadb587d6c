#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "quandle/table.hpp"

namespace quandle::io {

// .qnd format:
//   quandle <n>
//   <n space-separated integers>   (row i: i*0 ... i*(n-1))
//   ... n rows
// Errors carry 1-based line numbers relative to first_line.
QuandleTable parse_qnd(std::string_view text, std::size_t first_line = 1);
// Structural parse only: shape and entry ranges, no axiom check.
RawTable parse_raw_qnd(std::string_view text, std::size_t first_line = 1);
QuandleTable read_qnd(const std::filesystem::path& path);
std::string format_qnd(const QuandleTable& t);
void write_qnd(const std::filesystem::path& path, const QuandleTable& t);

// "classes c_0 ... c_{n-1}"; the leading keyword is optional.
std::vector<std::size_t> parse_classes(std::string_view text);
std::string format_classes(std::span<const std::size_t> labels);

// "map i_0 ... i_{k-1}"; the leading keyword is optional.
std::vector<Element> parse_map(std::string_view text);
std::string format_map(std::span<const Element> images);

// Reads a whole file, throwing ParseError (without line) if it cannot be
// opened.
std::string slurp(const std::filesystem::path& path);

// Writes via a temporary sibling file and rename.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

// Whitespace tokenizer shared by the line-oriented formats.
std::vector<std::string> split_ws(std::string_view line);
std::vector<std::string> split_lines(std::string_view text);
std::int64_t parse_int(std::string_view token, std::size_t line);

}  // namespace quandle::io
