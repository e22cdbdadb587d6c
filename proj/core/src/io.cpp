#include "quandle/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "quandle/errors.hpp"

namespace quandle::io {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) out.emplace_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
    start = end + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view token, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line);
  }
  return v;
}

RawTable parse_raw_qnd(std::string_view text, std::size_t first_line) {
  auto lines = split_lines(text);
  // Trailing blank lines are tolerated; nothing else is.
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty quandle file", first_line);

  auto header = split_ws(lines[0]);
  if (header.size() != 2 || header[0] != "quandle") {
    throw ParseError("expected 'quandle <n>'", first_line);
  }
  const auto n = parse_int(header[1], first_line);
  if (n <= 0) throw ParseError("quandle order must be positive", first_line);
  const auto order = static_cast<std::size_t>(n);
  if (lines.size() != order + 1) {
    throw ParseError("expected " + std::to_string(order) + " rows, found " +
                         std::to_string(lines.size() - 1),
                     // First surplus row, or the first missing one.
                     first_line + std::min(lines.size(), order + 1));
  }
  RawTable raw{order, {}};
  raw.cells.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    const std::size_t line_no = first_line + r + 1;
    auto tokens = split_ws(lines[r + 1]);
    if (tokens.size() != order) {
      throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(order),
                       line_no);
    }
    for (const auto& tok : tokens) {
      auto v = parse_int(tok, line_no);
      if (v < 0 || v >= n) {
        throw ParseError("entry " + tok + " outside [0, " + std::to_string(n) + ")", line_no);
      }
      raw.cells.push_back(v);
    }
  }
  return raw;
}

QuandleTable parse_qnd(std::string_view text, std::size_t first_line) {
  const auto raw = parse_raw_qnd(text, first_line);
  auto report = check_axioms(raw);
  if (!report.ok()) {
    const auto& w = *report.first_violation;
    const char* axiom = w.axiom == Axiom::Q1 ? "Q1" : w.axiom == Axiom::Q2 ? "Q2" : "Q3";
    // Point at the row holding the offending entry.
    const std::size_t row = w.axiom == Axiom::Q2 ? w.j : w.i;
    throw Error(ErrorKind::AxiomViolation,
                "line " + std::to_string(first_line + row + 1) + ": axiom " + axiom +
                    " fails at (" + std::to_string(w.i) + ", " + std::to_string(w.j) + ", " +
                    std::to_string(w.k) + ")");
  }
  return QuandleTable::from_raw(raw);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), std::nullopt);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QuandleTable read_qnd(const std::filesystem::path& path) { return parse_qnd(slurp(path)); }

std::string format_qnd(const QuandleTable& t) {
  std::string out = "quandle " + std::to_string(t.order()) + "\n";
  for (Element i = 0; i < t.order(); ++i) {
    auto row = t.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::InvalidArgument, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_qnd(const std::filesystem::path& path, const QuandleTable& t) {
  write_atomically(path, format_qnd(t));
}

namespace {

std::vector<std::string> strip_keyword(std::string_view text, std::string_view keyword) {
  auto tokens = split_ws(text);
  if (!tokens.empty() && tokens.front() == keyword) tokens.erase(tokens.begin());
  return tokens;
}

}  // namespace

std::vector<std::size_t> parse_classes(std::string_view text) {
  std::vector<std::size_t> labels;
  for (const auto& tok : strip_keyword(text, "classes")) {
    auto v = parse_int(tok, 1);
    if (v < 0) throw ParseError("class labels are non-negative", 1);
    labels.push_back(static_cast<std::size_t>(v));
  }
  if (labels.empty()) throw ParseError("empty class list", 1);
  return labels;
}

std::string format_classes(std::span<const std::size_t> labels) {
  std::string out = "classes";
  for (auto l : labels) out += ' ' + std::to_string(l);
  return out;
}

std::vector<Element> parse_map(std::string_view text) {
  std::vector<Element> images;
  for (const auto& tok : strip_keyword(text, "map")) {
    auto v = parse_int(tok, 1);
    if (v < 0) throw ParseError("map images are non-negative", 1);
    images.push_back(static_cast<Element>(v));
  }
  return images;
}

std::string format_map(std::span<const Element> images) {
  std::string out = "map";
  for (auto v : images) out += ' ' + std::to_string(v);
  return out;
}

}  // namespace quandle::io
