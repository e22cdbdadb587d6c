#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quandle {

// Every failure raised by the library carries one of these kinds so that
// callers (the CLI in particular) can map them onto exit codes without
// string matching.
enum class ErrorKind {
  MalformedTable,
  AxiomViolation,
  EmptyQuandle,
  InvalidAutomorphism,
  InvalidArgument,
  MalformedPartition,
  NotACongruence,
  NotAHomomorphism,
  IllDefinedInducedMap,
  CensusCapExceeded,
  CensusFormat,
  Parse,
  StageTooLarge,
  InvalidSystem,
  IncompatibleFamily,
  NotClosed,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures remember where they happened: a 1-based line for the
// line-oriented file formats, a 0-based byte offset for term strings.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::optional<std::size_t> line,
             std::optional<std::size_t> offset = std::nullopt);

  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }
  // The message without the location prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> offset_;
};

}  // namespace quandle
