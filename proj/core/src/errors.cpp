#include "quandle/errors.hpp"

namespace quandle {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "malformed-table";
    case ErrorKind::AxiomViolation: return "axiom-violation";
    case ErrorKind::EmptyQuandle: return "empty-quandle";
    case ErrorKind::InvalidAutomorphism: return "invalid-automorphism";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::MalformedPartition: return "malformed-partition";
    case ErrorKind::NotACongruence: return "not-a-congruence";
    case ErrorKind::NotAHomomorphism: return "not-a-homomorphism";
    case ErrorKind::IllDefinedInducedMap: return "ill-defined-induced-map";
    case ErrorKind::CensusCapExceeded: return "census-cap-exceeded";
    case ErrorKind::CensusFormat: return "census-format";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::StageTooLarge: return "stage-too-large";
    case ErrorKind::InvalidSystem: return "invalid-system";
    case ErrorKind::IncompatibleFamily: return "incompatible-family";
    case ErrorKind::NotClosed: return "not-closed";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

namespace {

std::string locate(const std::string& what, std::optional<std::size_t> line,
                   std::optional<std::size_t> offset) {
  std::string out;
  if (line) out += "line " + std::to_string(*line) + ": ";
  if (offset) out += "offset " + std::to_string(*offset) + ": ";
  return out + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::optional<std::size_t> line,
                       std::optional<std::size_t> offset)
    : Error(ErrorKind::Parse, locate(what, line, offset)),
      detail_(what),
      line_(line),
      offset_(offset) {}

}  // namespace quandle
