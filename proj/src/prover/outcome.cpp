#include "prover/outcome.hpp"

#include <stdexcept>

namespace gatp::prover {

std::string_view to_string(Status s) {
  switch (s) {
  case Status::Proved: return "Proved";
  case Status::Unproved: return "Unproved";
  case Status::Timeout: return "Timeout";
  case Status::Error: return "Error";
  }
  return "Error";
}

std::optional<Status> parse_status(std::string_view s) {
  if (s == "Proved") return Status::Proved;
  if (s == "Unproved") return Status::Unproved;
  if (s == "Timeout") return Status::Timeout;
  if (s == "Error") return Status::Error;
  return std::nullopt;
}

std::string_view to_string(ReliabilityClass r) {
  switch (r) {
  case ReliabilityClass::FormallyVerified: return "FormallyVerified";
  case ReliabilityClass::ExtensivelyTested: return "ExtensivelyTested";
  case ReliabilityClass::Unverified: return "Unverified";
  }
  return "Unverified";
}

std::optional<ReliabilityClass> parse_reliability(std::string_view s) {
  if (s == "FormallyVerified") return ReliabilityClass::FormallyVerified;
  if (s == "ExtensivelyTested") return ReliabilityClass::ExtensivelyTested;
  if (s == "Unverified") return ReliabilityClass::Unverified;
  return std::nullopt;
}

std::string_view to_string(GroebnerMode m) {
  return m == GroebnerMode::Strict ? "strict" : "generic";
}

ProverDescriptor ProverDescriptor::wu(std::string id, bool trace) {
  ProverDescriptor d;
  d.id = std::move(id);
  d.kind = ProverKind::BuiltinWu;
  d.emit_trace = trace;
  d.readability_level = trace ? 2 : 1;
  d.reliability = ReliabilityClass::ExtensivelyTested;
  return d;
}

ProverDescriptor ProverDescriptor::groebner(std::string id, GroebnerMode mode, bool trace) {
  ProverDescriptor d;
  d.id = std::move(id);
  d.kind = ProverKind::BuiltinGroebner;
  d.mode = mode;
  d.emit_trace = trace;
  d.readability_level = trace ? 2 : 1;
  d.reliability = ReliabilityClass::ExtensivelyTested;
  return d;
}

ProverDescriptor ProverDescriptor::external(std::string id, std::string command,
                                            int readability_level,
                                            ReliabilityClass reliability) {
  if (command.find("{input}") == std::string::npos)
    throw std::invalid_argument("external prover command must contain {input}");
  if (readability_level < 1 || readability_level > 5)
    throw std::invalid_argument("readability level must lie in 1..5");
  ProverDescriptor d;
  d.id = std::move(id);
  d.kind = ProverKind::External;
  d.command = std::move(command);
  d.readability_level = readability_level;
  d.reliability = reliability;
  d.readability_declared = true;
  return d;
}

} // namespace gatp::prover
