#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "common/deadline.hpp"
#include "prover/outcome.hpp"

namespace gatp::prover {

class SpawnFailure : public Error {
public:
  using Error::Error;
};

/// Largest amount of child stdout kept in the trace.
inline constexpr std::size_t kMaxCapturedOutput = 1u << 20;

/// Single-quotes a path for /bin/sh.
std::string shell_quote(const std::string& s);

/// Command line with every `{input}` replaced by the quoted path.
std::string expand_command(const std::string& command_template,
                           const std::filesystem::path& input);

/// Runs an external prover through /bin/sh in its own process group.
/// Exit 0 maps to Proved, 1 to Unproved, anything else to Error; at the
/// deadline the whole group is killed and the outcome is Timeout. CPU time
/// comes from the child's resource usage.
ProofOutcome external_prove(const ProverDescriptor& desc,
                            const std::filesystem::path& problem_file,
                            const Deadline& deadline);

} // namespace gatp::prover
