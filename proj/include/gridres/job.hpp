#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gridres {

enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_invalid = 2, exit_budget = 3 };

struct JobOptions {
  std::optional<std::uint64_t> budget;  // node limit for the searches
};

/// Report on success; on failure `report` is empty and `error` holds the message.
struct JobOutcome {
  std::optional<nlohmann::json> report;
  int exit_code = exit_ok;
  std::string error;
  std::string summary;  // one or two human-readable lines
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand on an input document. Never throws.
JobOutcome run_job(const std::string& subcommand, const nlohmann::json& input, const JobOptions& options = {});

}  // namespace gridres
