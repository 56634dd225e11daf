#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace comdyn::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one subcommand; args excludes the program name. Every output line is
/// a JSON object written to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out);

struct ExampleRow {
  std::string id;
  std::string claim;
  std::string status;  // "pass" | "fail" | "discrepancy"
  nlohmann::json observed;
  nlohmann::json expected;
  std::string note;
};

/// Scripted reproduction of the worked examples.
std::vector<ExampleRow> paper_examples();

}  // namespace comdyn::cli
