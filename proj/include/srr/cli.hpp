#pragma once

#include <string>
#include <vector>

namespace srr::cli {

// Exit codes: 0 ok, 1 validation error, 2 negative yes/no result,
// 64 unknown subcommand, 65 malformed json.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kNegative = 2;
inline constexpr int kUnknownCommand = 64;
inline constexpr int kMalformedJson = 65;

int run(const std::vector<std::string>& args);

}  // namespace srr::cli
