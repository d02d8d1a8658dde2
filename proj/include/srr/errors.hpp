#pragma once

#include <stdexcept>
#include <string>

namespace srr {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid inputs, violated preconditions, mismatched dimensions.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A configurable search/enumeration budget was exhausted.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Input that is not even well-formed JSON.
struct JsonError : Error {
    explicit JsonError(const std::string& msg) : Error(msg) {}
};

}  // namespace srr
