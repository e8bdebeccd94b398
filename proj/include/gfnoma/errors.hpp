#pragma once

#include <stdexcept>
#include <string>

namespace gfnoma {

// Scenario/config problems surfaced to the CLI as exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration budget exceeded; CLI exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Distance outside [0, D].
class OutOfCellError : public std::domain_error {
public:
    explicit OutOfCellError(const std::string& what) : std::domain_error(what) {}
};

} // namespace gfnoma
