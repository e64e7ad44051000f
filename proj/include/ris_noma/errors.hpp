#pragma once

#include <stdexcept>
#include <string>

namespace ris_noma {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Invalid configuration value or combination of values.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A series or closed form whose convergence condition does not hold.
class DivergenceError : public std::domain_error {
public:
    explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ris_noma
