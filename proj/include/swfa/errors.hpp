#pragma once

#include <stdexcept>
#include <string>

namespace swfa {

// Unknown symbol in a string fed to a model.
class symbol_error : public std::invalid_argument {
public:
    explicit symbol_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Series does not converge: rho(M_Sigma) >= 1 or a resolvent solve failed.
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed model or sample file.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace swfa
