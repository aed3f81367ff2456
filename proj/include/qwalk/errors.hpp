#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Malformed arguments: non-unit axes, empty coins, rings that are too small.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A closed-form expression left its mathematical domain (e.g. |cos w| > 1).
class NumericalDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quantity undefined because the quasi-energy gap is closed at this momentum.
class DegeneratePointError : public std::domain_error {
public:
    DegeneratePointError(const std::string& what, double k) : std::domain_error(what), k_(k) {}
    double k() const noexcept { return k_; }

private:
    double k_;
};

}  // namespace qwalk
