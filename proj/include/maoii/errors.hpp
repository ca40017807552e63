#pragma once

#include <stdexcept>
#include <string>

namespace maoii {

/// Parameter outside its admissible range; message names the field.
class OutOfRange : public std::invalid_argument {
public:
    explicit OutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested a stationary distribution that does not exist
/// (odd threshold in the oscillating regime).
class NoStationary : public std::domain_error {
public:
    explicit NoStationary(const std::string& what) : std::domain_error(what) {}
};

/// Oscillating-regime threshold optimality needs the volatility assumption.
class VolatilityRequired : public std::domain_error {
public:
    explicit VolatilityRequired(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method exceeded its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

class NoRoot : public std::domain_error {
public:
    explicit NoRoot(const std::string& what) : std::domain_error(what) {}
};

class InsufficientCheckpoints : public std::invalid_argument {
public:
    explicit InsufficientCheckpoints(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace maoii
