#ifndef REGSPEC_ERRORS_HPP
#define REGSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace regspec {

// Parameter or precondition violations. The CLI maps these to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Configurable resource caps (rejection restarts, enumeration work, sample
// budgets). The CLI maps these to exit code 3.
class resource_cap_error : public std::runtime_error {
 public:
  explicit resource_cap_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regspec

#endif  // REGSPEC_ERRORS_HPP
