#ifndef PRODSPEC_ERROR_HPP
#define PRODSPEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace prodspec {

// Bad input: malformed model, violated precondition, cap exceeded.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced NaN or otherwise lost all meaning.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace prodspec

#endif  // PRODSPEC_ERROR_HPP
