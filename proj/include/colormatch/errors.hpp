#ifndef COLORMATCH_ERRORS_HPP
#define COLORMATCH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace colormatch {

// Bad arguments: out-of-range vertex or color, wrong set sizes, etc.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The random model is undefined for the requested parameters (p outside (0,1]).
class ModelDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A matching or cycle disagrees with the graph it is applied to.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact algorithm was asked to run beyond its configured size cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace colormatch

#endif  // COLORMATCH_ERRORS_HPP
