#pragma once

#include <stdexcept>
#include <string>

namespace hoferlab {

// Error taxonomy shared by every module. Structural errors mean the input
// could not even be interpreted (bad file, unknown id, violated signature
// precondition); Numeric errors mean an iteration failed to converge.
// Mathematical violations (a complex with d^2 != 0, a refuted hypothesis)
// are never exceptions: they are report content.
class Error : public std::runtime_error {
 public:
  enum class Kind { Structural, Precondition, Numeric };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void throw_structural(const std::string& msg) {
  throw Error(Error::Kind::Structural, msg);
}

[[noreturn]] inline void throw_precondition(const std::string& msg) {
  throw Error(Error::Kind::Precondition, msg);
}

[[noreturn]] inline void throw_numeric(const std::string& msg) {
  throw Error(Error::Kind::Numeric, msg);
}

}  // namespace hoferlab
