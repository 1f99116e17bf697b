#pragma once

#include <stdexcept>
#include <string>

namespace pt {

enum class ErrorKind {
  Contract,
  Domain,
  Capability,
  IllPosed,
  Reconstruction,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by the zero-mode guard of the spectral antiderivative.
class IllPosedOperator : public Error {
 public:
  IllPosedOperator(const std::string& what, double zero_mode);
  double zero_mode() const { return zero_mode_; }

 private:
  double zero_mode_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace pt
