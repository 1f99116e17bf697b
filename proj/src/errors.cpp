#include "pauli_tomograph/errors.hpp"

namespace pt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::IllPosed: return "ill-posed";
    case ErrorKind::Reconstruction: return "reconstruction";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

IllPosedOperator::IllPosedOperator(const std::string& what, double zero_mode)
    : Error(ErrorKind::IllPosed, what), zero_mode_(zero_mode) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pt
