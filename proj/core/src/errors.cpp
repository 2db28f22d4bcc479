#include "tailkit/errors.hpp"

#include <sstream>

namespace tailkit {

namespace {

std::string certificate_message(std::uint64_t achieved, double required) {
  std::ostringstream os;
  os << "certificate hosts " << achieved << " edges, need at least " << required;
  return os.str();
}

}  // namespace

CertificateError::CertificateError(std::uint64_t achieved, double required)
    : Error(certificate_message(achieved, required)),
      achieved_(achieved),
      required_(required) {}

}  // namespace tailkit
