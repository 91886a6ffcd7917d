#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rrlab {

// Every failure carries a stable machine-readable code (e.g. "NOT_M_PRIMARY",
// "SEARCH_FAILED") next to the human-readable message.
class Failure : public std::runtime_error {
 public:
  Failure(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace rrlab
