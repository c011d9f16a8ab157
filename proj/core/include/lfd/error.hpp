#pragma once

#include <stdexcept>
#include <string>

namespace lfd {

// Every failure raised by the library carries the pipeline stage that
// produced it, so the CLI can print "stage: message" and exit nonzero.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace lfd
