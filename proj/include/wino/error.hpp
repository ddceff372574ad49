#pragma once

#include <stdexcept>
#include <string>

namespace wino {

// Library error tagged with the module that raised it, so the CLI can report
// provenance in its machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace wino
