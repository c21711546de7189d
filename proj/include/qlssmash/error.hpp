#pragma once

#include <stdexcept>
#include <string>

namespace qls {

/// Base exception for the library. `code()` is a short machine-readable tag
/// ("order_one", "group_mismatch", "division_by_zero", "size_limit",
/// "invalid_input", "unsupported", ...) that survives the C API boundary.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or schema-violating configuration. `path()` is a JSON pointer
/// into the offending document.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message, std::string code = "invalid_input")
      : Error(std::move(code), (path.empty() ? "/" : path) + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qls
