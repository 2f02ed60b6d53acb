#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liaison {

enum class Errc {
  validation_failed,
  email_taken,
  auth_failed,
  unauthorized,
  forbidden,
  not_found,
  unique_violation,
  invariant_violation,
  sender_not_verified,
  recipient_invalid,
  body_invalid,
  form_invalid,
  io_error,
  corrupt_store,
  migration_failed,
  parse_error,
  duplicate_code,
  internal,
};

std::string_view to_string(Errc code) noexcept;

// Every failure that crosses a module boundary is an Error. `fields` carries
// per-field reasons for validation-style failures (field -> reason code).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::map<std::string, std::string> fields = {})
      : std::runtime_error(std::move(message)), code_(code), fields_(std::move(fields)) {}

  Errc code() const noexcept { return code_; }
  const std::map<std::string, std::string>& fields() const noexcept { return fields_; }

 private:
  Errc code_;
  std::map<std::string, std::string> fields_;
};

}  // namespace liaison
