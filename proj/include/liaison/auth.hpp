#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liaison/crypto.hpp"
#include "liaison/model.hpp"
#include "liaison/store.hpp"

namespace liaison {

struct Credentials {
  std::string email;
  std::string password;
};

struct AuthOptions {
  PasswordCost cost = PasswordCost::interactive();
  std::chrono::seconds session_ttl = std::chrono::hours{24};
};

// Who is behind a live session. `role` is set for User sessions only.
struct Principal {
  SessionKind kind = SessionKind::User;
  std::int64_t id = 0;
  std::optional<Role> role;

  UserId user_id() const { return UserId{id}; }
  bool operator==(const Principal&) const = default;
};

class Auth {
 public:
  explicit Auth(Store& store, AuthOptions options = {});

  /// Throws validation_failed (with per-field reasons) or email_taken.
  UserAccount register_user(const RegistrationForm& form);

  // Both logins fail with the same auth_failed error whatever the cause.
  Session login(const Credentials& credentials);
  Session admin_login(const Credentials& credentials);

  /// Idempotent; unknown tokens are acknowledged too.
  void logout(std::string_view token);

  /// Throws unauthorized for a missing, unknown or expired token.
  Principal authenticate(std::string_view token);

  /// NotVerified accounts, oldest first. Admin sessions only.
  std::vector<UserAccount> list_pending(const Principal& caller);
  UserAccount verify_user(const Principal& caller, UserId user);

  // Operator paths used by the CLI; they skip session checks.
  AdminAccount create_admin(std::string_view email, std::string_view password);
  UserAccount verify_user_direct(UserId user);

  const AuthOptions& options() const noexcept { return options_; }

 private:
  Session issue(SessionKind kind, std::int64_t principal);

  Store* store_;
  AuthOptions options_;
  std::string dummy_digest_;
};

/// Throws forbidden unless the principal is of the given kind.
void require_kind(const Principal& p, SessionKind kind);

}  // namespace liaison
