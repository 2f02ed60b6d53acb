#pragma once

#include <string>
#include <string_view>

namespace liaison {

// Argon2id work factors. `interactive()` is the production default; tests use
// `minimal()` so thousands of hashes stay cheap.
struct PasswordCost {
  unsigned long long ops_limit;
  std::size_t mem_limit;

  static PasswordCost interactive() noexcept;
  static PasswordCost minimal() noexcept;
};

/// Salted Argon2id digest in the self-describing "$argon2id$..." encoding.
std::string hash_password(std::string_view password, PasswordCost cost);
/// Constant-time comparison against a digest from hash_password.
bool verify_password(std::string_view digest, std::string_view password) noexcept;

/// 256 random bits, base64url without padding (43 characters).
std::string random_token();

/// Hex BLAKE2b-256 of a session token; what the store keeps instead of the token.
std::string token_digest(std::string_view token);

}  // namespace liaison
