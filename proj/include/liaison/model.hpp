#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liaison/time.hpp"

namespace liaison {

// Surrogate keys are distinct types so a MessageId cannot be passed where a
// UserId is expected.
template <class Tag>
struct Id {
  std::int64_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::int64_t v) : value(v) {}
  constexpr auto operator<=>(const Id&) const = default;
};

using UserId = Id<struct UserTag>;
using AdminId = Id<struct AdminTag>;
using MessageId = Id<struct MessageTag>;
using ReportId = Id<struct ReportTag>;

inline constexpr std::size_t kMaxNameLength = 200;
inline constexpr std::size_t kMaxEmailLength = 1024;
inline constexpr std::size_t kMinPhoneDigits = 7;
inline constexpr std::size_t kMaxPhoneDigits = 15;
inline constexpr std::size_t kMinPasswordLength = 8;
inline constexpr std::size_t kMaxBodyLength = 65535;
inline constexpr std::size_t kMaxPeriodLength = 100;

enum class Role : char { School = 'S', Company = 'C' };
enum class UserStatus { NotVerified, Verified };
enum class ReadState : int { Unread = 0, Read = 1 };
enum class SessionKind { User, Admin };

constexpr Role opposite(Role r) noexcept { return r == Role::School ? Role::Company : Role::School; }
constexpr char role_code(Role r) noexcept { return static_cast<char>(r); }
std::optional<Role> role_from_code(std::string_view code) noexcept;
/// "school" / "company"
std::string_view role_name(Role r) noexcept;
std::optional<Role> role_from_name(std::string_view name) noexcept;

/// "verified" / "not_verified"
std::string_view status_name(UserStatus s) noexcept;
std::optional<UserStatus> status_from_name(std::string_view name) noexcept;

struct UserAccount {
  UserId id;
  std::string name;
  std::string email;
  std::string phone;
  std::string password_digest;
  Role role = Role::School;
  UserStatus status = UserStatus::NotVerified;
  Timestamp created_at{};

  bool operator==(const UserAccount&) const = default;
};

struct AdminAccount {
  AdminId id;
  std::string email;
  std::string password_digest;

  bool operator==(const AdminAccount&) const = default;
};

struct Message {
  MessageId id;
  UserId from_user;
  UserId to_user;
  std::string body;
  ReadState read_state = ReadState::Unread;
  Timestamp created_at{};

  bool operator==(const Message&) const = default;
};

struct Report {
  ReportId id;
  UserId company_id;
  UserId school_id;
  std::string student_name;
  std::string period;
  std::string body;
  Timestamp created_at{};

  bool operator==(const Report&) const = default;
};

// Either a user or an admin is behind a session; `principal` is the id in the
// table selected by `kind`.
struct Session {
  std::string token;
  std::int64_t principal = 0;
  SessionKind kind = SessionKind::User;
  Timestamp issued_at{};
  Timestamp expires_at{};

  bool operator==(const Session&) const = default;
};

enum class Level : int { L100 = 100, L200 = 200, L300 = 300, L400 = 400 };
std::optional<Level> level_from_int(long long value) noexcept;

struct Course {
  std::string code;
  std::string title;
  int units = 0;
  Level level = Level::L100;
  bool elective = false;

  bool operator==(const Course&) const = default;
};

struct RegistrationForm {
  std::string name;
  std::string email;
  std::string phone;
  std::string password;
  std::string password_confirm;
  std::string role;
};

enum class EmailProblem { empty, format, too_long };

enum class FieldError {
  name_empty,
  name_too_long,
  email_invalid,
  email_too_long,
  phone_invalid,
  password_too_short,
  password_mismatch,
  role_invalid,
};

std::string_view to_string(EmailProblem p) noexcept;
std::string_view to_string(FieldError e) noexcept;
/// Form field the error belongs to ("name", "email", "phone", "password",
/// "password_confirm", "role").
std::string_view field_of(FieldError e) noexcept;

/// Number of UTF-8 code points; invalid lead bytes count as one each.
std::size_t utf8_length(std::string_view text) noexcept;
/// Longest prefix of `text` holding at most `max_chars` code points.
std::string_view utf8_prefix(std::string_view text, std::size_t max_chars) noexcept;

/// Copy without leading/trailing ASCII whitespace.
std::string trimmed(std::string_view text);

std::string normalize_email(std::string_view raw);
std::optional<EmailProblem> validate_email(std::string_view email) noexcept;

/// Strips spaces, '+' and '-'; returns nullopt unless 7-15 digits remain.
std::optional<std::string> normalize_phone(std::string_view raw);

std::vector<FieldError> validate_registration(const RegistrationForm& form);

/// True when `body` holds 1..kMaxBodyLength characters.
bool valid_body(std::string_view body) noexcept;

/// Checks the field-level invariants of a stored account (everything except
/// cross-row uniqueness).
bool satisfies_invariants(const UserAccount& account) noexcept;

}  // namespace liaison
