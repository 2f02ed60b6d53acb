#include "liaison/model.hpp"

#include <algorithm>
#include <cctype>

#include "liaison/error.hpp"

namespace liaison {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::validation_failed: return "validation_failed";
    case Errc::email_taken: return "email_taken";
    case Errc::auth_failed: return "auth_failed";
    case Errc::unauthorized: return "unauthorized";
    case Errc::forbidden: return "forbidden";
    case Errc::not_found: return "not_found";
    case Errc::unique_violation: return "unique_violation";
    case Errc::invariant_violation: return "invariant_violation";
    case Errc::sender_not_verified: return "sender_not_verified";
    case Errc::recipient_invalid: return "recipient_invalid";
    case Errc::body_invalid: return "body_invalid";
    case Errc::form_invalid: return "form_invalid";
    case Errc::io_error: return "io_error";
    case Errc::corrupt_store: return "corrupt_store";
    case Errc::migration_failed: return "migration_failed";
    case Errc::parse_error: return "parse_error";
    case Errc::duplicate_code: return "duplicate_code";
    case Errc::internal: return "internal";
  }
  return "internal";
}

std::optional<Role> role_from_code(std::string_view code) noexcept {
  if (code == "S") return Role::School;
  if (code == "C") return Role::Company;
  return std::nullopt;
}

std::string_view role_name(Role r) noexcept { return r == Role::School ? "school" : "company"; }

std::optional<Role> role_from_name(std::string_view name) noexcept {
  if (name == "school") return Role::School;
  if (name == "company") return Role::Company;
  return std::nullopt;
}

std::string_view status_name(UserStatus s) noexcept {
  return s == UserStatus::Verified ? "verified" : "not_verified";
}

std::optional<UserStatus> status_from_name(std::string_view name) noexcept {
  if (name == "verified") return UserStatus::Verified;
  if (name == "not_verified") return UserStatus::NotVerified;
  return std::nullopt;
}

std::optional<Level> level_from_int(long long value) noexcept {
  switch (value) {
    case 100: return Level::L100;
    case 200: return Level::L200;
    case 300: return Level::L300;
    case 400: return Level::L400;
    default: return std::nullopt;
  }
}

std::string_view to_string(EmailProblem p) noexcept {
  switch (p) {
    case EmailProblem::empty: return "empty";
    case EmailProblem::format: return "format";
    case EmailProblem::too_long: return "too_long";
  }
  return "format";
}

std::string_view to_string(FieldError e) noexcept {
  switch (e) {
    case FieldError::name_empty: return "name_empty";
    case FieldError::name_too_long: return "name_too_long";
    case FieldError::email_invalid: return "email_invalid";
    case FieldError::email_too_long: return "email_too_long";
    case FieldError::phone_invalid: return "phone_invalid";
    case FieldError::password_too_short: return "password_too_short";
    case FieldError::password_mismatch: return "password_mismatch";
    case FieldError::role_invalid: return "role_invalid";
  }
  return "invalid";
}

std::string_view field_of(FieldError e) noexcept {
  switch (e) {
    case FieldError::name_empty:
    case FieldError::name_too_long: return "name";
    case FieldError::email_invalid:
    case FieldError::email_too_long: return "email";
    case FieldError::phone_invalid: return "phone";
    case FieldError::password_too_short: return "password";
    case FieldError::password_mismatch: return "password_confirm";
    case FieldError::role_invalid: return "role";
  }
  return "form";
}

namespace {

constexpr bool is_continuation(unsigned char c) noexcept { return (c & 0xC0) == 0x80; }

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::size_t utf8_length(std::string_view text) noexcept {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return !is_continuation(static_cast<unsigned char>(c));
  }));
}

std::string_view utf8_prefix(std::string_view text, std::size_t max_chars) noexcept {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_continuation(static_cast<unsigned char>(text[i]))) continue;
    if (chars == max_chars) return text.substr(0, i);
    ++chars;
  }
  return text;
}

std::string trimmed(std::string_view text) { return std::string(trim(text)); }

std::string normalize_email(std::string_view raw) {
  std::string out{trim(raw)};
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<EmailProblem> validate_email(std::string_view email) noexcept {
  if (email.empty()) return EmailProblem::empty;
  if (email.size() > kMaxEmailLength) return EmailProblem::too_long;
  const auto at = email.find('@');
  if (at == std::string_view::npos || at == 0 || email.find('@', at + 1) != std::string_view::npos)
    return EmailProblem::format;
  if (std::any_of(email.begin(), email.end(), is_space)) return EmailProblem::format;
  const auto domain = email.substr(at + 1);
  if (domain.empty() || domain.find('.') == std::string_view::npos || domain.front() == '.' ||
      domain.back() == '.')
    return EmailProblem::format;
  return std::nullopt;
}

std::optional<std::string> normalize_phone(std::string_view raw) {
  std::string digits;
  for (char c : raw) {
    if (c == ' ' || c == '+' || c == '-') continue;
    if (c < '0' || c > '9') return std::nullopt;
    digits.push_back(c);
  }
  if (digits.size() < kMinPhoneDigits || digits.size() > kMaxPhoneDigits) return std::nullopt;
  return digits;
}

std::vector<FieldError> validate_registration(const RegistrationForm& form) {
  std::vector<FieldError> errors;

  const auto name = trim(form.name);
  if (name.empty())
    errors.push_back(FieldError::name_empty);
  else if (utf8_length(name) > kMaxNameLength)
    errors.push_back(FieldError::name_too_long);

  const auto email = normalize_email(form.email);
  if (auto problem = validate_email(email)) {
    errors.push_back(*problem == EmailProblem::too_long ? FieldError::email_too_long
                                                        : FieldError::email_invalid);
  }

  if (!normalize_phone(form.phone)) errors.push_back(FieldError::phone_invalid);

  if (utf8_length(form.password) < kMinPasswordLength)
    errors.push_back(FieldError::password_too_short);
  else if (form.password != form.password_confirm)
    errors.push_back(FieldError::password_mismatch);

  if (!role_from_code(form.role)) errors.push_back(FieldError::role_invalid);

  return errors;
}

bool valid_body(std::string_view body) noexcept {
  const auto n = utf8_length(body);
  return n >= 1 && n <= kMaxBodyLength;
}

bool satisfies_invariants(const UserAccount& account) noexcept {
  const auto name_len = utf8_length(account.name);
  if (name_len == 0 || name_len > kMaxNameLength) return false;
  if (validate_email(account.email) || normalize_email(account.email) != account.email) return false;
  const auto phone = normalize_phone(account.phone);
  if (!phone || *phone != account.phone) return false;
  if (account.password_digest.empty()) return false;
  return account.role == Role::School || account.role == Role::Company;
}

}  // namespace liaison
