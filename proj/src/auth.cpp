#include "liaison/auth.hpp"

#include <map>

#include "liaison/error.hpp"

namespace liaison {

namespace {

[[noreturn]] void auth_failed() { throw Error(Errc::auth_failed, "invalid email or password"); }

}  // namespace

void require_kind(const Principal& p, SessionKind kind) {
  if (p.kind != kind) throw Error(Errc::forbidden, "not permitted for this account");
}

Auth::Auth(Store& store, AuthOptions options)
    : store_(&store), options_(options), dummy_digest_(hash_password("not-a-real-password", options.cost)) {}

UserAccount Auth::register_user(const RegistrationForm& form) {
  const auto errors = validate_registration(form);
  if (!errors.empty()) {
    std::map<std::string, std::string> fields;
    for (auto e : errors) fields.emplace(field_of(e), to_string(e));
    throw Error(Errc::validation_failed, "registration form is invalid", std::move(fields));
  }

  UserAccount account;
  account.name = trimmed(form.name);
  account.email = normalize_email(form.email);
  account.phone = *normalize_phone(form.phone);
  account.role = *role_from_code(form.role);
  account.status = UserStatus::NotVerified;

  if (store_->users().find_by_email(account.email))
    throw Error(Errc::email_taken, "email is already registered");
  account.password_digest = hash_password(form.password, options_.cost);
  try {
    return store_->users().insert(std::move(account));
  } catch (const Error& e) {
    if (e.code() == Errc::unique_violation) throw Error(Errc::email_taken, "email is already registered");
    throw;
  }
}

Session Auth::issue(SessionKind kind, std::int64_t principal) {
  Session s;
  s.token = random_token();
  s.kind = kind;
  s.principal = principal;
  s.issued_at = store_->now();
  s.expires_at = s.issued_at + options_.session_ttl;
  return store_->sessions().insert(std::move(s));
}

Session Auth::login(const Credentials& credentials) {
  const auto account = store_->users().find_by_email(credentials.email);
  // Unknown emails still pay for one hash verification.
  const bool ok = verify_password(account ? account->password_digest : dummy_digest_,
                                  credentials.password);
  if (!account || !ok) auth_failed();
  return issue(SessionKind::User, account->id.value);
}

Session Auth::admin_login(const Credentials& credentials) {
  const auto admin = store_->admins().find_by_email(credentials.email);
  const bool ok =
      verify_password(admin ? admin->password_digest : dummy_digest_, credentials.password);
  if (!admin || !ok) auth_failed();
  return issue(SessionKind::Admin, admin->id.value);
}

void Auth::logout(std::string_view token) { store_->sessions().remove(token); }

Principal Auth::authenticate(std::string_view token) {
  const auto session = store_->sessions().find(token);
  if (!session) throw Error(Errc::unauthorized, "authentication required");
  if (store_->now() >= session->expires_at) {
    store_->sessions().remove(token);
    throw Error(Errc::unauthorized, "authentication required");
  }
  Principal p{session->kind, session->principal, std::nullopt};
  if (p.kind == SessionKind::User) {
    const auto account = store_->users().find(UserId{p.id});
    if (!account) throw Error(Errc::unauthorized, "authentication required");
    p.role = account->role;
  } else if (!store_->admins().find(AdminId{p.id})) {
    throw Error(Errc::unauthorized, "authentication required");
  }
  return p;
}

std::vector<UserAccount> Auth::list_pending(const Principal& caller) {
  require_kind(caller, SessionKind::Admin);
  return store_->users().query({.status = UserStatus::NotVerified, .order = Order::OldestFirst});
}

UserAccount Auth::verify_user(const Principal& caller, UserId user) {
  require_kind(caller, SessionKind::Admin);
  return verify_user_direct(user);
}

UserAccount Auth::verify_user_direct(UserId user) {
  return store_->users().update(user, UserChange{UserStatus::Verified}).value;
}

AdminAccount Auth::create_admin(std::string_view email, std::string_view password) {
  const auto normalized = normalize_email(email);
  std::map<std::string, std::string> fields;
  if (auto problem = validate_email(normalized))
    fields.emplace("email", *problem == EmailProblem::too_long ? "email_too_long" : "email_invalid");
  if (utf8_length(password) < kMinPasswordLength) fields.emplace("password", "password_too_short");
  if (!fields.empty()) throw Error(Errc::validation_failed, "admin details are invalid", std::move(fields));

  if (store_->admins().find_by_email(normalized))
    throw Error(Errc::email_taken, "admin email is already registered");
  try {
    return store_->admins().insert({AdminId{}, normalized, hash_password(password, options_.cost)});
  } catch (const Error& e) {
    if (e.code() == Errc::unique_violation) throw Error(Errc::email_taken, "admin email is already registered");
    throw;
  }
}

}  // namespace liaison
