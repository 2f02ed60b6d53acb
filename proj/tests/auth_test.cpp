#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <thread>

#include "liaison/auth.hpp"
#include "liaison/error.hpp"
#include "support.hpp"

using namespace liaison;
using namespace liaison::testing;
using namespace std::chrono_literals;

namespace {

struct Caught {
  Errc code;
  std::string message;
  std::map<std::string, std::string> fields;
};

Caught catch_error(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return {e.code(), e.what(), e.fields()};
  }
  ADD_FAILURE() << "expected an Error";
  return {Errc::internal, "", {}};
}

class AuthTest : public ::testing::Test {
 protected:
  ManualClock clock;
  Store store{StoreConfig::in_memory(), clock.clock()};
  Auth auth{store, fast_auth()};
};

}  // namespace

TEST_F(AuthTest, RegisterCreatesUnverifiedAccountWithHashedPassword) {
  const auto a = auth.register_user(form_for("Northfield CS", "Dept@Northfield.edu", Role::School));
  EXPECT_EQ(a.role, Role::School);
  EXPECT_EQ(a.status, UserStatus::NotVerified);
  EXPECT_EQ(a.email, "dept@northfield.edu");
  EXPECT_EQ(a.phone, "08031234567");
  EXPECT_NE(a.password_digest, kPassword);
  EXPECT_EQ(a.password_digest.find(kPassword), std::string::npos);
  EXPECT_EQ(a.password_digest.rfind("$argon2id$", 0), 0u);
  EXPECT_EQ(store.users().find(a.id), a);
}

TEST_F(AuthTest, SaltsDifferPerAccount) {
  const auto a = auth.register_user(form_for("A", "a@x.com", Role::School));
  const auto b = auth.register_user(form_for("B", "b@x.com", Role::School));
  EXPECT_NE(a.password_digest, b.password_digest);
}

TEST_F(AuthTest, EmailTakenIsCaseInsensitive) {
  auth.register_user(form_for("A", "dept@school.edu", Role::School));
  EXPECT_EQ(catch_error([&] { auth.register_user(form_for("B", "DEPT@school.edu ", Role::Company)); }).code,
            Errc::email_taken);
}

TEST_F(AuthTest, RegisterReportsFieldErrors) {
  auto f = form_for("Kestrel", "hr@kestrel.com", Role::Company);
  f.password_confirm = "something-else";
  const auto e = catch_error([&] { auth.register_user(f); });
  EXPECT_EQ(e.code, Errc::validation_failed);
  EXPECT_EQ(e.fields, (std::map<std::string, std::string>{{"password_confirm", "password_mismatch"}}));
  EXPECT_EQ(store.users().count(), 0);
}

TEST_F(AuthTest, LoginIssuesDaySession) {
  const auto a = auth.register_user(form_for("A", "a@x.com", Role::Company));
  const auto s = auth.login({"A@X.com", kPassword});
  EXPECT_EQ(s.kind, SessionKind::User);
  EXPECT_EQ(s.principal, a.id.value);
  EXPECT_EQ(s.expires_at - s.issued_at, 24h);
  EXPECT_GE(s.token.size(), 22u);
}

TEST_F(AuthTest, LoginFailuresAreIndistinguishable) {
  auth.register_user(form_for("A", "a@x.com", Role::Company));
  const auto wrong = catch_error([&] { auth.login({"a@x.com", "wrong-password"}); });
  const auto unknown = catch_error([&] { auth.login({"nobody@x.com", kPassword}); });
  EXPECT_EQ(wrong.code, Errc::auth_failed);
  EXPECT_EQ(unknown.code, Errc::auth_failed);
  EXPECT_EQ(wrong.message, unknown.message);
  EXPECT_EQ(wrong.fields, unknown.fields);
}

TEST_F(AuthTest, UnverifiedUsersMayLogIn) {
  auth.register_user(form_for("A", "a@x.com", Role::Company));
  EXPECT_NO_THROW(auth.login({"a@x.com", kPassword}));
}

TEST_F(AuthTest, AdminLoginUsesSeparateTable) {
  const auto admin = auth.create_admin("root@liaison.org", "admin-password");
  const auto s = auth.admin_login({"root@liaison.org", "admin-password"});
  EXPECT_EQ(s.kind, SessionKind::Admin);
  EXPECT_EQ(s.principal, admin.id.value);

  auth.register_user(form_for("A", "a@x.com", Role::Company));
  EXPECT_EQ(catch_error([&] { auth.admin_login({"a@x.com", kPassword}); }).code, Errc::auth_failed);
  EXPECT_EQ(catch_error([&] { auth.admin_login({"root@liaison.org", ""}); }).code, Errc::auth_failed);
  EXPECT_EQ(catch_error([&] { auth.login({"root@liaison.org", "admin-password"}); }).code,
            Errc::auth_failed);
}

TEST_F(AuthTest, CreateAdminValidates) {
  auth.create_admin("root@liaison.org", "admin-password");
  EXPECT_EQ(catch_error([&] { auth.create_admin("ROOT@liaison.org", "admin-password"); }).code,
            Errc::email_taken);
  const auto bad = catch_error([&] { auth.create_admin("not-an-email", "admin-password"); });
  EXPECT_EQ(bad.code, Errc::validation_failed);
  EXPECT_EQ(bad.fields.at("email"), "email_invalid");
}

TEST_F(AuthTest, LogoutIsIdempotent) {
  auth.register_user(form_for("A", "a@x.com", Role::Company));
  const auto s = auth.login({"a@x.com", kPassword});
  EXPECT_NO_THROW(auth.authenticate(s.token));
  auth.logout(s.token);
  EXPECT_EQ(catch_error([&] { auth.authenticate(s.token); }).code, Errc::unauthorized);
  EXPECT_NO_THROW(auth.logout(s.token));
  EXPECT_NO_THROW(auth.logout("garbage"));
  EXPECT_NO_THROW(auth.logout(""));
}

TEST_F(AuthTest, AuthenticateDescribesPrincipalAndHonoursExpiry) {
  const auto a = auth.register_user(form_for("A", "a@x.com", Role::School));
  const auto s = auth.login({"a@x.com", kPassword});
  EXPECT_EQ(auth.authenticate(s.token), (Principal{SessionKind::User, a.id.value, Role::School}));

  clock.advance(24h - 1s);
  EXPECT_NO_THROW(auth.authenticate(s.token));
  clock.advance(1s);
  EXPECT_EQ(catch_error([&] { auth.authenticate(s.token); }).code, Errc::unauthorized);
  EXPECT_EQ(catch_error([&] { auth.authenticate(""); }).code, Errc::unauthorized);
}

TEST_F(AuthTest, ListPendingIsBruteForceFilterOldestFirst) {
  std::vector<UserAccount> all;
  for (int i = 0; i < 3; ++i) {
    clock.advance(5s);
    all.push_back(auth.register_user(
        form_for("U" + std::to_string(i), "u" + std::to_string(i) + "@x.com", i % 2 ? Role::School : Role::Company)));
  }
  auth.verify_user_direct(all[1].id);
  const auto admin = auth.create_admin("root@x.com", "admin-password");
  const Principal admin_p{SessionKind::Admin, admin.id.value, std::nullopt};

  std::vector<UserId> expected;
  for (const auto& u : all) {
    if (store.users().find(u.id)->status == UserStatus::NotVerified) expected.push_back(u.id);
  }
  std::vector<UserId> got;
  for (const auto& u : auth.list_pending(admin_p)) got.push_back(u.id);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(got.size(), 2u);

  EXPECT_EQ(catch_error([&] { auth.list_pending(as_user(all[0])); }).code, Errc::forbidden);
}

TEST_F(AuthTest, ListPendingOnEmptyStore) {
  const Principal admin_p{SessionKind::Admin, 1, std::nullopt};
  EXPECT_TRUE(auth.list_pending(admin_p).empty());
}

TEST_F(AuthTest, VerifyUser) {
  const auto a = auth.register_user(form_for("A", "a@x.com", Role::School));
  const Principal admin_p{SessionKind::Admin, 1, std::nullopt};
  const auto v1 = auth.verify_user(admin_p, a.id);
  EXPECT_EQ(v1.status, UserStatus::Verified);
  EXPECT_EQ(auth.verify_user(admin_p, a.id), v1);
  EXPECT_EQ(catch_error([&] { auth.verify_user(admin_p, UserId{999}); }).code, Errc::not_found);
  EXPECT_EQ(catch_error([&] { auth.verify_user(as_user(a), a.id); }).code, Errc::forbidden);
}

TEST_F(AuthTest, ConcurrentVerifySerializes) {
  const auto a = auth.register_user(form_for("A", "a@x.com", Role::School));
  std::atomic<int> changed{0}, failures{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 16; ++i) {
    threads.emplace_back([&] {
      try {
        if (store.users().update(a.id, {UserStatus::Verified}).changed) ++changed;
      } catch (...) {
        ++failures;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(changed.load(), 1);
  EXPECT_EQ(failures.load(), 0);
  EXPECT_EQ(store.users().find(a.id)->status, UserStatus::Verified);
}

TEST_F(AuthTest, LoginSucceedsIffRegisteredPassword) {
  std::mt19937 rng(5);
  for (int i = 0; i < 25; ++i) {
    std::string password(8 + rng() % 12, 'x');
    for (auto& c : password) c = static_cast<char>('!' + rng() % 94);
    const auto email = "prop" + std::to_string(i) + "@x.org";
    auth.register_user(form_for("P", email, i % 2 ? Role::School : Role::Company, password));
    EXPECT_NO_THROW(auth.login({email, password}));
    auto other = password;
    other[rng() % other.size()] ^= 1;
    EXPECT_EQ(catch_error([&] { auth.login({email, other}); }).code, Errc::auth_failed);
    EXPECT_EQ(catch_error([&] { auth.login({email, password + "x"}); }).code, Errc::auth_failed);
  }
}

TEST(Tokens, UniqueAndUrlSafe) {
  std::set<std::string> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto t = random_token();
    EXPECT_GE(t.size(), 22u);
    EXPECT_TRUE(std::all_of(t.begin(), t.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    }));
    seen.insert(t);
  }
  EXPECT_EQ(seen.size(), 2000u);
}
