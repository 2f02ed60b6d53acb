#include <gtest/gtest.h>

#include <random>

#include "liaison/serialize.hpp"

using namespace liaison;

TEST(Rfc3339, FormatShape) {
  EXPECT_EQ(to_rfc3339(Timestamp{std::chrono::seconds{1'704'067'200}}), "2024-01-01T00:00:00Z");
  EXPECT_EQ(to_rfc3339(Timestamp{}), "1970-01-01T00:00:00Z");
}

TEST(Rfc3339, ParseRejectsOtherShapes) {
  EXPECT_EQ(parse_rfc3339("2024-01-01T00:00:00Z"), Timestamp{std::chrono::seconds{1'704'067'200}});
  EXPECT_FALSE(parse_rfc3339("2024-01-01 00:00:00Z"));
  EXPECT_FALSE(parse_rfc3339("2024-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_rfc3339("2024-01-01T24:00:00Z"));
  EXPECT_FALSE(parse_rfc3339("2024-01-01T00:00:00+01:00"));
}

TEST(Rfc3339, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Timestamp t{std::chrono::seconds{static_cast<std::int64_t>(rng() % 4'102'444'800ULL)}};
    EXPECT_EQ(parse_rfc3339(to_rfc3339(t)), t);
  }
}

TEST(Serialize, UserAccountOmitsSecretsAndUsesLongForms) {
  UserAccount u{UserId{1}, "Northfield", "cs@northfield.edu", "08031234567", "$argon2id$v=19$secret",
                Role::School, UserStatus::NotVerified, Timestamp{std::chrono::seconds{1'704'067'200}}};
  const json j = u;
  EXPECT_EQ(j, json::parse(R"({"id":1,"name":"Northfield","email":"cs@northfield.edu",
      "phone":"08031234567","role":"school","status":"not_verified",
      "created_at":"2024-01-01T00:00:00Z"})"));
  const auto text = j.dump();
  EXPECT_EQ(text.find("password"), std::string::npos);
  EXPECT_EQ(text.find("argon2"), std::string::npos);

  u.role = Role::Company;
  u.status = UserStatus::Verified;
  EXPECT_EQ(json(u)["role"], "company");
  EXPECT_EQ(json(u)["status"], "verified");
}

TEST(Serialize, AdminOmitsDigest) {
  const json j = AdminAccount{AdminId{3}, "root@x.org", "$argon2id$secret"};
  EXPECT_EQ(j, (json{{"id", 3}, {"email", "root@x.org"}}));
}

TEST(Serialize, MessageShape) {
  const Message m{MessageId{9}, UserId{1}, UserId{2}, "hi", ReadState::Read,
                  Timestamp{std::chrono::seconds{1'704'067'200}}};
  const json j = m;
  EXPECT_EQ(j["created_at"], "2024-01-01T00:00:00Z");
  EXPECT_EQ(j["read_state"], "read");
  EXPECT_EQ(j.get<Message>(), m);
}

TEST(Serialize, ErrorShape) {
  const json plain = Error(Errc::auth_failed, "invalid email or password");
  EXPECT_EQ(plain, (json{{"code", "auth_failed"}, {"message", "invalid email or password"}}));
  const json fields = Error(Errc::validation_failed, "bad", {{"email", "email_invalid"}});
  EXPECT_EQ(fields["fields"]["email"], "email_invalid");
}

TEST(Serialize, MalformedReportIsValidationError) {
  try {
    json::parse(R"({"id":1})").get<Report>();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::validation_failed);
  }
}

TEST(SerializeProperty, ReportRoundTrips) {
  std::mt19937 rng(23);
  auto text = [&](std::size_t max) {
    std::string s(1 + rng() % max, ' ');
    for (auto& c : s) c = static_cast<char>(' ' + rng() % 95);
    if (rng() % 4 == 0) s += "\xC3\xA9\n\"\\";
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    const Report r{ReportId{static_cast<std::int64_t>(1 + rng() % 100000)},
                   UserId{static_cast<std::int64_t>(1 + rng() % 1000)},
                   UserId{static_cast<std::int64_t>(1 + rng() % 1000)},
                   text(40),
                   text(20),
                   text(400),
                   Timestamp{std::chrono::seconds{static_cast<std::int64_t>(rng())}}};
    const auto wire = json(r).dump();
    EXPECT_EQ(json::parse(wire).get<Report>(), r);
  }
}

TEST(SerializeProperty, CourseRoundTrips) {
  for (auto level : {Level::L100, Level::L200, Level::L300, Level::L400}) {
    const Course c{"CSC 1", "T", 4, level, level == Level::L300};
    EXPECT_EQ(json(c).get<Course>(), c);
  }
}
