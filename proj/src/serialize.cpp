#include "liaison/serialize.hpp"

namespace liaison {

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::validation_failed, std::string("missing field: ") + key, {{key, "missing"}});
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::validation_failed, std::string("wrong type for field: ") + key, {{key, "type"}});
  }
}

Timestamp timestamp_field(const json& j, const char* key) {
  const auto text = field<std::string>(j, key);
  const auto t = parse_rfc3339(text);
  if (!t) throw Error(Errc::validation_failed, std::string("bad timestamp: ") + key, {{key, "format"}});
  return *t;
}

}  // namespace

std::string_view read_state_name(ReadState s) noexcept {
  return s == ReadState::Read ? "read" : "unread";
}

void to_json(json& j, const UserAccount& u) {
  j = json{{"id", u.id.value},
           {"name", u.name},
           {"email", u.email},
           {"phone", u.phone},
           {"role", role_name(u.role)},
           {"status", status_name(u.status)},
           {"created_at", to_rfc3339(u.created_at)}};
}

void to_json(json& j, const AdminAccount& a) { j = json{{"id", a.id.value}, {"email", a.email}}; }

void to_json(json& j, const Message& m) {
  j = json{{"id", m.id.value},
           {"from_user", m.from_user.value},
           {"to_user", m.to_user.value},
           {"body", m.body},
           {"read_state", read_state_name(m.read_state)},
           {"created_at", to_rfc3339(m.created_at)}};
}

void to_json(json& j, const Report& r) {
  j = json{{"id", r.id.value},
           {"company_id", r.company_id.value},
           {"school_id", r.school_id.value},
           {"student_name", r.student_name},
           {"period", r.period},
           {"body", r.body},
           {"created_at", to_rfc3339(r.created_at)}};
}

void to_json(json& j, const Course& c) {
  j = json{{"code", c.code},
           {"title", c.title},
           {"units", c.units},
           {"level", static_cast<int>(c.level)},
           {"elective", c.elective}};
}

void to_json(json& j, const Recipient& r) {
  j = json{{"id", r.id.value}, {"name", r.name}, {"role", role_name(r.role)}};
}

void to_json(json& j, const InboxEntry& e) {
  j = json{{"message_id", e.message_id.value},
           {"from_user", e.from_user.value},
           {"from_name", e.from_name},
           {"excerpt", e.excerpt},
           {"read_state", read_state_name(e.read_state)},
           {"created_at", to_rfc3339(e.created_at)}};
}

void to_json(json& j, const Principal& p) {
  j = json{{"kind", p.kind == SessionKind::Admin ? "admin" : "user"}, {"id", p.id}};
  if (p.role) j["role"] = role_name(*p.role);
}

void to_json(json& j, const Error& e) {
  j = json{{"code", to_string(e.code())}, {"message", e.what()}};
  if (!e.fields().empty()) j["fields"] = e.fields();
}

void from_json(const json& j, Message& m) {
  m.id = MessageId{field<std::int64_t>(j, "id")};
  m.from_user = UserId{field<std::int64_t>(j, "from_user")};
  m.to_user = UserId{field<std::int64_t>(j, "to_user")};
  m.body = field<std::string>(j, "body");
  const auto state = field<std::string>(j, "read_state");
  if (state != "read" && state != "unread")
    throw Error(Errc::validation_failed, "bad read_state", {{"read_state", "invalid"}});
  m.read_state = state == "read" ? ReadState::Read : ReadState::Unread;
  m.created_at = timestamp_field(j, "created_at");
}

void from_json(const json& j, Report& r) {
  r.id = ReportId{field<std::int64_t>(j, "id")};
  r.company_id = UserId{field<std::int64_t>(j, "company_id")};
  r.school_id = UserId{field<std::int64_t>(j, "school_id")};
  r.student_name = field<std::string>(j, "student_name");
  r.period = field<std::string>(j, "period");
  r.body = field<std::string>(j, "body");
  r.created_at = timestamp_field(j, "created_at");
}

void from_json(const json& j, Course& c) {
  c.code = field<std::string>(j, "code");
  c.title = field<std::string>(j, "title");
  c.units = field<int>(j, "units");
  const auto level = level_from_int(field<int>(j, "level"));
  if (!level) throw Error(Errc::validation_failed, "bad level", {{"level", "invalid"}});
  c.level = *level;
  c.elective = field<bool>(j, "elective");
}

json session_json(const Session& s) {
  return json{{"token", s.token},
              {"kind", s.kind == SessionKind::Admin ? "admin" : "user"},
              {"principal", s.principal},
              {"issued_at", to_rfc3339(s.issued_at)},
              {"expires_at", to_rfc3339(s.expires_at)}};
}

}  // namespace liaison
