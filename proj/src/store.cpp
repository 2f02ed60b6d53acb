#include "liaison/store.hpp"

#include <array>

#include "liaison/crypto.hpp"
#include "liaison/error.hpp"
#include "sqlite.hpp"

namespace liaison {

using detail::Database;
using detail::Statement;
using detail::Transaction;

namespace {

struct Migration {
  int version;
  std::string_view sql;
};

constexpr std::string_view kBookkeeping = R"sql(
CREATE TABLE IF NOT EXISTS schema_version (
  version    INTEGER PRIMARY KEY,
  applied_at INTEGER NOT NULL
);
)sql";

constexpr std::array kMigrations = {
    Migration{1, R"sql(
CREATE TABLE admin (
  id              INTEGER PRIMARY KEY AUTOINCREMENT,
  email           TEXT NOT NULL UNIQUE CHECK (length(email) BETWEEN 1 AND 1024),
  password_digest TEXT NOT NULL
);

CREATE TABLE users (
  id              INTEGER PRIMARY KEY AUTOINCREMENT,
  name            TEXT NOT NULL,
  email           TEXT NOT NULL UNIQUE COLLATE NOCASE CHECK (length(email) BETWEEN 1 AND 1024),
  phone           TEXT NOT NULL,
  password_digest TEXT NOT NULL,
  type            TEXT NOT NULL CHECK (type IN ('S', 'C')),
  status          TEXT NOT NULL DEFAULT 'Not Verified' CHECK (status IN ('Verified', 'Not Verified')),
  created_at      INTEGER NOT NULL DEFAULT (strftime('%s', 'now'))
);

CREATE TRIGGER users_status_monotone BEFORE UPDATE OF status ON users
WHEN OLD.status = 'Verified' AND NEW.status <> 'Verified'
BEGIN
  SELECT RAISE(ABORT, 'verification cannot be revoked');
END;

CREATE TABLE messages (
  id         INTEGER PRIMARY KEY AUTOINCREMENT,
  from_user  INTEGER NOT NULL REFERENCES users (id),
  to_user    INTEGER NOT NULL REFERENCES users (id),
  body       TEXT NOT NULL,
  read_state INTEGER NOT NULL DEFAULT 0 CHECK (read_state IN (0, 1)),
  created_at INTEGER NOT NULL DEFAULT (strftime('%s', 'now')),
  CHECK (from_user <> to_user)
);

CREATE INDEX messages_by_recipient ON messages (to_user, created_at DESC, id DESC);

CREATE TRIGGER messages_read_state_monotone BEFORE UPDATE OF read_state ON messages
WHEN OLD.read_state = 1 AND NEW.read_state <> 1
BEGIN
  SELECT RAISE(ABORT, 'read state cannot go back to unread');
END;

CREATE TABLE reports (
  id           INTEGER PRIMARY KEY AUTOINCREMENT,
  company_id   INTEGER NOT NULL REFERENCES users (id),
  school_id    INTEGER NOT NULL REFERENCES users (id),
  student_name TEXT NOT NULL,
  period       TEXT NOT NULL,
  body         TEXT NOT NULL,
  created_at   INTEGER NOT NULL DEFAULT (strftime('%s', 'now'))
);

CREATE INDEX reports_by_school ON reports (school_id, created_at DESC, id DESC);

CREATE TRIGGER reports_immutable BEFORE UPDATE ON reports
BEGIN
  SELECT RAISE(ABORT, 'reports are immutable');
END;

CREATE TABLE sessions (
  token_digest TEXT PRIMARY KEY,
  kind         TEXT NOT NULL CHECK (kind IN ('U', 'A')),
  principal    INTEGER NOT NULL,
  issued_at    INTEGER NOT NULL,
  expires_at   INTEGER NOT NULL
);

CREATE TABLE courses (
  code     TEXT PRIMARY KEY,
  title    TEXT NOT NULL,
  units    INTEGER NOT NULL CHECK (units BETWEEN 1 AND 6),
  level    INTEGER NOT NULL CHECK (level IN (100, 200, 300, 400)),
  elective INTEGER NOT NULL DEFAULT 0 CHECK (elective IN (0, 1))
);
)sql"},
};

static_assert(kMigrations.back().version == Store::kLatestVersion);

constexpr std::array<std::string_view, 6> kEntityTables = {"admin",   "users",    "messages",
                                                           "reports", "sessions", "courses"};

std::int64_t to_epoch(Timestamp t) { return t.time_since_epoch().count(); }
Timestamp from_epoch(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

std::string_view status_db(UserStatus s) { return s == UserStatus::Verified ? "Verified" : "Not Verified"; }

constexpr std::string_view kUserColumns =
    "id, name, email, phone, password_digest, type, status, created_at";

UserAccount read_user(const Statement& st) {
  UserAccount u;
  u.id = UserId{st.int64(0)};
  u.name = st.text(1);
  u.email = st.text(2);
  u.phone = st.text(3);
  u.password_digest = st.text(4);
  u.role = role_from_code(st.text(5)).value_or(Role::School);
  u.status = st.text(6) == "Verified" ? UserStatus::Verified : UserStatus::NotVerified;
  u.created_at = from_epoch(st.int64(7));
  return u;
}

constexpr std::string_view kMessageColumns = "id, from_user, to_user, body, read_state, created_at";

Message read_message(const Statement& st) {
  Message m;
  m.id = MessageId{st.int64(0)};
  m.from_user = UserId{st.int64(1)};
  m.to_user = UserId{st.int64(2)};
  m.body = st.text(3);
  m.read_state = st.int64(4) == 1 ? ReadState::Read : ReadState::Unread;
  m.created_at = from_epoch(st.int64(5));
  return m;
}

constexpr std::string_view kReportColumns =
    "id, company_id, school_id, student_name, period, body, created_at";

Report read_report(const Statement& st) {
  Report r;
  r.id = ReportId{st.int64(0)};
  r.company_id = UserId{st.int64(1)};
  r.school_id = UserId{st.int64(2)};
  r.student_name = st.text(3);
  r.period = st.text(4);
  r.body = st.text(5);
  r.created_at = from_epoch(st.int64(6));
  return r;
}

Course read_course(const Statement& st) {
  return Course{st.text(0), st.text(1), static_cast<int>(st.int64(2)),
                level_from_int(st.int64(3)).value_or(Level::L100), st.int64(4) != 0};
}

std::optional<UserAccount> find_user(Database& db, UserId id) {
  Statement st(db, std::string("SELECT ") + std::string(kUserColumns) + " FROM users WHERE id = ?");
  st.bind(1, id.value);
  if (!st.step()) return std::nullopt;
  return read_user(st);
}

std::optional<Message> find_message(Database& db, MessageId id) {
  Statement st(db, "SELECT " + std::string(kMessageColumns) + " FROM messages WHERE id = ?");
  st.bind(1, id.value);
  if (!st.step()) return std::nullopt;
  return read_message(st);
}

bool valid_course(const Course& c) {
  return !c.code.empty() && !c.title.empty() && utf8_length(c.title) <= kMaxNameLength &&
         c.units >= 1 && c.units <= 6;
}

}  // namespace

StoreConfig StoreConfig::parse(std::string_view db) {
  if (db.empty() || db == ":memory:") return in_memory();
  return file(std::filesystem::path(std::string(db)));
}

Store::Store(StoreConfig config, Clock clock) : config_(std::move(config)), clock_(std::move(clock)) {
  std::string path = ":memory:";
  if (config_.mode == StoreConfig::Mode::FileBacked) {
    if (config_.path.empty()) throw Error(Errc::io_error, "file-backed store needs a path");
    const auto parent = config_.path.has_parent_path() ? config_.path.parent_path()
                                                       : std::filesystem::path(".");
    std::error_code ec;
    if (!std::filesystem::is_directory(parent, ec))
      throw Error(Errc::io_error, "directory does not exist: " + parent.string());
    if (std::filesystem::is_directory(config_.path, ec))
      throw Error(Errc::io_error, "path is a directory: " + config_.path.string());
    path = config_.path.string();
  }
  db_ = std::make_unique<Database>(path);
  try {
    // First real read; a non-database file fails here.
    db_->exec("PRAGMA foreign_keys = ON");
    {
      Statement probe(*db_, "SELECT count(*) FROM sqlite_master");
      probe.step();
    }
    if (config_.mode == StoreConfig::Mode::FileBacked) db_->exec("PRAGMA journal_mode = WAL");
  } catch (const Error& e) {
    if (e.code() == Errc::corrupt_store) throw;
    if (e.code() == Errc::io_error) throw;
    throw Error(Errc::corrupt_store, std::string("unreadable store: ") + e.what());
  }
  migrate();
}

Store::~Store() = default;

SchemaVersion Store::migrate() {
  std::lock_guard lock(mutex_);
  db_->exec(kBookkeeping);
  for (const auto& m : kMigrations) {
    Statement check(*db_, "SELECT 1 FROM schema_version WHERE version = ?");
    check.bind(1, m.version);
    if (check.step()) continue;
    try {
      Transaction tx(*db_);
      db_->exec(m.sql);
      Statement mark(*db_, "INSERT INTO schema_version (version, applied_at) VALUES (?, ?)");
      mark.bind(1, m.version).bind(2, to_epoch(now()));
      mark.run();
      tx.commit();
    } catch (const Error& e) {
      throw Error(Errc::migration_failed,
                  "migration step " + std::to_string(m.version) + " failed: " + e.what());
    }
  }
  Statement st(*db_, "SELECT version, applied_at FROM schema_version ORDER BY version DESC LIMIT 1");
  if (!st.step()) return {};
  return {static_cast<int>(st.int64(0)), from_epoch(st.int64(1))};
}

SchemaVersion Store::version() {
  std::lock_guard lock(mutex_);
  Statement st(*db_, "SELECT version, applied_at FROM schema_version ORDER BY version DESC LIMIT 1");
  if (!st.step()) return {};
  return {static_cast<int>(st.int64(0)), from_epoch(st.int64(1))};
}

std::vector<std::string> Store::tables() {
  std::lock_guard lock(mutex_);
  Statement st(*db_,
               "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite_%' "
               "AND name <> 'schema_version' ORDER BY name");
  std::vector<std::string> out;
  while (st.step()) out.push_back(st.text(0));
  return out;
}

void Store::wipe() {
  std::lock_guard lock(mutex_);
  Transaction tx(*db_);
  for (auto table : {"sessions", "reports", "messages", "users", "admin", "courses"})
    db_->exec(std::string("DELETE FROM ") + table);
  db_->exec("DELETE FROM sqlite_sequence");
  tx.commit();
}

// ---- users

UserAccount UserRepository::insert(UserAccount account) {
  account.email = normalize_email(account.email);
  if (!satisfies_invariants(account))
    throw Error(Errc::invariant_violation, "user account violates field invariants");
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  account.created_at = store_->now();
  Statement st(db,
               "INSERT INTO users (name, email, phone, password_digest, type, status, created_at) "
               "VALUES (?, ?, ?, ?, ?, ?, ?)");
  st.bind(1, account.name)
      .bind(2, account.email)
      .bind(3, account.phone)
      .bind(4, account.password_digest)
      .bind(5, std::string(1, role_code(account.role)))
      .bind(6, status_db(account.status))
      .bind(7, to_epoch(account.created_at));
  st.run();
  account.id = UserId{db.last_insert_id()};
  return account;
}

std::optional<UserAccount> UserRepository::find(UserId id) {
  std::lock_guard lock(store_->mutex_);
  return find_user(*store_->db_, id);
}

std::optional<UserAccount> UserRepository::find_by_email(std::string_view email) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT " + std::string(kUserColumns) + " FROM users WHERE email = ?");
  st.bind(1, normalize_email(email));
  if (!st.step()) return std::nullopt;
  return read_user(st);
}

std::vector<UserAccount> UserRepository::query(const UserFilter& filter) {
  std::string sql = "SELECT " + std::string(kUserColumns) + " FROM users WHERE 1 = 1";
  if (filter.role) sql += " AND type = ?1";
  if (filter.status) sql += " AND status = ?2";
  sql += filter.order == Order::NewestFirst ? " ORDER BY created_at DESC, id DESC"
                                            : " ORDER BY created_at ASC, id ASC";
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, sql);
  if (filter.role) st.bind(1, std::string(1, role_code(*filter.role)));
  if (filter.status) st.bind(2, status_db(*filter.status));
  std::vector<UserAccount> out;
  while (st.step()) out.push_back(read_user(st));
  return out;
}

Updated<UserAccount> UserRepository::update(UserId id, UserChange change) {
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  auto current = find_user(db, id);
  if (!current) throw Error(Errc::not_found, "no such user");
  if (current->status == UserStatus::Verified && change.status == UserStatus::NotVerified)
    throw Error(Errc::invariant_violation, "verification cannot be revoked");
  Statement st(db, "UPDATE users SET status = ? WHERE id = ? AND status <> ?");
  st.bind(1, status_db(change.status)).bind(2, id.value).bind(3, status_db(change.status));
  st.run();
  const bool changed = db.changes() > 0;
  return {*find_user(db, id), changed};
}

std::int64_t UserRepository::count() {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT count(*) FROM users");
  st.step();
  return st.int64(0);
}

// ---- admins

AdminAccount AdminRepository::insert(AdminAccount admin) {
  admin.email = normalize_email(admin.email);
  if (validate_email(admin.email) || admin.password_digest.empty())
    throw Error(Errc::invariant_violation, "admin account violates field invariants");
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  Statement st(db, "INSERT INTO admin (email, password_digest) VALUES (?, ?)");
  st.bind(1, admin.email).bind(2, admin.password_digest);
  st.run();
  admin.id = AdminId{db.last_insert_id()};
  return admin;
}

std::optional<AdminAccount> AdminRepository::find(AdminId id) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT id, email, password_digest FROM admin WHERE id = ?");
  st.bind(1, id.value);
  if (!st.step()) return std::nullopt;
  return AdminAccount{AdminId{st.int64(0)}, st.text(1), st.text(2)};
}

std::optional<AdminAccount> AdminRepository::find_by_email(std::string_view email) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT id, email, password_digest FROM admin WHERE email = ?");
  st.bind(1, normalize_email(email));
  if (!st.step()) return std::nullopt;
  return AdminAccount{AdminId{st.int64(0)}, st.text(1), st.text(2)};
}

std::vector<AdminAccount> AdminRepository::query() {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT id, email, password_digest FROM admin ORDER BY id");
  std::vector<AdminAccount> out;
  while (st.step()) out.push_back({AdminId{st.int64(0)}, st.text(1), st.text(2)});
  return out;
}

std::int64_t AdminRepository::count() {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT count(*) FROM admin");
  st.step();
  return st.int64(0);
}

// ---- messages

Message MessageRepository::insert(Message message) {
  if (!valid_body(message.body)) throw Error(Errc::invariant_violation, "message body out of range");
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  Transaction tx(db);
  const auto from = find_user(db, message.from_user);
  const auto to = find_user(db, message.to_user);
  if (!from || !to) throw Error(Errc::invariant_violation, "message endpoints must exist");
  if (from->id == to->id) throw Error(Errc::invariant_violation, "message to self");
  if (from->role == to->role)
    throw Error(Errc::invariant_violation, "messages flow only between a school and a company");
  message.read_state = ReadState::Unread;
  message.created_at = store_->now();
  Statement st(db,
               "INSERT INTO messages (from_user, to_user, body, read_state, created_at) "
               "VALUES (?, ?, ?, 0, ?)");
  st.bind(1, message.from_user.value)
      .bind(2, message.to_user.value)
      .bind(3, message.body)
      .bind(4, to_epoch(message.created_at));
  st.run();
  message.id = MessageId{db.last_insert_id()};
  tx.commit();
  return message;
}

std::optional<Message> MessageRepository::find(MessageId id) {
  std::lock_guard lock(store_->mutex_);
  return find_message(*store_->db_, id);
}

namespace {

std::string message_where(const MessageFilter& f) {
  std::string sql = " WHERE 1 = 1";
  if (f.to_user) sql += " AND to_user = ?1";
  if (f.from_user) sql += " AND from_user = ?2";
  if (f.read_state) sql += " AND read_state = ?3";
  return sql;
}

void bind_message_filter(Statement& st, const MessageFilter& f) {
  if (f.to_user) st.bind(1, f.to_user->value);
  if (f.from_user) st.bind(2, f.from_user->value);
  if (f.read_state) st.bind(3, static_cast<std::int64_t>(*f.read_state));
}

}  // namespace

std::vector<Message> MessageRepository::query(const MessageFilter& filter) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT " + std::string(kMessageColumns) + " FROM messages" +
                                 message_where(filter) + " ORDER BY created_at DESC, id DESC");
  bind_message_filter(st, filter);
  std::vector<Message> out;
  while (st.step()) out.push_back(read_message(st));
  return out;
}

Updated<Message> MessageRepository::update(MessageId id, MessageChange change) {
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  auto current = find_message(db, id);
  if (!current) throw Error(Errc::not_found, "no such message");
  if (current->read_state == ReadState::Read && change.read_state == ReadState::Unread)
    throw Error(Errc::invariant_violation, "read state cannot go back to unread");
  Statement st(db, "UPDATE messages SET read_state = ?1 WHERE id = ?2 AND read_state <> ?1");
  st.bind(1, static_cast<std::int64_t>(change.read_state)).bind(2, id.value);
  st.run();
  const bool changed = db.changes() > 0;
  return {*find_message(db, id), changed};
}

std::int64_t MessageRepository::count(const MessageFilter& filter) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT count(*) FROM messages" + message_where(filter));
  bind_message_filter(st, filter);
  st.step();
  return st.int64(0);
}

// ---- reports

Report ReportRepository::insert(Report report) {
  const auto name_len = utf8_length(report.student_name);
  if (name_len == 0 || name_len > kMaxNameLength || report.period.empty() ||
      utf8_length(report.period) > kMaxPeriodLength || !valid_body(report.body))
    throw Error(Errc::invariant_violation, "report fields out of range");
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  Transaction tx(db);
  const auto company = find_user(db, report.company_id);
  const auto school = find_user(db, report.school_id);
  if (!company || company->role != Role::Company || !school || school->role != Role::School)
    throw Error(Errc::invariant_violation, "reports go from a company to a school");
  report.created_at = store_->now();
  Statement st(db,
               "INSERT INTO reports (company_id, school_id, student_name, period, body, created_at) "
               "VALUES (?, ?, ?, ?, ?, ?)");
  st.bind(1, report.company_id.value)
      .bind(2, report.school_id.value)
      .bind(3, report.student_name)
      .bind(4, report.period)
      .bind(5, report.body)
      .bind(6, to_epoch(report.created_at));
  st.run();
  report.id = ReportId{db.last_insert_id()};
  tx.commit();
  return report;
}

std::optional<Report> ReportRepository::find(ReportId id) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT " + std::string(kReportColumns) + " FROM reports WHERE id = ?");
  st.bind(1, id.value);
  if (!st.step()) return std::nullopt;
  return read_report(st);
}

std::vector<Report> ReportRepository::query(const ReportFilter& filter) {
  std::string sql = "SELECT " + std::string(kReportColumns) + " FROM reports WHERE 1 = 1";
  if (filter.school_id) sql += " AND school_id = ?1";
  if (filter.company_id) sql += " AND company_id = ?2";
  sql += " ORDER BY created_at DESC, id DESC";
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, sql);
  if (filter.school_id) st.bind(1, filter.school_id->value);
  if (filter.company_id) st.bind(2, filter.company_id->value);
  std::vector<Report> out;
  while (st.step()) out.push_back(read_report(st));
  return out;
}

std::int64_t ReportRepository::count() {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT count(*) FROM reports");
  st.step();
  return st.int64(0);
}

// ---- sessions

Session SessionRepository::insert(Session session) {
  if (session.token.empty()) throw Error(Errc::invariant_violation, "empty session token");
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_,
               "INSERT INTO sessions (token_digest, kind, principal, issued_at, expires_at) "
               "VALUES (?, ?, ?, ?, ?)");
  st.bind(1, token_digest(session.token))
      .bind(2, session.kind == SessionKind::Admin ? "A" : "U")
      .bind(3, session.principal)
      .bind(4, to_epoch(session.issued_at))
      .bind(5, to_epoch(session.expires_at));
  st.run();
  return session;
}

std::optional<Session> SessionRepository::find(std::string_view token) {
  if (token.empty()) return std::nullopt;
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_,
               "SELECT kind, principal, issued_at, expires_at FROM sessions WHERE token_digest = ?");
  st.bind(1, token_digest(token));
  if (!st.step()) return std::nullopt;
  return Session{std::string(token), st.int64(1),
                 st.text(0) == "A" ? SessionKind::Admin : SessionKind::User,
                 from_epoch(st.int64(2)), from_epoch(st.int64(3))};
}

bool SessionRepository::remove(std::string_view token) {
  if (token.empty()) return false;
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "DELETE FROM sessions WHERE token_digest = ?");
  st.bind(1, token_digest(token));
  st.run();
  return store_->db_->changes() > 0;
}

std::int64_t SessionRepository::count() {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT count(*) FROM sessions");
  st.step();
  return st.int64(0);
}

// ---- courses

void CourseRepository::replace_all(const std::vector<Course>& courses) {
  for (const auto& c : courses) {
    if (!valid_course(c)) throw Error(Errc::invariant_violation, "invalid course row: " + c.code);
  }
  std::lock_guard lock(store_->mutex_);
  auto& db = *store_->db_;
  Transaction tx(db);
  db.exec("DELETE FROM courses");
  for (const auto& c : courses) {
    Statement st(db, "INSERT INTO courses (code, title, units, level, elective) VALUES (?, ?, ?, ?, ?)");
    st.bind(1, c.code)
        .bind(2, c.title)
        .bind(3, c.units)
        .bind(4, static_cast<std::int64_t>(c.level))
        .bind(5, c.elective ? 1 : 0);
    st.run();
  }
  tx.commit();
}

std::optional<Course> CourseRepository::find(std::string_view code) {
  std::lock_guard lock(store_->mutex_);
  Statement st(*store_->db_, "SELECT code, title, units, level, elective FROM courses WHERE code = ?");
  st.bind(1, code);
  if (!st.step()) return std::nullopt;
  return read_course(st);
}

std::vector<Course> CourseRepository::query(std::optional<Level> level) {
  std::lock_guard lock(store_->mutex_);
  std::string sql = "SELECT code, title, units, level, elective FROM courses";
  if (level) sql += " WHERE level = ?";
  sql += " ORDER BY code";
  Statement st(*store_->db_, sql);
  if (level) st.bind(1, static_cast<std::int64_t>(*level));
  std::vector<Course> out;
  while (st.step()) out.push_back(read_course(st));
  return out;
}

}  // namespace liaison
