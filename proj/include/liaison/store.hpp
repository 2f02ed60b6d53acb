#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liaison/model.hpp"
#include "liaison/time.hpp"

namespace liaison {

struct StoreConfig {
  enum class Mode { InMemory, FileBacked };

  Mode mode = Mode::InMemory;
  std::filesystem::path path;

  static StoreConfig in_memory() { return {}; }
  static StoreConfig file(std::filesystem::path p) { return {Mode::FileBacked, std::move(p)}; }
  /// ":memory:" selects InMemory, anything else is a file path.
  static StoreConfig parse(std::string_view db);
};

struct SchemaVersion {
  int version = 0;
  Timestamp applied_at{};
};

enum class Order { NewestFirst, OldestFirst };

struct UserFilter {
  std::optional<Role> role;
  std::optional<UserStatus> status;
  Order order = Order::NewestFirst;
};

struct MessageFilter {
  std::optional<UserId> to_user;
  std::optional<UserId> from_user;
  std::optional<ReadState> read_state;
};

struct ReportFilter {
  std::optional<UserId> school_id;
  std::optional<UserId> company_id;
};

// Only whitelisted columns are mutable.
struct UserChange {
  UserStatus status = UserStatus::Verified;
};

struct MessageChange {
  ReadState read_state = ReadState::Read;
};

template <class T>
struct Updated {
  T value;
  bool changed = false;  // false when the row already held the requested state
};

namespace detail {
class Database;
}

class Store;

class UserRepository {
 public:
  explicit UserRepository(Store& store) : store_(&store) {}
  UserAccount insert(UserAccount account);
  std::optional<UserAccount> find(UserId id);
  std::optional<UserAccount> find_by_email(std::string_view email);
  std::vector<UserAccount> query(const UserFilter& filter = {});
  Updated<UserAccount> update(UserId id, UserChange change);
  std::int64_t count();

 private:
  Store* store_;
};

class AdminRepository {
 public:
  explicit AdminRepository(Store& store) : store_(&store) {}
  AdminAccount insert(AdminAccount admin);
  std::optional<AdminAccount> find(AdminId id);
  std::optional<AdminAccount> find_by_email(std::string_view email);
  std::vector<AdminAccount> query();
  std::int64_t count();

 private:
  Store* store_;
};

class MessageRepository {
 public:
  explicit MessageRepository(Store& store) : store_(&store) {}
  Message insert(Message message);
  std::optional<Message> find(MessageId id);
  std::vector<Message> query(const MessageFilter& filter = {});
  Updated<Message> update(MessageId id, MessageChange change);
  std::int64_t count(const MessageFilter& filter = {});

 private:
  Store* store_;
};

class ReportRepository {
 public:
  explicit ReportRepository(Store& store) : store_(&store) {}
  Report insert(Report report);
  std::optional<Report> find(ReportId id);
  std::vector<Report> query(const ReportFilter& filter = {});
  std::int64_t count();

 private:
  Store* store_;
};

// Tokens are stored as a keyed digest, never in clear.
class SessionRepository {
 public:
  explicit SessionRepository(Store& store) : store_(&store) {}
  Session insert(Session session);
  std::optional<Session> find(std::string_view token);
  /// Returns whether a row was removed.
  bool remove(std::string_view token);
  std::int64_t count();

 private:
  Store* store_;
};

class CourseRepository {
 public:
  explicit CourseRepository(Store& store) : store_(&store) {}
  /// Replaces the whole catalogue atomically.
  void replace_all(const std::vector<Course>& courses);
  std::optional<Course> find(std::string_view code);
  /// Sorted by code.
  std::vector<Course> query(std::optional<Level> level = std::nullopt);

 private:
  Store* store_;
};

// Handle over the embedded relational store. Every repository operation runs
// under one connection mutex, so each call is atomic and isolated.
class Store {
 public:
  static constexpr int kLatestVersion = 1;

  explicit Store(StoreConfig config, Clock clock = system_clock());
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  SchemaVersion migrate();
  SchemaVersion version();
  /// Entity tables present in the schema (excludes bookkeeping tables).
  std::vector<std::string> tables();

  Timestamp now() const { return clock_(); }
  const StoreConfig& config() const noexcept { return config_; }

  UserRepository users() { return UserRepository{*this}; }
  AdminRepository admins() { return AdminRepository{*this}; }
  MessageRepository messages() { return MessageRepository{*this}; }
  ReportRepository reports() { return ReportRepository{*this}; }
  SessionRepository sessions() { return SessionRepository{*this}; }
  CourseRepository courses() { return CourseRepository{*this}; }

  /// Removes every entity row and resets id sequences. Only the demo seeder
  /// uses this; no network surface reaches it.
  void wipe();

 private:
  friend class UserRepository;
  friend class AdminRepository;
  friend class MessageRepository;
  friend class ReportRepository;
  friend class SessionRepository;
  friend class CourseRepository;

  StoreConfig config_;
  Clock clock_;
  std::unique_ptr<detail::Database> db_;
  std::mutex mutex_;
};

}  // namespace liaison
