#pragma once

// Thin RAII layer over the SQLite C API. Private to the store implementation.

#include <sqlite3.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "liaison/error.hpp"

namespace liaison::detail {

class Database;

class Statement {
 public:
  Statement(Database& db, std::string_view sql);
  ~Statement();
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int index, std::int64_t value);
  Statement& bind(int index, std::string_view value);
  Statement& bind_null(int index);

  /// Returns true while a row is available.
  bool step();
  /// Steps to completion, for statements that return no rows.
  void run();

  std::int64_t int64(int column) const;
  std::string text(int column) const;
  bool is_null(int column) const;

 private:
  Database* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

class Database {
 public:
  explicit Database(const std::string& path);
  ~Database();
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;

  void exec(std::string_view sql);
  std::int64_t last_insert_id() const;
  int changes() const;
  sqlite3* handle() const noexcept { return db_; }

  [[noreturn]] void fail(int rc, std::string_view context) const;

 private:
  sqlite3* db_ = nullptr;
};

// Commits on commit(); rolls back if destroyed first.
class Transaction {
 public:
  explicit Transaction(Database& db) : db_(&db) { db_->exec("BEGIN IMMEDIATE"); }
  ~Transaction() {
    if (db_) {
      try {
        db_->exec("ROLLBACK");
      } catch (...) {
      }
    }
  }
  Transaction(const Transaction&) = delete;
  Transaction& operator=(const Transaction&) = delete;

  void commit() {
    db_->exec("COMMIT");
    db_ = nullptr;
  }

 private:
  Database* db_;
};

}  // namespace liaison::detail
