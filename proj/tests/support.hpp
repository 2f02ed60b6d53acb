#pragma once

// Shared helpers for the unit, integration and acceptance suites.

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <thread>

#include "liaison/auth.hpp"
#include "liaison/exchange.hpp"
#include "liaison/http_api.hpp"
#include "liaison/store.hpp"

namespace liaison::testing {

// Settable clock; copies share the same time.
class ManualClock {
 public:
  explicit ManualClock(Timestamp start = Timestamp{std::chrono::seconds{1'704'067'200}})  // 2024-01-01
      : now_(std::make_shared<std::atomic<std::int64_t>>(start.time_since_epoch().count())) {}

  Clock clock() const {
    return [now = now_] { return Timestamp{std::chrono::seconds{now->load()}}; };
  }
  void advance(std::chrono::seconds by) { now_->fetch_add(by.count()); }
  Timestamp now() const { return Timestamp{std::chrono::seconds{now_->load()}}; }

 private:
  std::shared_ptr<std::atomic<std::int64_t>> now_;
};

inline AuthOptions fast_auth() { return {PasswordCost::minimal(), std::chrono::hours{24}}; }

inline constexpr const char* kPassword = "correct-horse";

inline RegistrationForm form_for(std::string name, std::string email, Role role,
                                 std::string password = kPassword) {
  return {std::move(name), std::move(email), "0803 123 4567", password, password,
          std::string(1, role_code(role))};
}

inline UserAccount add_user(Auth& auth, std::string name, std::string email, Role role,
                            bool verified = true) {
  auto account = auth.register_user(form_for(std::move(name), std::move(email), role));
  if (verified) account = auth.verify_user_direct(account.id);
  return account;
}

inline Principal as_user(const UserAccount& u) { return {SessionKind::User, u.id.value, u.role}; }

// Store + services + HTTP server on an ephemeral port, torn down on scope exit.
class TestServer {
 public:
  explicit TestServer(StoreConfig config = StoreConfig::in_memory(), Clock clock = system_clock(),
                      AuthOptions auth_options = fast_auth())
      : store_(std::move(config), std::move(clock)),
        auth_(store_, auth_options),
        exchange_(store_),
        api_(store_, auth_, exchange_) {
    port_ = api_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { api_.listen(); });
    api_.wait_until_ready();
  }
  ~TestServer() {
    api_.stop();
    if (thread_.joinable()) thread_.join();
  }

  int port() const { return port_; }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    c.set_read_timeout(30);
    return c;
  }
  Store& store() { return store_; }
  Auth& auth() { return auth_; }
  Exchange& exchange() { return exchange_; }

 private:
  Store store_;
  Auth auth_;
  Exchange exchange_;
  ApiServer api_;
  int port_ = -1;
  std::thread thread_;
};

inline httplib::Headers bearer(const std::string& token) {
  return {{"Authorization", "Bearer " + token}};
}

}  // namespace liaison::testing
