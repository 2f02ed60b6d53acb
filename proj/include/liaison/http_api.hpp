#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "liaison/auth.hpp"
#include "liaison/error.hpp"
#include "liaison/exchange.hpp"
#include "liaison/store.hpp"

namespace httplib {
class Server;
}

namespace liaison {

inline constexpr std::string_view kSessionCookie = "liaison_session";

/// HTTP status for an error code.
int http_status(Errc code) noexcept;

/// Token from `Authorization: Bearer` (preferred) or the session cookie.
std::string extract_token(std::string_view authorization, std::string_view cookie_header);

struct ApiOptions {
  /// Mounted at "/" when it exists.
  std::filesystem::path static_dir;
};

// JSON-over-HTTP surface. Handlers are stateless; everything shared lives in
// the store behind `auth` and `exchange`.
class ApiServer {
 public:
  ApiServer(Store& store, Auth& auth, Exchange& exchange, ApiOptions options = {});
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port
  /// or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop(). Requires a successful bind().
  bool listen();
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

  httplib::Server& server() noexcept { return *server_; }

 private:
  void install_routes();

  Store* store_;
  Auth* auth_;
  Exchange* exchange_;
  ApiOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace liaison
