#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liaison/auth.hpp"
#include "liaison/store.hpp"

namespace liaison {

struct ListenAddr {
  std::string host;
  int port = 0;
};

/// "host:port" with port 1-65535; nullopt otherwise.
std::optional<ListenAddr> parse_listen_addr(std::string_view text);

struct DemoAccount {
  std::string label;
  std::string email;
  std::string password;
};

struct SeedSummary {
  std::vector<DemoAccount> accounts;  // admin first, then users in insert order
  int messages = 0;
  int read_messages = 0;
  int reports = 0;
};

/// Populates the demo dataset. Throws invariant_violation when the store
/// already holds accounts and `force` is false; with `force` the store is
/// wiped first.
SeedSummary seed_demo(Store& store, Auth& auth, bool force);

/// Entry point behind the `liaison` binary. Data goes to `out`, diagnostics
/// to `err`; returns 0 on success and 1 on any failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liaison
