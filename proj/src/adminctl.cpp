#include "liaison/adminctl.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <csignal>
#include <ostream>

#include "liaison/curriculum.hpp"
#include "liaison/error.hpp"
#include "liaison/exchange.hpp"
#include "liaison/http_api.hpp"

namespace liaison {

std::optional<ListenAddr> parse_listen_addr(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  const auto port_text = text.substr(colon + 1);
  int port = 0;
  const auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (port_text.empty() || ec != std::errc{} || end != port_text.data() + port_text.size()) return std::nullopt;
  if (port < 1 || port > 65535) return std::nullopt;
  return ListenAddr{std::string(text.substr(0, colon)), port};
}

namespace {

constexpr std::string_view kDemoPassword = "demo-pass-123";

struct DemoUser {
  const char* name;
  const char* email;
  const char* phone;
  const char* role;
  bool verified;
};

constexpr DemoUser kDemoUsers[] = {
    {"Northfield University Computer Science", "cs@northfield.edu.ng", "08031234567", "S", true},
    {"Lakeside University Computing", "computing@lakeside.edu.ng", "08039876543", "S", true},
    {"Kestrel Systems Ltd", "hr@kestrel.example.com", "07011112222", "C", true},
    {"Baobab Cloud Services", "talent@baobab.example.com", "07033334444", "C", true},
    {"Pending Ventures", "info@pending.example.com", "09055556666", "C", false},
};

}  // namespace

SeedSummary seed_demo(Store& store, Auth& auth, bool force) {
  if (store.users().count() > 0 || store.admins().count() > 0) {
    if (!force) throw Error(Errc::invariant_violation, "store is not empty; pass --force to reseed");
    store.wipe();
  }

  SeedSummary summary;
  auth.create_admin("admin@liaison.example.com", kDemoPassword);
  summary.accounts.push_back({"admin", "admin@liaison.example.com", std::string(kDemoPassword)});

  std::vector<UserAccount> users;
  for (const auto& u : kDemoUsers) {
    auto account = auth.register_user({u.name, u.email, u.phone, std::string(kDemoPassword),
                                       std::string(kDemoPassword), u.role});
    if (u.verified) account = auth.verify_user_direct(account.id);
    users.push_back(account);
    summary.accounts.push_back(
        {std::string(role_name(account.role)) + (u.verified ? "" : " (not verified)"), u.email,
         std::string(kDemoPassword)});
  }
  const auto& north = users[0];
  const auto& lake = users[1];
  const auto& kestrel = users[2];
  const auto& baobab = users[3];

  auto& messages = summary.messages;
  const auto first = store.messages().insert(
      {{}, kestrel.id, north.id,
       "Please add container orchestration and CI pipelines to CSC 403 Software Engineering; our "
       "SIWES interns struggle with deployment tooling.",
       {}, {}});
  ++messages;
  store.messages().insert({{}, north.id, kestrel.id,
                           "Thanks. We are reviewing CSC 403 for next session and will share a draft outline.",
                           {}, {}});
  ++messages;
  store.messages().insert({{}, baobab.id, lake.id,
                           "Graduates would benefit from more hands-on networking labs in CSC 423.", {}, {}});
  ++messages;
  store.messages().update(first.id, MessageChange{ReadState::Read});
  summary.read_messages = 1;

  store.reports().insert({{}, kestrel.id, north.id, "Amina Yusuf", "2024 SIWES",
                          "Completed six months on the platform team; strong in scripting, needs more "
                          "exposure to relational database design.",
                          {}});
  store.reports().insert({{}, baobab.id, lake.id, "Chinedu Okafor", "2024 SIWES",
                          "Supported cloud operations; reliable and quick to learn networking concepts.", {}});
  summary.reports = 2;
  return summary;
}

namespace {

std::atomic<ApiServer*> g_running_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_running_server.load()) s->stop();
}

void print_summary(std::ostream& out, const SeedSummary& s) {
  out << "seeded " << s.accounts.size() << " accounts, " << s.messages << " messages ("
      << s.read_messages << " read), " << s.reports << " reports\n";
  for (const auto& a : s.accounts) out << "  " << a.label << ": " << a.email << " / " << a.password << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Industry curriculum liaison service", "liaison"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string db = ":memory:";
  app.add_option("--db", db, "database file, or :memory:")->envname("LIAISON_DB");

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  std::string listen = "127.0.0.1:8080";
  std::string fixture;
  std::string ui_dir = "web/dist";
  serve->add_option("--listen", listen, "host:port")->envname("LIAISON_LISTEN");
  serve->add_option("--fixture", fixture, "curriculum CSV to load at startup");
  serve->add_option("--ui-dir", ui_dir, "static web UI directory mounted at /");

  auto* admin = app.add_subcommand("admin", "administrator accounts");
  admin->require_subcommand(1);
  auto* admin_create = admin->add_subcommand("create", "provision an administrator");
  std::string admin_email, admin_password;
  admin_create->add_option("email", admin_email)->required();
  admin_create->add_option("password", admin_password)->required();

  auto* user = app.add_subcommand("user", "user accounts");
  user->require_subcommand(1);
  auto* user_verify = user->add_subcommand("verify", "mark a user verified");
  std::int64_t user_id = 0;
  user_verify->add_option("id", user_id)->required();

  auto* fixture_cmd = app.add_subcommand("fixture", "curriculum fixtures");
  fixture_cmd->require_subcommand(1);
  auto* fixture_load = fixture_cmd->add_subcommand("load", "replace the course catalogue from a CSV");
  std::string fixture_path;
  fixture_load->add_option("path", fixture_path)->required();

  auto* seed = app.add_subcommand("seed", "demo data");
  seed->require_subcommand(1);
  auto* seed_demo_cmd = seed->add_subcommand("demo", "populate a demo dataset");
  bool force = false;
  seed_demo_cmd->add_flag("--force", force, "wipe and reseed a non-empty store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    Store store(StoreConfig::parse(db));
    Auth auth(store);

    if (*serve) {
      const auto addr = parse_listen_addr(listen);
      if (!addr) {
        err << "error: invalid listen address '" << listen << "'\n";
        return 1;
      }
      std::filesystem::path course_file = fixture;
      if (course_file.empty() && std::filesystem::exists("fixtures/bmas_csc.csv"))
        course_file = "fixtures/bmas_csc.csv";
      if (!course_file.empty()) store.courses().replace_all(load_fixture(course_file));

      Exchange exchange(store);
      ApiServer api(store, auth, exchange, {ui_dir});
      if (api.bind(addr->host, addr->port) < 0) {
        err << "error: cannot bind " << listen << '\n';
        return 1;
      }
      out << "listening on http://" << addr->host << ':' << addr->port << std::endl;
      g_running_server = &api;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      api.listen();
      g_running_server = nullptr;
      return 0;
    }
    if (*admin_create) {
      const auto a = auth.create_admin(admin_email, admin_password);
      out << a.id.value << '\n';
      return 0;
    }
    if (*user_verify) {
      auth.verify_user_direct(UserId{user_id});
      out << "verified\n";
      return 0;
    }
    if (*fixture_load) {
      const auto courses = load_fixture(fixture_path);
      store.courses().replace_all(courses);
      out << "loaded " << courses.size() << " courses\n";
      return 0;
    }
    if (*seed_demo_cmd) {
      print_summary(out, seed_demo(store, auth, force));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    for (const auto& [field, reason] : e.fields()) err << "  " << field << ": " << reason << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace liaison
