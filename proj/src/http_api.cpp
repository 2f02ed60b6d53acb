#include "liaison/http_api.hpp"

#include <httplib.h>

#include <charconv>

#include "liaison/curriculum.hpp"
#include "liaison/serialize.hpp"

namespace liaison {

using httplib::Request;
using httplib::Response;

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::validation_failed:
    case Errc::recipient_invalid:
    case Errc::body_invalid:
    case Errc::form_invalid:
    case Errc::invariant_violation:
    case Errc::parse_error: return 400;
    case Errc::auth_failed:
    case Errc::unauthorized: return 401;
    case Errc::forbidden:
    case Errc::sender_not_verified: return 403;
    case Errc::not_found: return 404;
    case Errc::email_taken:
    case Errc::unique_violation:
    case Errc::duplicate_code: return 409;
    case Errc::io_error:
    case Errc::corrupt_store:
    case Errc::migration_failed:
    case Errc::internal: return 500;
  }
  return 500;
}

std::string extract_token(std::string_view authorization, std::string_view cookie_header) {
  constexpr std::string_view bearer = "Bearer ";
  if (authorization.substr(0, bearer.size()) == bearer) {
    auto token = trimmed(authorization.substr(bearer.size()));
    if (!token.empty()) return token;
  }
  // Cookie: a=b; liaison_session=TOKEN; c=d
  while (!cookie_header.empty()) {
    const auto semi = cookie_header.find(';');
    auto pair = trimmed(cookie_header.substr(0, semi));
    const auto eq = pair.find('=');
    if (eq != std::string::npos && std::string_view(pair).substr(0, eq) == kSessionCookie)
      return pair.substr(eq + 1);
    if (semi == std::string_view::npos) break;
    cookie_header.remove_prefix(semi + 1);
  }
  return {};
}

namespace {

constexpr const char* kJson = "application/json";

void send_json(Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(Response& res, const Error& e) { send_json(res, http_status(e.code()), json(e)); }

json parse_body(const Request& req) {
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw Error(Errc::validation_failed, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error&) {
    throw Error(Errc::validation_failed, "request body is not valid JSON", {{"body", "invalid_json"}});
  }
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string())
    throw Error(Errc::validation_failed, std::string("field must be a string: ") + key, {{key, "type"}});
  return j.at(key).get<std::string>();
}

std::int64_t id_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw Error(Errc::validation_failed, std::string("field must be an integer id: ") + key, {{key, "type"}});
  return j.at(key).get<std::int64_t>();
}

std::int64_t path_id(const Request& req) {
  std::int64_t v = 0;
  const std::string s = req.matches[1];
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw Error(Errc::not_found, "no such resource");
  return v;
}

std::string session_cookie(const Session& s, std::chrono::seconds ttl) {
  return std::string(kSessionCookie) + "=" + s.token +
         "; Path=/; HttpOnly; SameSite=Lax; Max-Age=" + std::to_string(ttl.count());
}

std::string clear_cookie() {
  return std::string(kSessionCookie) + "=; Path=/; HttpOnly; SameSite=Lax; Max-Age=0";
}

}  // namespace

ApiServer::ApiServer(Store& store, Auth& auth, Exchange& exchange, ApiOptions options)
    : store_(&store),
      auth_(&auth),
      exchange_(&exchange),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
  // httplib's default also sets SO_REUSEPORT, which would let a second
  // instance share a busy port instead of failing to bind.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  install_routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ApiServer::listen() { return server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_) server_->stop();
}

bool ApiServer::is_running() const { return server_->is_running(); }

void ApiServer::wait_until_ready() const { server_->wait_until_ready(); }

void ApiServer::install_routes() {
  auto& srv = *server_;

  // Wraps a handler so every failure becomes one ApiError body.
  auto wrap = [](auto fn) {
    return [fn](const Request& req, Response& res) {
      try {
        fn(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const std::exception&) {
        send_error(res, Error(Errc::internal, "internal error"));
      }
    };
  };
  auto principal_of = [this](const Request& req) {
    return auth_->authenticate(
        extract_token(req.get_header_value("Authorization"), req.get_header_value("Cookie")));
  };

  srv.Get("/api/health", wrap([](const Request&, Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  }));

  srv.Post("/api/register", wrap([this](const Request& req, Response& res) {
    const auto body = parse_body(req);
    RegistrationForm form{string_field(body, "name"),     string_field(body, "email"),
                          string_field(body, "phone"),    string_field(body, "password"),
                          string_field(body, "password_confirm"), string_field(body, "role")};
    if (auto long_form = role_from_name(form.role)) form.role = std::string(1, role_code(*long_form));
    send_json(res, 201, auth_->register_user(form));
  }));

  auto login_route = [this, wrap](bool admin) {
    return wrap([this, admin](const Request& req, Response& res) {
      Credentials c;
      try {
        const auto body = parse_body(req);
        c = {string_field(body, "email"), string_field(body, "password")};
      } catch (const Error&) {
        // Malformed credentials fail exactly like wrong ones.
        throw Error(Errc::auth_failed, "invalid email or password");
      }
      const auto session = admin ? auth_->admin_login(c) : auth_->login(c);
      res.set_header("Set-Cookie", session_cookie(session, auth_->options().session_ttl));
      send_json(res, 200, session_json(session));
    });
  };
  srv.Post("/api/login", login_route(false));
  srv.Post("/api/admin/login", login_route(true));

  srv.Post("/api/logout", wrap([this](const Request& req, Response& res) {
    auth_->logout(
        extract_token(req.get_header_value("Authorization"), req.get_header_value("Cookie")));
    res.set_header("Set-Cookie", clear_cookie());
    send_json(res, 200, {{"status", "ok"}});
  }));

  srv.Get("/api/me", wrap([this, principal_of](const Request& req, Response& res) {
    const auto p = principal_of(req);
    json out{{"principal", p}};
    if (p.kind == SessionKind::User) {
      if (auto u = store_->users().find(p.user_id())) out["account"] = *u;
    } else if (auto a = store_->admins().find(AdminId{p.id})) {
      out["account"] = *a;
    }
    send_json(res, 200, out);
  }));

  srv.Get("/api/admin/pending", wrap([this, principal_of](const Request& req, Response& res) {
    send_json(res, 200, auth_->list_pending(principal_of(req)));
  }));

  srv.Post(R"(/api/admin/verify/(\d+))", wrap([this, principal_of](const Request& req, Response& res) {
    const auto p = principal_of(req);
    send_json(res, 200, auth_->verify_user(p, UserId{path_id(req)}));
  }));

  srv.Get("/api/recipients", wrap([this, principal_of](const Request& req, Response& res) {
    send_json(res, 200, exchange_->list_recipients(principal_of(req)));
  }));

  srv.Post("/api/messages", wrap([this, principal_of](const Request& req, Response& res) {
    const auto p = principal_of(req);
    const auto body = parse_body(req);
    const auto to = id_field(body, "to_user");
    send_json(res, 201, exchange_->send_message(p, UserId{to}, string_field(body, "body")));
  }));

  srv.Get("/api/messages", wrap([this, principal_of](const Request& req, Response& res) {
    send_json(res, 200, exchange_->inbox(principal_of(req)));
  }));

  srv.Get("/api/messages/unread_count", wrap([this, principal_of](const Request& req, Response& res) {
    send_json(res, 200, {{"unread_count", exchange_->unread_count(principal_of(req))}});
  }));

  srv.Get(R"(/api/messages/(\d+))", wrap([this, principal_of](const Request& req, Response& res) {
    const auto p = principal_of(req);
    send_json(res, 200, exchange_->open_message(p, MessageId{path_id(req)}).message);
  }));

  srv.Post("/api/reports", wrap([this, principal_of](const Request& req, Response& res) {
    const auto p = principal_of(req);
    const auto body = parse_body(req);
    ReportForm form{UserId{id_field(body, "school_id")}, string_field(body, "student_name"),
                    string_field(body, "period"), string_field(body, "body")};
    send_json(res, 201, exchange_->submit_report(p, form));
  }));

  srv.Get("/api/reports", wrap([this, principal_of](const Request& req, Response& res) {
    send_json(res, 200, exchange_->list_reports(principal_of(req)));
  }));

  srv.Get("/api/courses", wrap([this](const Request& req, Response& res) {
    std::optional<Level> level;
    if (req.has_param("level")) {
      const auto raw = req.get_param_value("level");
      long long v = 0;
      const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
      if (ec == std::errc{} && end == raw.data() + raw.size()) level = level_from_int(v);
      if (!level) throw Error(Errc::validation_failed, "level must be 100, 200, 300 or 400", {{"level", "invalid"}});
    }
    const Catalogue catalogue(store_->courses().query());
    send_json(res, 200, catalogue.list_courses(level));
  }));

  // Unrouted paths and empty error responses still carry an ApiError body.
  srv.set_error_handler([](const Request&, Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const Errc code = res.status == 404 ? Errc::not_found
                      : res.status == 405 ? Errc::not_found
                      : res.status < 500  ? Errc::validation_failed
                                          : Errc::internal;
    res.set_content(json(Error(code, httplib::status_message(res.status))).dump(), kJson);
    return httplib::Server::HandlerResponse::Handled;
  });

  if (!options_.static_dir.empty() && std::filesystem::is_directory(options_.static_dir))
    srv.set_mount_point("/", options_.static_dir.string());
}

}  // namespace liaison
