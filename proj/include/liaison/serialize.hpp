#pragma once

// JSON wire format. Keys are snake_case, timestamps RFC 3339 UTC, roles in
// long form ("school"/"company"). Password digests are never written.

#include <nlohmann/json.hpp>

#include "liaison/auth.hpp"
#include "liaison/error.hpp"
#include "liaison/exchange.hpp"
#include "liaison/model.hpp"

namespace liaison {

using json = nlohmann::json;

std::string_view read_state_name(ReadState s) noexcept;  // "unread" / "read"

void to_json(json& j, const UserAccount& u);
void to_json(json& j, const AdminAccount& a);
void to_json(json& j, const Message& m);
void to_json(json& j, const Report& r);
void to_json(json& j, const Course& c);
void to_json(json& j, const Recipient& r);
void to_json(json& j, const InboxEntry& e);
void to_json(json& j, const Principal& p);
void to_json(json& j, const Error& e);

// Inverse for the entities clients send back or cache. Throws
// validation_failed on missing keys or wrong shapes.
void from_json(const json& j, Message& m);
void from_json(const json& j, Report& r);
void from_json(const json& j, Course& c);

/// Session as returned by the login endpoints (token included, once).
json session_json(const Session& s);

}  // namespace liaison
