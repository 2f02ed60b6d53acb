#include "liaison/exchange.hpp"

#include <algorithm>
#include <map>

#include "liaison/error.hpp"

namespace liaison {

std::string_view to_string(ReportFieldError e) noexcept {
  switch (e) {
    case ReportFieldError::student_name_empty: return "student_name_empty";
    case ReportFieldError::student_name_too_long: return "student_name_too_long";
    case ReportFieldError::period_empty: return "period_empty";
    case ReportFieldError::period_too_long: return "period_too_long";
    case ReportFieldError::body_empty: return "body_empty";
    case ReportFieldError::body_too_long: return "body_too_long";
  }
  return "invalid";
}

std::string_view field_of(ReportFieldError e) noexcept {
  switch (e) {
    case ReportFieldError::student_name_empty:
    case ReportFieldError::student_name_too_long: return "student_name";
    case ReportFieldError::period_empty:
    case ReportFieldError::period_too_long: return "period";
    case ReportFieldError::body_empty:
    case ReportFieldError::body_too_long: return "body";
  }
  return "form";
}

std::vector<ReportFieldError> validate_report_form(const ReportForm& form) {
  std::vector<ReportFieldError> errors;
  const auto name = trimmed(form.student_name);
  if (name.empty())
    errors.push_back(ReportFieldError::student_name_empty);
  else if (utf8_length(name) > kMaxNameLength)
    errors.push_back(ReportFieldError::student_name_too_long);

  const auto period = trimmed(form.period);
  if (period.empty())
    errors.push_back(ReportFieldError::period_empty);
  else if (utf8_length(period) > kMaxPeriodLength)
    errors.push_back(ReportFieldError::period_too_long);

  if (trimmed(form.body).empty())
    errors.push_back(ReportFieldError::body_empty);
  else if (utf8_length(form.body) > kMaxBodyLength)
    errors.push_back(ReportFieldError::body_too_long);
  return errors;
}

UserAccount Exchange::caller_account(const Principal& caller) {
  require_kind(caller, SessionKind::User);
  auto account = store_->users().find(caller.user_id());
  if (!account) throw Error(Errc::unauthorized, "authentication required");
  return *account;
}

std::vector<Recipient> Exchange::list_recipients(const Principal& caller) {
  const auto me = caller_account(caller);
  const auto accounts =
      store_->users().query({.role = opposite(me.role), .status = UserStatus::Verified});
  std::vector<Recipient> out;
  out.reserve(accounts.size());
  for (const auto& a : accounts) out.push_back({a.id, a.name, a.role});
  std::sort(out.begin(), out.end(), [](const Recipient& a, const Recipient& b) {
    return a.name != b.name ? a.name < b.name : a.id < b.id;
  });
  return out;
}

Message Exchange::send_message(const Principal& caller, UserId to, std::string body) {
  const auto me = caller_account(caller);
  if (me.status != UserStatus::Verified)
    throw Error(Errc::sender_not_verified, "account is awaiting verification");
  const auto recipient = store_->users().find(to);
  if (!recipient || recipient->status != UserStatus::Verified || recipient->role == me.role)
    throw Error(Errc::recipient_invalid, "recipient must be a verified account of the other role");
  if (!valid_body(body) || trimmed(body).empty())
    throw Error(Errc::body_invalid, "message body must be 1-65535 characters");

  Message m;
  m.from_user = me.id;
  m.to_user = recipient->id;
  m.body = std::move(body);
  return store_->messages().insert(std::move(m));
}

std::vector<InboxEntry> Exchange::inbox(const Principal& caller) {
  const auto me = caller_account(caller);
  const auto messages = store_->messages().query({.to_user = me.id});
  std::map<UserId, std::string> names;
  std::vector<InboxEntry> out;
  out.reserve(messages.size());
  for (const auto& m : messages) {
    auto it = names.find(m.from_user);
    if (it == names.end()) {
      const auto sender = store_->users().find(m.from_user);
      it = names.emplace(m.from_user, sender ? sender->name : std::string{}).first;
    }
    out.push_back({m.id, m.from_user, it->second, std::string(utf8_prefix(m.body, kExcerptLength)),
                   m.read_state, m.created_at});
  }
  return out;
}

OpenedMessage Exchange::open_message(const Principal& caller, MessageId id) {
  const auto me = caller_account(caller);
  const auto message = store_->messages().find(id);
  if (!message) throw Error(Errc::not_found, "no such message");
  if (message->to_user != me.id) throw Error(Errc::forbidden, "only the recipient may open a message");
  auto updated = store_->messages().update(id, MessageChange{ReadState::Read});
  return {std::move(updated.value), updated.changed};
}

std::int64_t Exchange::unread_count(const Principal& caller) {
  const auto me = caller_account(caller);
  return store_->messages().count({.to_user = me.id, .read_state = ReadState::Unread});
}

Report Exchange::submit_report(const Principal& caller, const ReportForm& form) {
  const auto me = caller_account(caller);
  if (me.role != Role::Company) throw Error(Errc::forbidden, "only companies submit reports");
  if (me.status != UserStatus::Verified)
    throw Error(Errc::sender_not_verified, "account is awaiting verification");

  const auto errors = validate_report_form(form);
  if (!errors.empty()) {
    std::map<std::string, std::string> fields;
    for (auto e : errors) fields.emplace(field_of(e), to_string(e));
    throw Error(Errc::form_invalid, "report form is invalid", std::move(fields));
  }

  const auto school = store_->users().find(form.school_id);
  if (!school || school->role != Role::School || school->status != UserStatus::Verified)
    throw Error(Errc::recipient_invalid, "report recipient must be a verified school");

  Report r;
  r.company_id = me.id;
  r.school_id = school->id;
  r.student_name = trimmed(form.student_name);
  r.period = trimmed(form.period);
  r.body = form.body;
  return store_->reports().insert(std::move(r));
}

std::vector<Report> Exchange::list_reports(const Principal& caller) {
  const auto me = caller_account(caller);
  if (me.role != Role::School) throw Error(Errc::forbidden, "only schools receive reports");
  return store_->reports().query({.school_id = me.id});
}

}  // namespace liaison
