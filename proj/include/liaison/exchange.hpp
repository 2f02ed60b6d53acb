#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liaison/auth.hpp"
#include "liaison/model.hpp"
#include "liaison/store.hpp"

namespace liaison {

inline constexpr std::size_t kExcerptLength = 120;

struct Recipient {
  UserId id;
  std::string name;
  Role role = Role::School;

  bool operator==(const Recipient&) const = default;
};

struct InboxEntry {
  MessageId message_id;
  UserId from_user;
  std::string from_name;
  std::string excerpt;  // first kExcerptLength characters of the body
  ReadState read_state = ReadState::Unread;
  Timestamp created_at{};
};

struct OpenedMessage {
  Message message;
  bool newly_read = false;  // true only for the call that flipped Unread -> Read
};

struct ReportForm {
  UserId school_id;
  std::string student_name;
  std::string period;
  std::string body;
};

enum class ReportFieldError {
  student_name_empty,
  student_name_too_long,
  period_empty,
  period_too_long,
  body_empty,
  body_too_long,
};

std::string_view to_string(ReportFieldError e) noexcept;
std::string_view field_of(ReportFieldError e) noexcept;
std::vector<ReportFieldError> validate_report_form(const ReportForm& form);

// Messages and student reports between verified schools and companies. All
// operations take an authenticated principal and re-read the caller's account
// so verification changes apply immediately.
class Exchange {
 public:
  explicit Exchange(Store& store) : store_(&store) {}

  /// Verified accounts of the opposite role, sorted by name.
  std::vector<Recipient> list_recipients(const Principal& caller);
  Message send_message(const Principal& caller, UserId to, std::string body);
  std::vector<InboxEntry> inbox(const Principal& caller);
  OpenedMessage open_message(const Principal& caller, MessageId id);
  std::int64_t unread_count(const Principal& caller);

  Report submit_report(const Principal& caller, const ReportForm& form);
  std::vector<Report> list_reports(const Principal& caller);

 private:
  UserAccount caller_account(const Principal& caller);

  Store* store_;
};

}  // namespace liaison
