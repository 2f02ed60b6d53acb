#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "liaison/model.hpp"

namespace liaison {

inline constexpr std::string_view kFixtureHeader = "code,title,units,level,elective";

/// Parses a fixture CSV. All-or-nothing: the first bad row aborts with
/// parse_error("line N: reason") or duplicate_code.
std::vector<Course> parse_fixture(std::istream& in);
/// io_error when the file cannot be read.
std::vector<Course> load_fixture(const std::filesystem::path& path);
/// Inverse of parse_fixture, header included.
std::string to_fixture_csv(const std::vector<Course>& courses);

// Immutable course catalogue.
class Catalogue {
 public:
  Catalogue() = default;
  /// Throws duplicate_code if two courses share a code.
  explicit Catalogue(std::vector<Course> courses);

  /// Sorted by code; all courses when `level` is absent.
  std::vector<Course> list_courses(std::optional<Level> level = std::nullopt) const;
  /// Units of non-elective courses at `level`.
  int total_units(Level level) const;
  std::size_t size() const noexcept { return courses_.size(); }

 private:
  std::vector<Course> courses_;  // sorted by code
};

}  // namespace liaison
