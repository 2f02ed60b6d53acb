#include "liaison/curriculum.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "liaison/error.hpp"

namespace liaison {

namespace {

[[noreturn]] void parse_error(std::size_t line, std::string_view reason) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + std::string(reason),
              {{"line", std::to_string(line)}, {"reason", std::string(reason)}});
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

void sort_by_code(std::vector<Course>& courses) {
  std::sort(courses.begin(), courses.end(),
            [](const Course& a, const Course& b) { return a.code < b.code; });
}

}  // namespace

std::vector<Course> parse_fixture(std::istream& in) {
  std::vector<Course> out;
  std::set<std::string, std::less<>> codes;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (!header_seen) {
      if (line != kFixtureHeader) parse_error(line_no, "bad_header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    const auto cells = split(line, ',');
    if (cells.size() != 5) parse_error(line_no, "bad_column_count");

    Course c;
    c.code = trimmed(cells[0]);
    c.title = trimmed(cells[1]);
    if (c.code.empty()) parse_error(line_no, "empty_code");
    if (c.title.empty() || utf8_length(c.title) > kMaxNameLength) parse_error(line_no, "bad_title");

    const auto units = to_int(trimmed(cells[2]));
    if (!units || *units < 1 || *units > 6) parse_error(line_no, "bad_units");
    c.units = static_cast<int>(*units);

    const auto level_num = to_int(trimmed(cells[3]));
    const auto level = level_num ? level_from_int(*level_num) : std::nullopt;
    if (!level) parse_error(line_no, "bad_level");
    c.level = *level;

    const auto elective = trimmed(cells[4]);
    if (elective == "true")
      c.elective = true;
    else if (elective == "false")
      c.elective = false;
    else
      parse_error(line_no, "bad_elective");

    if (!codes.insert(c.code).second)
      throw Error(Errc::duplicate_code, "duplicate course code: " + c.code, {{"code", c.code}});
    out.push_back(std::move(c));
  }
  if (!header_seen) parse_error(1, "bad_header");
  return out;
}

std::vector<Course> load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read fixture: " + path.string());
  return parse_fixture(in);
}

std::string to_fixture_csv(const std::vector<Course>& courses) {
  std::ostringstream out;
  out << kFixtureHeader << '\n';
  for (const auto& c : courses) {
    out << c.code << ',' << c.title << ',' << c.units << ',' << static_cast<int>(c.level) << ','
        << (c.elective ? "true" : "false") << '\n';
  }
  return out.str();
}

Catalogue::Catalogue(std::vector<Course> courses) : courses_(std::move(courses)) {
  sort_by_code(courses_);
  const auto dup = std::adjacent_find(courses_.begin(), courses_.end(),
                                      [](const Course& a, const Course& b) { return a.code == b.code; });
  if (dup != courses_.end())
    throw Error(Errc::duplicate_code, "duplicate course code: " + dup->code, {{"code", dup->code}});
}

std::vector<Course> Catalogue::list_courses(std::optional<Level> level) const {
  if (!level) return courses_;
  std::vector<Course> out;
  std::copy_if(courses_.begin(), courses_.end(), std::back_inserter(out),
               [&](const Course& c) { return c.level == *level; });
  return out;
}

int Catalogue::total_units(Level level) const {
  int total = 0;
  for (const auto& c : courses_) {
    if (c.level == level && !c.elective) total += c.units;
  }
  return total;
}

}  // namespace liaison
