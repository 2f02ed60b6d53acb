#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "liaison/curriculum.hpp"
#include "liaison/error.hpp"

using namespace liaison;

namespace {

std::vector<Course> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fixture(in);
}

Error error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an Error";
  return Error(Errc::internal, "");
}

const std::string kHeader = "code,title,units,level,elective\n";

// Snapshot: hand sum of Table I's units column
// (3+3+3+3+3+3+3+1+3+3+2+1), recorded before the loader existed.
constexpr int kLevel100Units = 31;

}  // namespace

TEST(Fixture, ParsesTableOneRow) {
  const auto courses = parse(kHeader + "CSC 101,Introduction to Computer Science,3,100,false\n");
  ASSERT_EQ(courses.size(), 1u);
  EXPECT_EQ(courses[0], (Course{"CSC 101", "Introduction to Computer Science", 3, Level::L100, false}));
}

TEST(Fixture, BadUnitsReportsLine) {
  const auto e = error_of(kHeader + "CSC 101,Intro,3,100,false\nCSC 102,Problem Solving,x,100,false\n");
  EXPECT_EQ(e.code(), Errc::parse_error);
  EXPECT_EQ(e.fields().at("line"), "3");
  EXPECT_EQ(e.fields().at("reason"), "bad_units");
}

TEST(Fixture, DuplicateCode) {
  const auto e = error_of(kHeader + "CSC 101,A,3,100,false\nCSC 101,B,3,100,false\n");
  EXPECT_EQ(e.code(), Errc::duplicate_code);
  EXPECT_EQ(e.fields().at("code"), "CSC 101");
}

TEST(Fixture, StrictRowValidation) {
  EXPECT_EQ(error_of("code,title,units\n").fields().at("reason"), "bad_header");
  EXPECT_EQ(error_of("").fields().at("reason"), "bad_header");
  EXPECT_EQ(error_of(kHeader + "CSC 1,A,3,100\n").fields().at("reason"), "bad_column_count");
  EXPECT_EQ(error_of(kHeader + "CSC 1,A,3,500,false\n").fields().at("reason"), "bad_level");
  EXPECT_EQ(error_of(kHeader + "CSC 1,A,0,100,false\n").fields().at("reason"), "bad_units");
  EXPECT_EQ(error_of(kHeader + "CSC 1,A,7,100,false\n").fields().at("reason"), "bad_units");
  EXPECT_EQ(error_of(kHeader + "CSC 1,A,3,100,yes\n").fields().at("reason"), "bad_elective");
  EXPECT_EQ(error_of(kHeader + ",A,3,100,false\n").fields().at("reason"), "empty_code");
}

TEST(Fixture, AcceptsCrlfAndBlankLines) {
  const auto courses = parse("code,title,units,level,elective\r\nCSC 1,A,3,100,true\r\n\r\n");
  ASSERT_EQ(courses.size(), 1u);
  EXPECT_TRUE(courses[0].elective);
}

TEST(Fixture, MissingFileIsIoError) {
  try {
    load_fixture("/nonexistent/bmas.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io_error);
  }
}

TEST(Catalogue, RejectsDuplicateCodes) {
  try {
    Catalogue c({{"A", "x", 1, Level::L100, false}, {"A", "y", 1, Level::L200, false}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate_code);
  }
}

TEST(Catalogue, EmptyAndSingle) {
  const Catalogue empty;
  EXPECT_TRUE(empty.list_courses().empty());
  EXPECT_TRUE(empty.list_courses(Level::L300).empty());
  EXPECT_EQ(empty.total_units(Level::L100), 0);

  const Catalogue single({{"CSC 101", "Intro", 3, Level::L100, false}});
  EXPECT_EQ(single.total_units(Level::L100), 3);
  EXPECT_EQ(single.total_units(Level::L200), 0);
}

class ShippedFixture : public ::testing::Test {
 protected:
  std::vector<Course> rows = load_fixture(LIAISON_FIXTURE_PATH);
  Catalogue catalogue{rows};
};

TEST_F(ShippedFixture, TableOne) {
  const auto l100 = catalogue.list_courses(Level::L100);
  EXPECT_EQ(l100.size(), 12u);
  const auto csc101 = std::find_if(l100.begin(), l100.end(), [](auto& c) { return c.code == "CSC 101"; });
  ASSERT_NE(csc101, l100.end());
  EXPECT_EQ(csc101->title, "Introduction to Computer Science");
  EXPECT_EQ(csc101->units, 3);
  EXPECT_EQ(catalogue.total_units(Level::L100), kLevel100Units);
}

TEST_F(ShippedFixture, TableFourProject) {
  const auto l400 = catalogue.list_courses(Level::L400);
  EXPECT_NE(std::find(l400.begin(), l400.end(), Course{"CSC 499", "Project", 6, Level::L400, false}),
            l400.end());
}

TEST_F(ShippedFixture, ElectivesAreFlagged) {
  for (const char* code : {"CSC 331", "CSC 334", "CSC 335", "CSC 306", "MATH 204", "MATH 205"}) {
    const auto all = catalogue.list_courses();
    const auto it = std::find_if(all.begin(), all.end(), [&](auto& c) { return c.code == code; });
    ASSERT_NE(it, all.end()) << code;
    EXPECT_TRUE(it->elective) << code;
  }
}

TEST_F(ShippedFixture, LevelsPartitionTheCatalogue) {
  std::size_t sum = 0;
  for (auto level : {Level::L100, Level::L200, Level::L300, Level::L400})
    sum += catalogue.list_courses(level).size();
  EXPECT_EQ(sum, catalogue.list_courses().size());
  EXPECT_EQ(sum, rows.size());
}

TEST_F(ShippedFixture, SortedByCode) {
  const auto all = catalogue.list_courses();
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](auto& a, auto& b) { return a.code < b.code; }));
}

TEST_F(ShippedFixture, TotalUnitsIsAFold) {
  for (auto level : {Level::L100, Level::L200, Level::L300, Level::L400}) {
    const auto courses = catalogue.list_courses(level);
    const int fold = std::accumulate(courses.begin(), courses.end(), 0,
                                     [](int acc, const Course& c) { return acc + (c.elective ? 0 : c.units); });
    EXPECT_EQ(catalogue.total_units(level), fold);
  }
}

TEST_F(ShippedFixture, SerializeReloadIsFixedPoint) {
  const auto once = to_fixture_csv(rows);
  const auto reloaded = parse(once);
  EXPECT_EQ(reloaded, rows);
  EXPECT_EQ(to_fixture_csv(reloaded), once);
}
