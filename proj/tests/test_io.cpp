#include <algorithm>

#include <gtest/gtest.h>

#include "bisteklov/io.hpp"

using namespace bisteklov;
using nlohmann::json;

TEST(Io, PolygonRoundTrip) {
  const auto p = regular_polygon(7, 1.3, {0.2, -0.1}, 0.4);
  const auto q = io::polygon_from_json(json::parse(io::polygon_to_json(p).dump()));
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(q.vertex(i).x, p.vertex(i).x);
    EXPECT_EQ(q.vertex(i).y, p.vertex(i).y);
  }
}

TEST(Io, PolygonLayouts) {
  const auto a = io::polygons_from_json(json::parse("[[0,0],[1,0],[0,1]]"), "tri");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].name, "tri");
  const auto b = io::polygons_from_json(json::parse(R"({"name":"sq","vertices":[[0,0],[1,0],[1,1],[0,1]]})"));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].name, "sq");
  EXPECT_DOUBLE_EQ(b[0].poly.area(), 1.0);
  const auto c = io::polygons_from_json(json::parse(R"([{"name":"x","vertices":[[0,0],[1,0],[0,1]]},[[0,0],[2,0],[0,2]]])"), "f");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].name, "x");
  EXPECT_EQ(c[1].name, "f-1");
  EXPECT_THROW(io::polygons_from_json(json::parse("42")), Error);
  EXPECT_THROW(io::polygons_from_json(json::parse("[[0,0],[1,0],[0]]")), Error);
}

TEST(Io, ReportRoundTrip) {
  const auto r = isoperimetric_report(rectangle(2.0, 1.0), 1.7);
  const auto s = io::iso_report_from_json(json::parse(io::to_json(r).dump()));
  EXPECT_EQ(s.upper_bound, r.upper_bound);
  EXPECT_EQ(s.asymmetry, r.asymmetry);
  EXPECT_EQ(s.asymmetry_center.x, r.asymmetry_center.x);
  EXPECT_EQ(s.quantitative_bound, r.quantitative_bound);
  EXPECT_EQ(s.moment_inequality, r.moment_inequality);
  EXPECT_EQ(s.quantitative_holds, r.quantitative_holds);
}

TEST(Io, CsvColumnsLineUp) {
  const auto r = isoperimetric_report(rectangle(2.0, 1.0), 1.0);
  const auto h = io::iso_csv_header(), row = io::iso_csv_row("rect", r);
  EXPECT_EQ(std::count(h.begin(), h.end(), ','), std::count(row.begin(), row.end(), ','));
  EXPECT_EQ(row.substr(0, 5), "rect,");
  EXPECT_EQ(io::num(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::num(r.upper_bound)), r.upper_bound);
}
