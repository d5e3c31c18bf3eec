#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hkink/error.hpp"
#include "hkink/export.hpp"

using namespace hkink;

TEST(Export, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(-0.0), "-0");
}

TEST(Export, FieldCsvRoundTrip) {
  const CylGrid g = CylGrid::full(2, 1.7, 11, 21);
  const Field u = Field::sample(g, [](double r, double t) { return std::sin(3 * r) * std::tanh(t) / 7.0; });
  std::stringstream ss;
  write_field_csv(ss, u);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("r,t,value\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);

  const Field back = read_field_csv(ss, 2);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.values(), u.values());

  std::stringstream again(text);
  EXPECT_THROW(read_field_csv(again, CylGrid::full(2, 1.7, 11, 23)), DomainError);
}

TEST(Export, MalformedCsv) {
  std::stringstream bad_header("x,y,z\n0,0,0\n");
  EXPECT_THROW(read_field_csv(bad_header, 1), DomainError);
  std::stringstream bad_row("r,t,value\n0,0,abc\n");
  EXPECT_THROW(read_field_csv(bad_row, 1), DomainError);
  std::stringstream empty("r,t,value\n");
  EXPECT_THROW(read_field_csv(empty, 1), DomainError);
}

TEST(Export, ColorRamp) {
  const auto& ramp = color_ramp();
  EXPECT_EQ(ramp.size(), 256u);
  EXPECT_EQ(ramp.front()[0], 0x21);
  EXPECT_EQ(ramp.front()[1], 0x66);
  EXPECT_EQ(ramp.front()[2], 0xac);
  EXPECT_EQ(ramp.back()[0], 0xb2);
  EXPECT_EQ(ramp.back()[1], 0x18);
  EXPECT_EQ(ramp.back()[2], 0x2b);
}

TEST(Export, SvgDocuments) {
  const CylGrid g = CylGrid::half(1, 1.0, 9, 9);
  std::stringstream a, b;
  write_heatmap_svg(a, Field::sample(g, [](double r, double t) { return r - t; }), "u & v");
  write_line_svg(b, {{"one", {0, 1, 2}, {1, 0, 1}}}, "t <= 1", "t", "u");
  for (const std::string s : {a.str(), b.str()}) {
    EXPECT_NE(s.find("<svg"), std::string::npos);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
  }
  EXPECT_NE(a.str().find("u &amp; v"), std::string::npos);
  EXPECT_NE(b.str().find("t &lt;= 1"), std::string::npos);
}
