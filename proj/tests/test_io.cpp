#include "ehstream/data/arff.hpp"
#include "ehstream/data/csv.hpp"
#include "ehstream/data/electricity.hpp"
#include "ehstream/data/record.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace ehstream;

namespace {

Dataset three_records()
{
  Dataset d;
  d.relation = "demo";
  d.feature_names = { "x", "y" };
  d.class_names = { "DOWN", "UP" };
  d.records = { { 0, { 0.1, 1.0 / 3.0 }, 1 }, { 1, { -2.5e-300, 1e300 }, 0 }, { 2, { std::nextafter(1.0, 2.0), -0.0 }, 1 } };
  return d;
}

const std::filesystem::path kData = EHSTREAM_TEST_DATA_DIR;

} // namespace

TEST(Csv, EmptyStreamIsHeaderOnly)
{
  Dataset d;
  d.feature_names = { "a", "b" };
  d.class_names = { "0" };
  std::ostringstream out;
  write_csv(d, out);
  EXPECT_EQ(out.str(), "a,b,class\n");
}

TEST(Csv, RoundTripIsExact)
{
  const auto d = three_records();
  std::stringstream io;
  write_csv(d, io);
  auto back = read_csv(io);
  back.relation = d.relation;
  // class names come back in first-seen order: UP then DOWN
  ASSERT_EQ(back.class_names, (std::vector<std::string>{ "UP", "DOWN" }));
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.records[i].t, d.records[i].t);
    EXPECT_EQ(back.records[i].features, d.records[i].features);
    EXPECT_EQ(back.class_names[*back.records[i].label], d.class_names[*d.records[i].label]);
  }
}

TEST(Csv, RoundTripFieldForFieldWhenClassesAlreadyInFirstSeenOrder)
{
  auto d = three_records();
  d.class_names = { "UP", "DOWN" };
  for (auto& r : d.records)
    r.label = 1 - *r.label;
  std::stringstream io;
  write_csv(d, io);
  auto back = read_csv(io);
  back.relation = d.relation;
  EXPECT_EQ(back, d);
}

TEST(Csv, UnlabeledStream)
{
  Dataset d;
  d.feature_names = { "v" };
  d.records = { { 0, { 1.5 }, std::nullopt } };
  std::stringstream io;
  write_csv(d, io);
  EXPECT_EQ(io.str(), "v\n1.5\n");
  auto back = read_csv(io);
  back.relation = d.relation;
  EXPECT_EQ(back, d);
}

TEST(Csv, Errors)
{
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), FormatError);
  std::istringstream ragged("a,b,class\n1,2,x\n1,x\n");
  EXPECT_THROW(read_csv(ragged), FormatError);
  std::istringstream bad("a,class\nfoo,x\n");
  EXPECT_THROW(read_csv(bad), FormatError);
  EXPECT_THROW(read_csv(std::filesystem::path("/nonexistent/file.csv")), FormatError);
}

TEST(Arff, HeaderDeclaresClassesInFirstSeenOrder)
{
  Dataset d;
  d.feature_names = { "a" };
  d.records = { { 0, { 1.0 }, d.intern_class("b") }, { 1, { 2.0 }, d.intern_class("a") }, { 2, { 3.0 }, d.intern_class("b") } };
  std::stringstream io;
  write_arff(d, io);
  EXPECT_NE(io.str().find("@attribute class {b,a}"), std::string::npos);
  EXPECT_NE(io.str().find("@attribute a numeric"), std::string::npos);
  const auto back = read_arff(io);
  EXPECT_EQ(back.class_names, (std::vector<std::string>{ "b", "a" }));
  EXPECT_EQ(back, d);
}

TEST(Arff, RoundTripIsExact)
{
  const auto d = three_records();
  std::stringstream io;
  write_arff(d, io);
  EXPECT_EQ(read_arff(io), d);
}

TEST(Arff, QuotedNames)
{
  Dataset d;
  d.relation = "my stream";
  d.feature_names = { "a b" };
  d.class_names = { "x y" };
  d.records = { { 0, { 1.0 }, 0 } };
  std::stringstream io;
  write_arff(d, io);
  EXPECT_EQ(read_arff(io), d);
}

TEST(Arff, Errors)
{
  std::istringstream no_data("@relation r\n@attribute a numeric\n");
  EXPECT_THROW(read_arff(no_data), FormatError);
  std::istringstream nominal("@relation r\n@attribute colour {red,blue}\n@data\nred\n");
  EXPECT_THROW(read_arff(nominal), FormatError);
  std::istringstream undeclared("@relation r\n@attribute a numeric\n@attribute class {x}\n@data\n1,y\n");
  EXPECT_THROW(read_arff(undeclared), FormatError);
}

TEST(Electricity, LoadsCsvFixture)
{
  const auto d = load_electricity(kData / "elec_sample.csv");
  EXPECT_EQ(d.feature_count(), 6u);
  EXPECT_EQ(d.feature_names, electricity_default_columns());
  EXPECT_EQ(d.class_names, (std::vector<std::string>{ "UP", "DOWN" }));
  ASSERT_EQ(d.size(), 6u);
  EXPECT_DOUBLE_EQ(d.records[1].features[0], 0.021277);
  EXPECT_DOUBLE_EQ(d.records[1].features[1], 0.051699);
  EXPECT_EQ(d.records[0].label, 0);
  EXPECT_EQ(d.records[5].label, 1);
}

TEST(Electricity, LoadsArffFixture)
{
  const auto d = load_electricity(kData / "elec_sample.arff");
  EXPECT_EQ(d.feature_count(), 6u);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.records[2].label, 1);
}

TEST(Electricity, Errors)
{
  const auto dir = std::filesystem::temp_directory_path();
  const auto empty = dir / "ehstream_empty_elec.csv";
  { std::ofstream(empty) << ""; }
  EXPECT_THROW(load_electricity(empty), FormatError);
  const auto header_only = dir / "ehstream_header_elec.csv";
  { std::ofstream(header_only) << "date,day,period,nswprice,nswdemand,vicprice,vicdemand,transfer,class\n"; }
  EXPECT_THROW(load_electricity(header_only), FormatError);
  const auto narrow = dir / "ehstream_narrow_elec.csv";
  { std::ofstream(narrow) << "period,nswprice,class\n0,0.1,UP\n"; }
  EXPECT_THROW(load_electricity(narrow), FormatError);
  std::filesystem::remove(empty);
  std::filesystem::remove(header_only);
  std::filesystem::remove(narrow);
}

TEST(Dataset, SplitTailKeepsMostRecentInOrder)
{
  Dataset d;
  d.feature_names = { "x" };
  for (int t = 0; t < 100; ++t)
    d.records.push_back({ t, { 1.0 * t }, std::nullopt });
  const auto [head, tail] = split_tail(d, 0.15);
  EXPECT_EQ(head.size(), 85u);
  ASSERT_EQ(tail.size(), 15u);
  EXPECT_EQ(tail.records.front().t, 85);
  EXPECT_EQ(tail.records.back().t, 99);
  EXPECT_THROW(split_tail(d, 0.0), std::invalid_argument);
}

TEST(Dataset, ValidateCatchesLayoutErrors)
{
  Dataset d;
  d.feature_names = { "x" };
  d.records = { { 0, { 1.0, 2.0 }, std::nullopt } };
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.records = { { 0, { 1.0 }, 3 } };
  EXPECT_THROW(d.validate(), std::invalid_argument);
}
