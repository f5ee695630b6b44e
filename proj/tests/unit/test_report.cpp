#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "specdiff/error.hpp"
#include "specdiff/report.hpp"

using namespace specdiff;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(HashHex, SixteenLowercaseDigits) {
  EXPECT_EQ(hash_hex(0), "0000000000000000");
  EXPECT_EQ(hash_hex(0xDEADBEEFULL), "00000000deadbeef");
  EXPECT_EQ(hash_hex(~0ULL), "ffffffffffffffff");
}

TEST(Csv, RoundTripWithQuotingAndComments) {
  CsvTable t;
  t.kind = "demo";
  t.comments = {"title=a, b", "second"};
  t.columns = {"name", "value"};
  t.rows = {{"plain", "1"}, {"with,comma", "2"}, {"say \"hi\"", "3"}, {"", "4"}};
  const auto text = write_csv(t);
  EXPECT_EQ(text.rfind("# schema=specdiff/1,kind=demo\n", 0), 0u);
  const auto back = parse_csv(text);
  EXPECT_EQ(back.kind, t.kind);
  EXPECT_EQ(back.comments, t.comments);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(Csv, RejectsBadInput) {
  EXPECT_THROW((void)parse_csv(""), ValidationError);
  EXPECT_THROW((void)parse_csv("a,b\n1,2\n"), ValidationError);
  EXPECT_THROW((void)parse_csv("# schema=specdiff/0,kind=x\na,b\n"), ValidationError);
  EXPECT_THROW((void)parse_csv("# schema=specdiff/1,kind=x\na,b\n1,2,3\n"), ValidationError);
  EXPECT_THROW((void)parse_csv("# schema=specdiff/1,kind=x\na,b\n\"1,2\n"), ValidationError);
  EXPECT_THROW((void)parse_csv("# schema=specdiff/1,kind=x\n# only comments\n"), ValidationError);
}

TEST(FormatJson, FloatsAtFullPrecisionAndNonFiniteAsNull) {
  nlohmann::json j = {{"a", 0.1}, {"b", {1, 2.5, "s"}}, {"c", {{"d", 1e-300}}}, {"e", true}, {"f", nullptr}};
  const auto out = format_json(j.dump());
  EXPECT_NE(out.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(out.find("  \"a\""), std::string::npos);
  const auto back = nlohmann::json::parse(out);
  EXPECT_EQ(back, j);

  nlohmann::json bad = {{"x", std::numeric_limits<double>::infinity()}};
  EXPECT_TRUE(nlohmann::json::parse(format_json(bad.dump()))["x"].is_null());
  EXPECT_THROW((void)format_json("{not json"), ValidationError);
}

TEST(DatasetOutput, CsvAndJsonAgree) {
  Dataset ds{2, "demo", {{"m=1 x=1", 11, "cfg-a"}, {"m=1 x=0", 22, "cfg-b"}}, {}};
  ds.rows = {{11, 32, 1.0, 1e-3}, {11, 33, 1.0, 9e-4}, {22, 32, 0.0, std::numeric_limits<double>::infinity()}};
  const auto csv = parse_csv(dataset_csv(ds));
  EXPECT_EQ(csv.kind, "figure2");
  EXPECT_EQ(csv.columns, (std::vector<std::string>{"config", "n", "x", "err"}));
  ASSERT_EQ(csv.rows.size(), 3u);
  EXPECT_EQ(csv.rows[0][0], hash_hex(11));
  EXPECT_EQ(std::stod(csv.rows[1][3]), 9e-4);
  EXPECT_EQ(csv.rows[2][3], "inf");

  const auto j = nlohmann::json::parse(dataset_json(ds));
  EXPECT_EQ(j["schema"], "specdiff/1");
  EXPECT_EQ(j["figure"], 2);
  ASSERT_EQ(j["series"].size(), 2u);
  EXPECT_EQ(j["series"][0]["rows"].size(), 2u);
  EXPECT_EQ(j["series"][0]["rows"][1]["err"].get<double>(), 9e-4);
  EXPECT_TRUE(j["series"][1]["rows"][0]["err"].is_null());
}

TEST(CurvesCsv, OneRowPerSample) {
  const CurveConfig cfg{SingularFunction::abs_power(0.25, 5.0), JacobiProjection{JacobiParams(1.0, 0.0)}, 1, 0.5};
  const std::vector<ErrorCurve> curves{{cfg, {{16, 1e-4}, {17, 8e-5}}}};
  const auto t = parse_csv(curves_csv(curves));
  EXPECT_EQ(t.kind, "errcurve");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], hash_hex(cfg.hash()));
  EXPECT_EQ(t.rows[1][1], "17");
  EXPECT_EQ(std::stod(t.rows[1][2]), 0.5);
}

TEST(VerificationJson, CarriesFitsAndArgmax) {
  const auto f = SingularFunction::abs_power(0.25, 5.0);
  const Method method = JacobiProjection{JacobiParams(1.0, 0.0)};
  VerificationReport r;
  r.pass = true;
  r.points.push_back({1.0, PointClass::EndpointPlus, 2.5, RateFit{2.47, 1.0, 32, 1024, 21, 0.01, 0, 0}, 0.03, true, ""});
  r.points.push_back({0.0, PointClass::Smooth, 5.0, std::nullopt, std::nan(""), false, "too few samples"});
  r.argmax = ArgmaxCheck{512, 1.0, 1e-6, PointClass::EndpointPlus, {PointClass::EndpointPlus}, 2.5, true};
  const auto j = nlohmann::json::parse(verification_json(r, f, method, 1));
  EXPECT_EQ(j["method"]["kind"], "jacobi");
  EXPECT_EQ(j["function"]["xi"].get<double>(), 0.25);
  EXPECT_EQ(j["points"][0]["fit"]["slope"].get<double>(), 2.47);
  EXPECT_EQ(j["points"][0]["class"], "EndpointPlus");
  EXPECT_TRUE(j["points"][1]["difference"].is_null());
  EXPECT_EQ(j["points"][1]["note"], "too few samples");
  EXPECT_FALSE(j["points"][1].contains("fit"));
  EXPECT_EQ(j["argmax"]["n"], 512);
  EXPECT_FALSE(j.contains("violation"));

  VerificationReport bad;
  bad.assumptions_ok = false;
  bad.violation = "m >= sigma";
  EXPECT_EQ(nlohmann::json::parse(verification_json(bad, f, method, 7))["violation"], "m >= sigma");
}

TEST(WriteFileAtomic, ReplacesContentAndLeavesNoTemporaries) {
  const auto dir = std::filesystem::temp_directory_path() / ("specdiff_report_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_file_atomic(path.string(), "first\n");
  write_file_atomic(path.string(), "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1);
  EXPECT_THROW(write_file_atomic((dir / "missing" / "x.csv").string(), "x"), ValidationError);
  std::filesystem::remove_all(dir);
}
