#include "commands.hpp"
#include "support.hpp"
#include "tricat/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tricat;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tricat_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* tiny = R"({
  "format": 1,
  "field": {"kind": "prime", "p": 3},
  "indecomposables": ["X"],
  "hom": {"X|X": {"dim": 1}},
  "compose": {"X|X|X": [[[1]]]},
  "identity": {"X": [1]},
  "shift": {"objects": {"X": ["X"]}, "homs": {"X|X": [[1]]}}
})";

}  // namespace

TEST(Io, RoundTripPreservesEverything) {
  auto fx = catalog::nakayama_stable(4, 3);
  const auto j = io::to_json(*fx.category, fx.triangulation->generators(), {{"D", Subcat({1})}});
  const auto f = io::parse(j.dump());
  const auto& c = *f.category;
  ASSERT_EQ(c.size(), 3U);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(c.hom_dim(i, k), fx.category->hom_dim(i, k));
  EXPECT_EQ(f.triangles.size(), fx.triangulation->generators().size());
  EXPECT_EQ(f.subcats.at("D"), Subcat({1}));
  EXPECT_EQ(io::to_json(c, f.triangles, f.subcats), j);
}

TEST(Io, TinyFileParses) {
  const auto f = io::parse(tiny);
  EXPECT_EQ(f.category->size(), 1U);
  EXPECT_EQ(f.category->field().characteristic(), 3U);
  EXPECT_TRUE(f.quotient.is_null());
}

TEST(Io, UnknownKeysAreRejected) {
  auto j = nlohmann::json::parse(tiny);
  j["extra"] = 1;
  try {
    io::parse(j.dump());
    FAIL() << "accepted an unknown key";
  } catch (const io::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("/extra"), std::string::npos) << e.what();
  }
  j = nlohmann::json::parse(tiny);
  j["shift"]["bogus"] = 0;
  EXPECT_THROW(io::parse(j.dump()), io::FormatError);
}

TEST(Io, SyntaxErrorsCarryPosition) {
  try {
    io::parse("{\n  \"format\": 1,\n  \"field\": ]\n}");
    FAIL();
  } catch (const io::FormatError& e) {
    EXPECT_EQ(e.line, 3U);
    EXPECT_GT(e.column, 0U);
  }
}

TEST(Io, RationalsAndFutureFormatsAreRejected) {
  auto j = nlohmann::json::parse(tiny);
  j["field"] = {{"kind", "rationals"}};
  EXPECT_THROW(io::parse(j.dump()), io::FormatError);
  j = nlohmann::json::parse(tiny);
  j["format"] = 2;
  EXPECT_THROW(io::parse(j.dump()), io::FormatError);
  j = nlohmann::json::parse(tiny);
  j["field"]["p"] = 4;
  EXPECT_THROW(io::parse(j.dump()), io::FormatError);
}

TEST(Io, MissingHomMeansZero) {
  auto j = nlohmann::json::parse(tiny);
  j["indecomposables"] = {"X", "Y"};
  j["identity"]["Y"] = {1};
  j["hom"]["Y|Y"] = {{"dim", 1}};
  j["compose"]["Y|Y|Y"] = {{{1}}};
  j["shift"]["objects"]["Y"] = {"Y"};
  j["shift"]["homs"]["Y|Y"] = {{1}};
  const auto f = io::parse(j.dump());
  EXPECT_EQ(f.category->hom_dim(0, 1), 0U);
  EXPECT_EQ(f.category->hom_dim(1, 0), 0U);
}

TEST(Io, UnreadableFileIsAFormatError) {
  EXPECT_THROW(io::load("/nonexistent/category.json"), io::FormatError);
}

TEST(Io, AtomicWriteReplacesContent) {
  TempDir dir;
  const auto p = dir.file("out.txt");
  io::write_atomic(p, "one");
  io::write_atomic(p, "two");
  EXPECT_EQ(slurp(p), "two");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator{}), 1);
}

TEST(Cli, CatalogThenValidate) {
  TempDir dir;
  const auto p = dir.file("n4.json");
  ASSERT_EQ(invoke({"catalog", "nakayama", "--n", "4", "--p", "2", "--out", p}).code, 0);
  auto r = invoke({"validate", p, "--levels", "tr0,tr1,tr2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, A2AxiomsFailWithWitness) {
  TempDir dir;
  const auto p = dir.file("a2.json");
  ASSERT_EQ(invoke({"catalog", "a2", "--p", "2", "--out", p}).code, 0);
  auto r = invoke({"axioms", p, "--format", "json"});
  EXPECT_EQ(r.code, 2);
  const auto j = nlohmann::json::parse(r.out);
  bool witnessed = false;
  for (const auto& ch : j.at("checks"))
    if (ch.at("name").get<std::string>().find("derotation") != std::string::npos)
      witnessed = witnessed || !ch.at("violations").empty();
  EXPECT_TRUE(witnessed) << r.out;
}

TEST(Cli, ParseAndUsageErrorsExitOne) {
  TempDir dir;
  const auto p = dir.file("bad.json");
  io::write_atomic(p, "{ \"format\": 1,");
  auto r = invoke({"validate", p});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"validate", dir.file("missing.json")}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"catalog", "nakayama", "--n", "9"}).code, 1);
}

TEST(Cli, MutationCheck) {
  TempDir dir;
  const auto p = dir.file("n4.json");
  ASSERT_EQ(invoke({"catalog", "nakayama", "--n", "4", "--out", p}).code, 0);
  EXPECT_EQ(invoke({"mutation-check", p, "--z", "all", "--d", "M2"}).code, 0);
  EXPECT_EQ(invoke({"mutation-check", p, "--z", "all", "--d", "M7"}).code, 1);
}

TEST(Cli, QuotientWritesAReloadableFile) {
  TempDir dir;
  const auto p = dir.file("n4.json"), qf = dir.file("q.json"), rep = dir.file("report.txt");
  ASSERT_EQ(invoke({"catalog", "nakayama", "--n", "4", "--out", p}).code, 0);
  auto r = invoke({"quotient", p, "--z", "all", "--d", "M2", "--out", qf, "--report", rep});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(slurp(rep).find("triangulated (sigma is an equivalence)"), std::string::npos);
  const auto f = io::load(qf);
  ASSERT_EQ(f.category->size(), 2U);
  EXPECT_EQ(f.category->hom_dim(0, 0), 1U);
  EXPECT_EQ(f.category->hom_dim(0, 1), 0U);
  EXPECT_FALSE(f.quotient.is_null());
  EXPECT_EQ(invoke({"validate", qf, "--levels", "tr0,tr1,tr2,tr3"}).code, 0);
}

TEST(Cli, QuotientStopsAtFailedHypothesis) {
  TempDir dir;
  const auto p = dir.file("n4.json"), qf = dir.file("q.json");
  ASSERT_EQ(invoke({"catalog", "nakayama", "--n", "4", "--out", p}).code, 0);
  auto r = invoke({"quotient", p, "--z", "M1", "--d", "none", "--out", qf});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE((r.out + r.err).find("extension-closed"), std::string::npos) << r.out << r.err;
  EXPECT_FALSE(fs::exists(qf));
}

TEST(Cli, ReportsAreDeterministic) {
  TempDir dir;
  const auto p = dir.file("n3.json");
  ASSERT_EQ(invoke({"catalog", "nakayama", "--n", "3", "--out", p}).code, 0);
  const auto a = invoke({"report", p, "--seed", "5"}), b = invoke({"report", p, "--seed", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("| "), std::string::npos);
}
