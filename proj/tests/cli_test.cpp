// Copyright 2026 The Zoo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zoo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "zoo/fixtures.hpp"
#include "zoo/repo.hpp"

namespace zoo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out, err;
};

Result Zoo(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

// A private copy of the fixture corpus with specs/ next to repo/.
class CliWorkspace : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::copy(testing::source_data_dir(), dir_.path() / "data",
             fs::copy_options::recursive | fs::copy_options::copy_symlinks);
  }
  std::string Store(const std::string& name = "data") const {
    return (dir_.path() / name / "repo").string();
  }
  Result In(const std::string& name, std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), {"--store", Store(name), "--actor", "tester"});
    return Zoo(args, input);
  }

  testing::TempDir dir_;
};

TEST(CliTest, Canon) {
  const auto r = Zoo({"canon", "--guid", "IheA@GUAo"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 17), std::string(fixtures::kPetersenSparse6) + " ");
  EXPECT_NE(r.out.find("zoo_ir_sparse6:ca5ebcae"), std::string::npos);
  const auto stdin_run = Zoo({"canon"}, ":IeIKqPD?hgAH?G~\nA_\n");
  EXPECT_EQ(stdin_run.out, std::string(fixtures::kPetersenSparse6) + "\n:An\n");
  EXPECT_EQ(Zoo({"canon", "--format", "graph6", "A_"}).out, "A_\n");
  EXPECT_EQ(Zoo({"canon", "A"}).code, kExitDomainError);
}

TEST(CliTest, Cid) {
  EXPECT_EQ(Zoo({"cid", std::string(fixtures::kPetersenGuid)}).out, "Zc74c-6028-a25a+8\n");
  EXPECT_EQ(Zoo({"cid", "sha256_sparse6:" + std::string(fixtures::kPetersenGuid), "--length", "16"}).out,
            "Zc74c-6028-a25a-65a6+7\n");
  EXPECT_EQ(Zoo({"cid", "zc74c6028a25a+8"}).out, "Zc74c-6028-a25a+8\n");
  const auto bad = Zoo({"cid", "Zc74c-6028-a25a+9"});
  EXPECT_EQ(bad.code, kExitDomainError);
  EXPECT_NE(bad.err.find("checksum mismatch"), std::string::npos);
}

TEST(CliTest, Props) {
  const auto r = Zoo({"props", "--certificate", ":Sc@ABbbaa``eFdGeHdIfHgI_LM_NO_JK"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["order"], 20);
  EXPECT_EQ(j["girth"], 6);
  EXPECT_EQ(j["partial_cube_embedding"]["dim"], 5);
  const json petersen = json::parse(Zoo({"props", ":IeIKqPD?hgAH?G~"}).out);
  EXPECT_EQ(petersen["is_strongly_regular"], true);
  EXPECT_EQ(petersen["canonical"], fixtures::kPetersenSparse6);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Zoo({}).code, kExitUsage);
  EXPECT_EQ(Zoo({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Zoo({"cid"}).code, kExitUsage);
  EXPECT_EQ(Zoo({"query", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(Zoo({"--help"}).code, kExitOk);
}

TEST_F(CliWorkspace, ValidateAndQuery) {
  const auto v = In("data", {"validate"});
  EXPECT_EQ(v.code, kExitOk) << v.err;
  EXPECT_EQ(v.out, "ok: 14 objects, 1 links, 2 datasets\n");
  const auto q = In("data", {"query", "is_partial_cube and not is_prism", "--type", "cvt_graph", "--orderby", "order",
                             "--format", "sparse6-lines"});
  EXPECT_EQ(std::count(q.out.begin(), q.out.end(), '\n'), 4);
  const auto one = In("data", {"query", "girth == 7 and diameter == 4", "--orderby", "order", "--one", "--offset", "1"});
  EXPECT_EQ(json::parse(one.out)["aliases"][0], "Coxeter graph");
  const auto count = In("data", {"count", "--groupby", "girth"});
  EXPECT_EQ(json::parse(count.out)["groups"]["4"], 8);
  const auto err = In("data", {"query", "girth >"});
  EXPECT_EQ(err.code, kExitDomainError);
  EXPECT_NE(err.err.find("offset 7"), std::string::npos);
  EXPECT_EQ(In("data", {"query", "--type", "polytope"}).code, kExitDomainError);
}

TEST_F(CliWorkspace, ValidateReportsDamage) {
  fs::remove(fs::path(Store()) / repo::object_path("sha256_sparse6", fixtures::kPetersenGuid));
  const auto v = In("data", {"validate"});
  EXPECT_EQ(v.code, kExitDomainError);
  EXPECT_NE(v.err.find("dangling"), std::string::npos);
}

TEST_F(CliWorkspace, IngestExportApply) {
  fs::copy(dir_.path() / "data", dir_.path() / "upstream",
           fs::copy_options::recursive | fs::copy_options::copy_symlinks);
  const fs::path input = dir_.path() / "new.g6";
  // K4, Petersen (already present) and K3,3 (already present as M3).
  std::ofstream(input) << "C~\n:IeIKqPD?hgAH?G~\nEFz_\n";
  const auto ingest = In("data", {"ingest", input.string(), "--collection", "extra", "--alias", "batch"});
  ASSERT_EQ(ingest.code, kExitOk) << ingest.err;
  EXPECT_EQ(ingest.out.rfind("ingested 1 new, 2 existing", 0), 0u) << ingest.out;
  EXPECT_EQ(In("data", {"validate"}).code, kExitOk);
  EXPECT_EQ(json::parse(In("data", {"count", "--collection", "extra"}).out)["count"], 3);

  const auto set = In("data", {"set-property", "Zc74c-6028-a25a+8", "cvt_graph", "is_spx", "true"});
  EXPECT_EQ(set.out, "changed\n");
  EXPECT_EQ(In("data", {"set-property", "Zc74c-6028-a25a+8", "cvt_graph", "is_spx", "true"}).out, "unchanged\n");
  EXPECT_EQ(In("data", {"set-property", "Zc74c-6028-a25a+8", "graph", "valency", "4"}).code, kExitDomainError);
  EXPECT_EQ(In("data", {"add-collection", std::string(fixtures::kPetersenGuid), "famous", "--index", "1,2"}).out,
            "changed\n");

  const fs::path contribution = dir_.path() / "changes.json";
  ASSERT_EQ(In("data", {"export-changes", "-o", contribution.string()}).code, kExitOk);
  const json c = json::parse(repo::read_file(contribution));
  EXPECT_GE(c["journal"].size(), 4u);

  const auto applied = In("upstream", {"apply-changes", contribution.string()});
  ASSERT_EQ(applied.code, kExitOk) << applied.err;
  EXPECT_EQ(In("upstream", {"apply-changes", contribution.string()}).out.rfind("applied 0 of", 0), 0u);
  EXPECT_EQ(In("upstream", {"validate"}).code, kExitOk);
  for (const char* q : {"", "is_prism", "girth == 3"}) {
    EXPECT_EQ(In("upstream", {"query", q, "--orderby", "order"}).out,
              In("data", {"query", q, "--orderby", "order"}).out);
  }
  EXPECT_EQ(In("upstream", {"query", "--collection", "famous", "--format", "sparse6-lines"}).out,
            std::string(fixtures::kPetersenSparse6) + "\n");

  ASSERT_EQ(In("data", {"export-changes", "--clear", "-o", contribution.string()}).code, kExitOk);
  EXPECT_TRUE(json::parse(In("data", {"export-changes"}).out)["journal"].empty());
}

TEST_F(CliWorkspace, ApplyRejectsGarbage) {
  EXPECT_EQ(In("data", {"apply-changes", "-"}, "not json").code, kExitDomainError);
  EXPECT_EQ(In("data", {"apply-changes", "-"}, "{}").code, kExitDomainError);
  EXPECT_EQ(In("data", {"apply-changes", (dir_.path() / "missing.json").string()}).code, kExitDomainError);
}

TEST_F(CliWorkspace, GenerateFixturesMatchesCommittedData) {
  const fs::path out = dir_.path() / "regen";
  const auto r = Zoo({"generate-fixtures", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(testing::tree_snapshot(out / "specs"), testing::tree_snapshot(dir_.path() / "data" / "specs"));
}

}  // namespace
}  // namespace zoo::cli
