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

#include "zoo/schema.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zoo/error.hpp"
#include "zoo/fixtures.hpp"
#include "zoo/repo.hpp"

namespace zoo::schema {
namespace {

using nlohmann::json;

std::map<std::string, json> MinimalSpecs() {
  return {
      {"ZooEntity", {{"fields", {{"zooid", "Integer"}}}, {"primary_key", "zooid"}}},
      {"ZooThing",
       {{"fields", {{"zooid", "ZooEntity"}, {"n", "Integer"}, {"flag", "bool"}}},
        {"primary_key", "zooid"}}},
  };
}

ObjectRecord Petersen() {
  return repo::read_object(testing::source_data_dir() / "repo", "sha256_sparse6",
                           fixtures::kPetersenGuid);
}

std::vector<Issue::Kind> Kinds(const std::vector<Issue>& issues) {
  std::vector<Issue::Kind> out;
  for (const auto& i : issues) out.push_back(i.kind);
  return out;
}

TEST(SchemaTest, TypeNames) {
  EXPECT_EQ(type_name_for("ZooGraph"), "graph");
  EXPECT_EQ(type_name_for("CVTGraph"), "cvt_graph");
  EXPECT_EQ(type_name_for("VTGraph"), "vt_graph");
  EXPECT_EQ(type_name_for("ZooManiplex"), "maniplex");
  EXPECT_EQ(type_name_for("ZooEntity"), "entity");
}

TEST(SchemaTest, FixtureChainAndFields) {
  const ClassRegistry reg = fixtures::registry();
  EXPECT_EQ(reg.root(), "ZooEntity");
  std::vector<std::string> names;
  for (const auto* s : reg.chain("cvt_graph")) names.push_back(s->name);
  EXPECT_EQ(names, (std::vector<std::string>{"CVTGraph", "ZooGraph", "ZooObject", "ZooEntity"}));
  EXPECT_TRUE(reg.is_a("CVTGraph", "graph"));
  EXPECT_FALSE(reg.is_a("CVTGraph", "VTGraph"));
  EXPECT_FALSE(reg.is_a("graph", "cvt_graph"));

  EXPECT_EQ(reg.get("ZooEntity").fields,
            (FieldMap{{"zooid", FieldType{FieldKind::kInteger, ""}}}));
  const FieldMap object = reg.get("ZooObject").fields;
  EXPECT_EQ(object.at("alias").kind, FieldKind::kSet);
  EXPECT_EQ(object.at("unique_id").kind, FieldKind::kDict);
  EXPECT_EQ(object.at("zooid"), (FieldType{FieldKind::kClassRef, "ZooEntity"}));

  const FieldMap cvt = reg.effective_fields("CVTGraph");
  EXPECT_EQ(cvt.at("cvt_index").kind, FieldKind::kIndex);
  EXPECT_EQ(cvt.at("girth").kind, FieldKind::kInteger);
  EXPECT_EQ(cvt.at("is_bipartite").kind, FieldKind::kBoolean);
  EXPECT_EQ(cvt.at("zooid"), (FieldType{FieldKind::kClassRef, "ZooGraph"}));
  EXPECT_FALSE(cvt.count("vt_index"));

  const ClassSpec& spec = reg.get("cvt_graph");
  EXPECT_EQ(spec.condition.at("valency"), PropertyValue(std::int64_t{3}));
  EXPECT_EQ(spec.parent, "ZooGraph");
  EXPECT_THROW(reg.get("NoSuchClass"), SchemaError);
}

TEST(SchemaTest, LoadIsIndependentOfFileOrder) {
  const ClassRegistry want = fixtures::registry();
  testing::TempDir dir;
  auto specs = fixtures::class_specs();
  std::vector<std::string> names;
  for (const auto& [name, j] : specs) names.push_back(name);
  std::reverse(names.begin(), names.end());
  for (const auto& name : names) {
    std::ofstream(dir.path() / (name + ".json")) << specs.at(name).dump();
  }
  EXPECT_EQ(ClassRegistry::load(dir.path()), want);
  EXPECT_EQ(ClassRegistry::load(testing::source_data_dir() / "specs"), want);
}

TEST(SchemaTest, RejectsBadSpecs) {
  auto expect_bad = [](std::map<std::string, json> specs, const char* why) {
    EXPECT_THROW(ClassRegistry::from_specs(specs), SchemaError) << why;
  };
  EXPECT_NO_THROW(ClassRegistry::from_specs(MinimalSpecs()));

  auto s = MinimalSpecs();
  s["ZooThing"].erase("fields");
  expect_bad(s, "missing fields");
  s = MinimalSpecs();
  s["ZooThing"].erase("primary_key");
  expect_bad(s, "missing primary key");
  s = MinimalSpecs();
  s["ZooThing"]["primary_key"] = "n2";
  expect_bad(s, "primary key not a field");
  s = MinimalSpecs();
  s["ZooThing"]["fields"]["n"] = "Quaternion";
  expect_bad(s, "unknown field type");
  s = MinimalSpecs();
  s["ZooThing"]["fields"]["zooid"] = "ZooMissing";
  expect_bad(s, "unknown parent");
  s = MinimalSpecs();
  s["ZooOther"] = {{"fields", {{"zooid", "Integer"}}}, {"primary_key", "zooid"}};
  expect_bad(s, "two roots");
  s = MinimalSpecs();
  s["ZooEntity"]["fields"]["zooid"] = "ZooThing";
  expect_bad(s, "cycle");
  s = MinimalSpecs();
  s["ZooThing"]["condition"] = {{"missing", 1}};
  expect_bad(s, "condition on unknown field");
  s = MinimalSpecs();
  s["ZooThing"]["default"] = {{"flag", 3}};
  expect_bad(s, "default of the wrong type");
  s = MinimalSpecs();
  s["ZooThing"]["extra"] = 1;
  expect_bad(s, "unexpected key");
  s = MinimalSpecs();
  s["Thing"] = s["ZooThing"];
  expect_bad(s, "type name clash");
  s = MinimalSpecs();
  s["ZooThing"]["fields"]["n"] = 5;
  expect_bad(s, "non-string field type");
}

TEST(SchemaTest, ValueMatching) {
  const FieldType integer{FieldKind::kInteger, ""};
  const FieldType real{FieldKind::kReal, ""};
  const FieldType index{FieldKind::kIndex, ""};
  EXPECT_TRUE(value_matches(std::int64_t{3}, integer));
  EXPECT_TRUE(value_matches(Infinite{}, integer));
  EXPECT_FALSE(value_matches(true, integer));
  EXPECT_FALSE(value_matches(std::string("3"), integer));
  EXPECT_TRUE(value_matches(2.5, real));
  EXPECT_TRUE(value_matches(IndexTuple{10, 3}, index));
  EXPECT_FALSE(value_matches(std::int64_t{10}, index));
}

TEST(SchemaTest, LookupFollowsChainThenDefaults) {
  const ClassRegistry reg = fixtures::registry();
  ObjectRecord rec = Petersen();
  EXPECT_EQ(lookup(reg, rec, "CVTGraph", "girth"), PropertyValue(std::int64_t{5}));
  EXPECT_EQ(lookup(reg, rec, "VTGraph", "vt_index"), PropertyValue(IndexTuple{10, 5}));
  EXPECT_EQ(lookup(reg, rec, "CVTGraph", "vt_index"), std::nullopt);
  rec.classes["graph"].erase("valency");
  EXPECT_EQ(lookup(reg, rec, "CVTGraph", "valency"), PropertyValue(std::int64_t{3}));
  EXPECT_EQ(lookup(reg, rec, "graph", "valency"), std::nullopt);
  EXPECT_TRUE(record_is_a(reg, rec, "graph"));
  EXPECT_TRUE(record_is_a(reg, rec, "ZooEntity"));
  EXPECT_FALSE(record_is_a(reg, rec, "maniplex"));
}

TEST(SchemaTest, ValidateRecord) {
  const ClassRegistry reg = fixtures::registry();
  EXPECT_TRUE(validate_record(reg, Petersen()).empty());

  ObjectRecord rec = Petersen();
  rec.classes["graph"]["valency"] = std::int64_t{4};
  auto issues = validate_record(reg, rec);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].kind, Issue::Kind::kConditionViolation);
  EXPECT_EQ(issues[0].class_name, "cvt_graph");
  EXPECT_EQ(issues[0].property, "valency");

  rec = Petersen();
  rec.classes["graph"]["colour"] = std::int64_t{1};
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kUnknownField});
  rec = Petersen();
  rec.classes["cvt_graph"]["girth"] = std::int64_t{5};  // declared on graph, not cvt_graph
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kUnknownField});
  rec = Petersen();
  rec.classes["graph"]["girth"] = std::string("five");
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kTypeMismatch});
  rec = Petersen();
  rec.classes["polytope"] = {};
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kUnknownClass});
  rec = Petersen();
  rec.guids.clear();
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kNoGuid});
  rec = Petersen();
  rec.guids["sha256_sparse6"] = "c74c";
  EXPECT_EQ(Kinds(validate_record(reg, rec)), std::vector{Issue::Kind::kNoGuid});
}

}  // namespace
}  // namespace zoo::schema
