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

#include "zoo/query.hpp"

#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zoo/error.hpp"
#include "zoo/fixtures.hpp"
#include "zoo/repo.hpp"

namespace zoo::query {
namespace {

using ::zoo::testing::Rng;

Expr Bool(const std::string& name) { return {NodeKind::kBoolProp, name, {}, Rel::kEq, {}, 0}; }
Expr Num(const std::string& name) { return {NodeKind::kNumProp, name, {}, Rel::kEq, {}, 0}; }
Expr Const(Number v) { return {NodeKind::kConst, "", v, Rel::kEq, {}, 0}; }
Expr Node(NodeKind k, std::vector<Expr> children) { return {k, "", {}, Rel::kEq, std::move(children), 0}; }
Expr Cmp(Expr a, Rel r, Expr b) { return {NodeKind::kCompare, "", {}, r, {std::move(a), std::move(b)}, 0}; }

const schema::ClassRegistry& Registry() {
  static const schema::ClassRegistry reg = fixtures::registry();
  return reg;
}

const std::vector<ObjectRecord>& Records() {
  static const std::vector<ObjectRecord> recs = [] {
    std::vector<ObjectRecord> out;
    for (auto& o : repo::scan(testing::source_data_dir() / "repo").objects) out.push_back(o.record);
    return out;
  }();
  return recs;
}

const ObjectRecord& Petersen() {
  for (const auto& r : Records()) {
    if (r.aliases.count("Petersen graph")) return r;
  }
  throw std::logic_error("no Petersen record");
}

std::set<std::string> Matches(const Expr& e, const std::string& cls = "graph") {
  std::set<std::string> out;
  for (const auto& r : Records()) {
    if (eval_expr(e, r, Registry(), cls) == TriValue::kTrue) out.insert(r.data);
  }
  return out;
}

TriValue Eval(std::string_view text, const ObjectRecord& rec, const std::string& cls = "graph") {
  return eval_expr(parse_query(text), rec, Registry(), cls);
}

testing::ExprVocabulary GraphVocabulary() {
  return {{"is_bipartite", "is_hamiltonian", "is_partial_cube", "is_prism", "is_eulerian",
           "is_vertex_transitive", "is_distance_regular", "is_split"},
          {"order", "size", "girth", "diameter", "odd_girth", "clique_number", "chromatic_index",
           "valency", "triangles_count"}};
}

TEST(QueryParseTest, WorkedShapes) {
  EXPECT_EQ(parse_query("is_partial_cube and not is_prism"),
            Node(NodeKind::kAnd, {Bool("is_partial_cube"), Node(NodeKind::kNot, {Bool("is_prism")})}));
  EXPECT_EQ(parse_query("girth == 7 and diameter == 4"),
            Node(NodeKind::kAnd, {Cmp(Num("girth"), Rel::kEq, Const(std::int64_t{7})),
                                  Cmp(Num("diameter"), Rel::kEq, Const(std::int64_t{4}))}));
  EXPECT_EQ(parse_query("size - order >= 5"),
            Cmp(Node(NodeKind::kSub, {Num("size"), Num("order")}), Rel::kGe, Const(std::int64_t{5})));
}

TEST(QueryParseTest, Precedence) {
  // not > and > xor > or
  EXPECT_EQ(parse_query("a or b xor c and not d"),
            Node(NodeKind::kOr, {Bool("a"), Node(NodeKind::kXor, {Bool("b"), Node(NodeKind::kAnd, {Bool("c"), Node(NodeKind::kNot, {Bool("d")})})})}));
  EXPECT_EQ(parse_query("a and b or c"),
            Node(NodeKind::kOr, {Node(NodeKind::kAnd, {Bool("a"), Bool("b")}), Bool("c")}));
  EXPECT_EQ(parse_query("a or b or c"),
            Node(NodeKind::kOr, {Node(NodeKind::kOr, {Bool("a"), Bool("b")}), Bool("c")}));
  EXPECT_EQ(parse_query("not not a"), Node(NodeKind::kNot, {Node(NodeKind::kNot, {Bool("a")})}));
  EXPECT_EQ(parse_arith("a + b * c % 2 - -d"),
            Node(NodeKind::kSub,
                 {Node(NodeKind::kAdd, {Num("a"), Node(NodeKind::kMod, {Node(NodeKind::kMul, {Num("b"), Num("c")}), Const(std::int64_t{2})})}),
                  Node(NodeKind::kNeg, {Num("d")})}));
  EXPECT_EQ(parse_query("(a + 1) * 2 < b"),
            Cmp(Node(NodeKind::kMul, {Node(NodeKind::kAdd, {Num("a"), Const(std::int64_t{1})}), Const(std::int64_t{2})}),
                Rel::kLt, Num("b")));
  EXPECT_EQ(parse_query("(a or b) and c"),
            Node(NodeKind::kAnd, {Node(NodeKind::kOr, {Bool("a"), Bool("b")}), Bool("c")}));
}

TEST(QueryParseTest, LiteralsAndBlank) {
  EXPECT_EQ(parse_query(""), Node(NodeKind::kTrue, {}));
  EXPECT_EQ(parse_query("   "), Node(NodeKind::kTrue, {}));
  EXPECT_EQ(parse_query("false"), Node(NodeKind::kFalse, {}));
  EXPECT_EQ(parse_query("x > 2.5"), Cmp(Num("x"), Rel::kGt, Const(2.5)));
  EXPECT_EQ(parse_query("x != 1e3"), Cmp(Num("x"), Rel::kNe, Const(1000.0)));
  EXPECT_EQ(parse_key("order"), Num("order"));
  EXPECT_EQ(parse_key("is_prism"), Num("is_prism"));
  EXPECT_EQ(parse_key("is_prism", Registry(), "CVTGraph"), Bool("is_prism"));
  EXPECT_EQ(parse_key("order", Registry(), "CVTGraph"), Num("order"));
  EXPECT_THROW(parse_key("vt_index + 1", Registry(), "CVTGraph"), QueryError);
  EXPECT_EQ(parse_key("order % 3"), Node(NodeKind::kMod, {Num("order"), Const(std::int64_t{3})}));
  EXPECT_EQ(parse_key("is_prism and is_bipartite"),
            Node(NodeKind::kAnd, {Bool("is_prism"), Bool("is_bipartite")}));
}

TEST(QueryParseTest, Offsets) {
  const Expr e = parse_query("a and  girth >= 3");
  EXPECT_EQ(e.children[0].offset, 0u);
  EXPECT_EQ(e.children[1].children[0].offset, 7u);
  EXPECT_EQ(e.children[1].children[1].offset, 16u);
}

std::size_t ErrorOffset(std::string_view text) {
  try {
    parse_query(text);
  } catch (const QueryError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "parsed: " << text;
  return 0;
}

TEST(QueryParseTest, SyntaxErrors) {
  EXPECT_EQ(ErrorOffset("girth =="), 8u);
  EXPECT_EQ(ErrorOffset("girth = 5"), 6u);
  EXPECT_EQ(ErrorOffset("a and"), 5u);
  EXPECT_EQ(ErrorOffset("(a or b"), 7u);
  EXPECT_EQ(ErrorOffset("a b"), 2u);
  EXPECT_EQ(ErrorOffset("a $ b"), 2u);
  EXPECT_EQ(ErrorOffset("Order > 3"), 0u);
  EXPECT_EQ(ErrorOffset("1 + 2"), 5u);
  EXPECT_EQ(ErrorOffset("a < b < c"), 6u);
  EXPECT_THROW(parse_arith("a and b"), QueryError);
  try {
    parse_query("girth > ");
  } catch (const QueryError& e) {
    EXPECT_NE(e.message().find("end of input"), std::string::npos);
  }
}

TEST(QueryParseTest, PrintParseRoundTrip) {
  Rng rng(77);
  const auto vocab = GraphVocabulary();
  for (int t = 0; t < 200; ++t) {
    const std::string text = testing::random_query(rng, vocab, 3);
    const Expr e = parse_query(text);
    EXPECT_EQ(parse_query(to_string(e)), e) << text << " printed as " << to_string(e);
    const Expr a = parse_arith(testing::random_arith(rng, vocab, 3));
    EXPECT_EQ(parse_arith(to_string(a)), a);
  }
  EXPECT_EQ(parse_arith(to_string(Const(0.1))), Const(0.1));
  EXPECT_EQ(parse_arith(to_string(Const(1e300))), Const(1e300));
}

int Level(TriValue v) { return v == TriValue::kFalse ? 0 : v == TriValue::kUnknown ? 1 : 2; }

TEST(QueryEvalTest, KleeneTables) {
  const TriValue all[] = {TriValue::kFalse, TriValue::kUnknown, TriValue::kTrue};
  for (TriValue a : all) {
    EXPECT_EQ(Level(tri_not(a)), 2 - Level(a));
    for (TriValue b : all) {
      EXPECT_EQ(Level(tri_and(a, b)), std::min(Level(a), Level(b)));
      EXPECT_EQ(Level(tri_or(a, b)), std::max(Level(a), Level(b)));
      const int x = (Level(a) == 1 || Level(b) == 1) ? 1 : (Level(a) != Level(b) ? 2 : 0);
      EXPECT_EQ(Level(tri_xor(a, b)), x);
    }
  }
}

TEST(QueryEvalTest, PetersenExamples) {
  const auto& p = Petersen();
  EXPECT_EQ(Eval("girth == 5 and not is_bipartite", p), TriValue::kTrue);
  EXPECT_EQ(Eval("is_hamiltonian", p), TriValue::kFalse);
  EXPECT_EQ(Eval("size - order == 5", p), TriValue::kTrue);
  EXPECT_EQ(Eval("is_prism", p, "cvt_graph"), TriValue::kFalse);
  EXPECT_EQ(Eval("is_bipartite xor is_strongly_regular", p), TriValue::kTrue);
  EXPECT_EQ(Eval("true", p), TriValue::kTrue);
  EXPECT_EQ(eval_arith(parse_arith("size - order"), p, Registry(), "graph"), Number(std::int64_t{5}));
  EXPECT_EQ(eval_arith(parse_arith("order - order"), p, Registry(), "graph"), Number(std::int64_t{0}));
}

TEST(QueryEvalTest, AbsentAndInfinite) {
  ObjectRecord rec = Petersen();
  rec.classes["graph"].erase("girth");
  rec.classes["graph"].erase("diameter");
  EXPECT_EQ(Eval("girth == 5 or order == 10", rec), TriValue::kTrue);
  EXPECT_EQ(Eval("girth == 5 and order == 10", rec), TriValue::kUnknown);
  EXPECT_EQ(Eval("girth == 5 and order == 11", rec), TriValue::kFalse);
  EXPECT_EQ(Eval("not (girth == 5)", rec), TriValue::kUnknown);
  EXPECT_EQ(eval_arith(parse_arith("diameter + 1"), rec, Registry(), "graph"), std::nullopt);

  rec.classes["graph"]["girth"] = Infinite{};
  EXPECT_EQ(Eval("girth > 3", rec), TriValue::kUnknown);
  EXPECT_EQ(Eval("girth != 3", rec), TriValue::kUnknown);
  EXPECT_EQ(eval_key(parse_key("girth"), rec, Registry(), "graph"), std::nullopt);

  rec.classes["graph"].erase("is_hamiltonian");
  EXPECT_EQ(Eval("is_hamiltonian", rec), TriValue::kUnknown);
  EXPECT_EQ(Eval("is_hamiltonian or is_strongly_regular", rec), TriValue::kTrue);
}

TEST(QueryEvalTest, Arithmetic) {
  const auto& p = Petersen();
  auto value = [&](std::string_view text) { return eval_arith(parse_arith(text), p, Registry(), "graph"); };
  EXPECT_EQ(value("order + 2 * 3"), Number(std::int64_t{16}));
  EXPECT_EQ(value("-order % 3"), Number(std::int64_t{-1}));
  EXPECT_EQ(value("size % 0"), std::nullopt);
  EXPECT_EQ(value("order * 0.5"), Number(5.0));
  EXPECT_EQ(value("9223372036854775807 + order"), Number(9223372036854775807.0 + 10.0));
  EXPECT_EQ(value("5"), Number(std::int64_t{5}));
  EXPECT_EQ(Eval("order * 0.5 == 5", p), TriValue::kTrue);
  EXPECT_EQ(Eval("order % 0 == 0", p), TriValue::kUnknown);
  EXPECT_EQ(eval_key(parse_key("is_strongly_regular", Registry(), "graph"), p, Registry(), "graph"), Number(std::int64_t{1}));
  EXPECT_EQ(eval_key(parse_key("is_bipartite", Registry(), "graph"), p, Registry(), "graph"), Number(std::int64_t{0}));
}

TEST(QueryEvalTest, IndexPropertyTestsPresence) {
  const auto& p = Petersen();
  EXPECT_EQ(Eval("cvt_index", p, "cvt_graph"), TriValue::kTrue);
  ObjectRecord rec = p;
  rec.classes["cvt_graph"].erase("cvt_index");
  EXPECT_EQ(Eval("cvt_index", rec, "cvt_graph"), TriValue::kFalse);
}

std::size_t TypeErrorOffset(std::string_view text, std::string_view cls) {
  try {
    typecheck(parse_query(text), Registry(), cls);
  } catch (const QueryError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "typechecked: " << text;
  return 0;
}

TEST(QueryTypecheckTest, NamesResolveAgainstEffectiveFields) {
  EXPECT_NO_THROW(typecheck(parse_query("girth > 3 and is_prism"), Registry(), "cvt_graph"));
  EXPECT_NO_THROW(typecheck(parse_query("vt_index"), Registry(), "VTGraph"));
  EXPECT_EQ(TypeErrorOffset("girth > 3 and is_prism", "graph"), 14u);
  EXPECT_EQ(TypeErrorOffset("vt_index", "cvt_graph"), 0u);
  EXPECT_EQ(TypeErrorOffset("order and is_bipartite", "graph"), 0u);
  EXPECT_EQ(TypeErrorOffset("girth > is_bipartite", "graph"), 8u);
  EXPECT_EQ(TypeErrorOffset("girth > cvt_index", "cvt_graph"), 8u);
  EXPECT_EQ(TypeErrorOffset("colour == 2", "graph"), 0u);
  EXPECT_EQ(TypeErrorOffset("zooid == 2", "graph"), 0u);
}

TEST(QueryTypecheckTest, AcceptedExpressionsUseOnlyEffectiveFields) {
  Rng rng(8);
  const auto fields = Registry().effective_fields("graph");
  testing::ExprVocabulary vocab = GraphVocabulary();
  vocab.booleans.push_back("vt_index");  // only on a sibling class
  vocab.numerics.push_back("foster_index");
  int accepted = 0;
  for (int t = 0; t < 200; ++t) {
    const Expr e = parse_query(testing::random_query(rng, vocab, 2));
    bool ok = true;
    try {
      typecheck(e, Registry(), "graph");
    } catch (const QueryError&) {
      ok = false;
    }
    std::vector<std::string> names;
    auto collect = [&](auto&& self, const Expr& x) -> void {
      if (x.kind == NodeKind::kBoolProp || x.kind == NodeKind::kNumProp) names.push_back(x.name);
      for (const auto& c : x.children) self(self, c);
    };
    collect(collect, e);
    bool all_known = true;
    for (const auto& n : names) all_known = all_known && fields.count(n);
    EXPECT_EQ(ok, all_known) << to_string(e);
    accepted += ok;
  }
  EXPECT_GT(accepted, 20);
}

TEST(QueryEvalTest, DeMorganAndDoubleNegationOnFixtures) {
  Rng rng(9);
  const auto vocab = GraphVocabulary();
  for (int t = 0; t < 60; ++t) {
    const Expr a = parse_query(testing::random_query(rng, vocab, 2));
    const Expr b = parse_query(testing::random_query(rng, vocab, 2));
    const Expr lhs = Node(NodeKind::kNot, {Node(NodeKind::kAnd, {a, b})});
    const Expr rhs = Node(NodeKind::kOr, {Node(NodeKind::kNot, {a}), Node(NodeKind::kNot, {b})});
    EXPECT_EQ(Matches(lhs), Matches(rhs)) << to_string(lhs);
    const Expr lhs2 = Node(NodeKind::kNot, {Node(NodeKind::kOr, {a, b})});
    const Expr rhs2 = Node(NodeKind::kAnd, {Node(NodeKind::kNot, {a}), Node(NodeKind::kNot, {b})});
    EXPECT_EQ(Matches(lhs2), Matches(rhs2));
    EXPECT_EQ(Matches(Node(NodeKind::kNot, {Node(NodeKind::kNot, {a})})), Matches(a));
  }
}

TEST(QueryEvalTest, ConjunctionsAreIntersections) {
  // Every website-style filter list is an And-chain of single predicates.
  const std::vector<std::string> filters = {
      "is_bipartite", "not is_bipartite", "is_partial_cube", "not is_prism",
      "girth == 6",   "diameter <= 3",    "order > 12",      "is_hamiltonian"};
  for (std::uint32_t mask = 1; mask < (1u << filters.size()); ++mask) {
    std::string text;
    std::set<std::string> want;
    bool first = true;
    for (std::size_t i = 0; i < filters.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      const auto single = Matches(parse_query(filters[i]));
      if (first) {
        want = single;
      } else {
        std::set<std::string> both;
        for (const auto& x : want) {
          if (single.count(x)) both.insert(x);
        }
        want = both;
      }
      text += (first ? "" : " and ") + filters[i];
      first = false;
    }
    EXPECT_EQ(Matches(parse_query(text)), want) << text;
  }
}

}  // namespace
}  // namespace zoo::query
