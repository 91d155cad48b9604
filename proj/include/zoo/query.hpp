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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zoo/record.hpp"
#include "zoo/schema.hpp"

// Boolean/numeric query language over object properties.
//
//   query   = or ;           or  = xor {"or" xor} ;   xor = and {"xor" and} ;
//   and     = not {"and" not} ;  not = {"not"} atom ;
//   atom    = "(" or ")" | compare | boolprop | "true" | "false" ;
//   compare = arith rel arith ;  rel = "==" | "!=" | "<" | "<=" | ">" | ">=" ;
//   arith   = term {("+"|"-") term} ;  term = factor {("*"|"%") factor} ;
//   factor  = number | propname | "-" factor | "(" arith ")" ;
//
// Absent properties make atoms UNKNOWN (Kleene logic); a record matches only
// when the whole expression is TRUE.
namespace zoo::query {

class Number {
 public:
  Number() = default;
  Number(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Number(double v) : v_(v) {}        // NOLINT(google-explicit-constructor)

  bool is_integer() const { return std::holds_alternative<std::int64_t>(v_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(v_); }
  double as_double() const;
  std::string to_string() const;

  friend std::partial_ordering operator<=>(const Number& a, const Number& b);
  friend bool operator==(const Number& a, const Number& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }
  // Exact representation equality, used for structural comparison of ASTs.
  bool same_representation(const Number& o) const { return v_ == o.v_; }

 private:
  std::variant<std::int64_t, double> v_{std::int64_t{0}};
};

enum class NodeKind {
  kTrue,
  kFalse,
  kBoolProp,
  kCompare,
  kNot,
  kAnd,
  kOr,
  kXor,
  kNumProp,
  kConst,
  kNeg,
  kAdd,
  kSub,
  kMul,
  kMod,
};

enum class Rel { kEq, kNe, kLt, kLe, kGt, kGe };

struct Expr {
  NodeKind kind = NodeKind::kTrue;
  std::string name;  // property name for kBoolProp / kNumProp
  Number value;      // kConst
  Rel rel = Rel::kEq;
  std::vector<Expr> children;
  std::size_t offset = 0;  // source position, ignored by operator==

  bool is_arith() const;
  friend bool operator==(const Expr& a, const Expr& b);
};

// Empty or blank text is the constant true. Throws QueryError.
Expr parse_query(std::string_view text);
Expr parse_arith(std::string_view text);
// orderby/groupby key: an arithmetic expression if the text is one,
// otherwise a Boolean query.
Expr parse_key(std::string_view text);
// Same, resolved against cls: a bare name of a non-numeric field becomes a
// Boolean property. Typechecks the result.
Expr parse_key(std::string_view text, const schema::ClassRegistry& registry,
               std::string_view cls);

// Round-trippable text: parse_query(to_string(e)) == e.
std::string to_string(const Expr& e);

// Resolves property names against the effective fields of cls. Throws
// QueryError at the offending name.
void typecheck(const Expr& e, const schema::ClassRegistry& registry, std::string_view cls);

enum class TriValue { kFalse, kUnknown, kTrue };

TriValue eval_expr(const Expr& e, const ObjectRecord& rec,
                   const schema::ClassRegistry& registry, std::string_view cls);
std::optional<Number> eval_arith(const Expr& e, const ObjectRecord& rec,
                                 const schema::ClassRegistry& registry, std::string_view cls);
// Sort/group key: arithmetic value, or 0/1 for a Boolean expression;
// nullopt when absent or UNKNOWN.
std::optional<Number> eval_key(const Expr& e, const ObjectRecord& rec,
                               const schema::ClassRegistry& registry, std::string_view cls);

TriValue tri_not(TriValue a);
TriValue tri_and(TriValue a, TriValue b);
TriValue tri_or(TriValue a, TriValue b);
TriValue tri_xor(TriValue a, TriValue b);

}  // namespace zoo::query
