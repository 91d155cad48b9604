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

#include <charconv>
#include <cmath>
#include <limits>

#include "zoo/error.hpp"

namespace zoo::query {

double Number::as_double() const {
  return is_integer() ? static_cast<double>(std::get<std::int64_t>(v_)) : std::get<double>(v_);
}

std::string Number::to_string() const {
  if (is_integer()) return std::to_string(as_integer());
  // Shortest round-trip form; always carries a '.' or exponent.
  return nlohmann::json(std::get<double>(v_)).dump();
}

std::partial_ordering operator<=>(const Number& a, const Number& b) {
  if (a.is_integer() && b.is_integer()) return a.as_integer() <=> b.as_integer();
  return a.as_double() <=> b.as_double();
}

bool Expr::is_arith() const {
  switch (kind) {
    case NodeKind::kNumProp:
    case NodeKind::kConst:
    case NodeKind::kNeg:
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kMod:
      return true;
    default:
      return false;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.name == b.name && a.value.same_representation(b.value) &&
         (a.kind != NodeKind::kCompare || a.rel == b.rel) && a.children == b.children;
}

namespace {

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kAnd,
  kOr,
  kXor,
  kNot,
  kTrueLit,
  kFalseLit,
  kLParen,
  kRParen,
  kPlus,
  kMinus,
  kStar,
  kPercent,
  kRel,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Number number;
  Rel rel = Rel::kEq;
  std::size_t offset = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
  auto is_ident = [&](char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident(s[j])) ++j;
      t.text = std::string(s.substr(i, j - i));
      if (t.text == "and") t.kind = Tok::kAnd;
      else if (t.text == "or") t.kind = Tok::kOr;
      else if (t.text == "xor") t.kind = Tok::kXor;
      else if (t.text == "not") t.kind = Tok::kNot;
      else if (t.text == "true") t.kind = Tok::kTrueLit;
      else if (t.text == "false") t.kind = Tok::kFalseLit;
      else t.kind = Tok::kIdent;
      i = j;
    } else if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      std::size_t j = i;
      bool real = false;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j < s.size() && s[j] == '.') {
        real = true;
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && is_digit(s[k])) {
          real = true;
          j = k;
          while (j < s.size() && is_digit(s[j])) ++j;
        }
      }
      const auto text = s.substr(i, j - i);
      t.kind = Tok::kNumber;
      t.text = std::string(text);
      if (real) {
        t.number = Number(std::stod(t.text));
      } else {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc()) {
          t.number = Number(std::stod(t.text));
        } else {
          t.number = Number(v);
        }
      }
      i = j;
    } else {
      auto two = s.substr(i, 2);
      t.kind = Tok::kRel;
      if (two == "==") {
        t.rel = Rel::kEq;
        i += 2;
      } else if (two == "!=") {
        t.rel = Rel::kNe;
        i += 2;
      } else if (two == "<=") {
        t.rel = Rel::kLe;
        i += 2;
      } else if (two == ">=") {
        t.rel = Rel::kGe;
        i += 2;
      } else if (c == '<') {
        t.rel = Rel::kLt;
        ++i;
      } else if (c == '>') {
        t.rel = Rel::kGt;
        ++i;
      } else {
        switch (c) {
          case '(': t.kind = Tok::kLParen; break;
          case ')': t.kind = Tok::kRParen; break;
          case '+': t.kind = Tok::kPlus; break;
          case '-': t.kind = Tok::kMinus; break;
          case '*': t.kind = Tok::kStar; break;
          case '%': t.kind = Tok::kPercent; break;
          default:
            throw QueryError(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
      }
      t.text = std::string(s.substr(t.offset, i - t.offset));
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.offset = s.size();
  out.push_back(end);
  return out;
}

Expr node(NodeKind kind, std::size_t offset, std::vector<Expr> children = {}) {
  Expr e;
  e.kind = kind;
  e.offset = offset;
  e.children = std::move(children);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Expr whole_query() {
    if (peek().kind == Tok::kEnd) return node(NodeKind::kTrue, 0);
    Expr e = parse_or();
    expect_end();
    return e;
  }

  Expr whole_arith() {
    Expr e = parse_arith();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw QueryError(what + (t.kind == Tok::kEnd ? " at end of input" : ", found '" + t.text + "'"),
                     t.offset);
  }

  void expect_end() {
    if (peek().kind != Tok::kEnd) fail("unexpected token");
  }

  Expr parse_or() {
    Expr left = parse_xor();
    while (peek().kind == Tok::kOr) {
      const auto off = take().offset;
      left = node(NodeKind::kOr, off, {std::move(left), parse_xor()});
    }
    return left;
  }

  Expr parse_xor() {
    Expr left = parse_and();
    while (peek().kind == Tok::kXor) {
      const auto off = take().offset;
      left = node(NodeKind::kXor, off, {std::move(left), parse_and()});
    }
    return left;
  }

  Expr parse_and() {
    Expr left = parse_not();
    while (peek().kind == Tok::kAnd) {
      const auto off = take().offset;
      left = node(NodeKind::kAnd, off, {std::move(left), parse_not()});
    }
    return left;
  }

  Expr parse_not() {
    if (peek().kind == Tok::kNot) {
      const auto off = take().offset;
      return node(NodeKind::kNot, off, {parse_not()});
    }
    return parse_atom();
  }

  Expr parse_atom() {
    const auto& t = peek();
    if (t.kind == Tok::kTrueLit || t.kind == Tok::kFalseLit) {
      take();
      return node(t.kind == Tok::kTrueLit ? NodeKind::kTrue : NodeKind::kFalse, t.offset);
    }
    const std::size_t start = pos_;
    const bool paren = t.kind == Tok::kLParen;
    std::optional<QueryError> arith_error;
    try {
      Expr lhs = parse_arith();
      if (peek().kind == Tok::kRel) {
        const auto& r = take();
        Expr cmp = node(NodeKind::kCompare, r.offset, {std::move(lhs), parse_arith()});
        cmp.rel = r.rel;
        return cmp;
      }
      if (lhs.kind == NodeKind::kNumProp) {
        lhs.kind = NodeKind::kBoolProp;
        return lhs;
      }
      if (!paren) fail("expected comparison operator");
    } catch (const QueryError& e) {
      if (!paren) throw;
      arith_error = e;
    }
    pos_ = start;
    take();  // '('
    Expr inner = parse_or();
    if (peek().kind != Tok::kRParen) fail("expected ')'");
    take();
    return inner;
  }

  Expr parse_arith() {
    Expr left = parse_term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const auto& op = take();
      left = node(op.kind == Tok::kPlus ? NodeKind::kAdd : NodeKind::kSub, op.offset,
                  {std::move(left), parse_term()});
    }
    return left;
  }

  Expr parse_term() {
    Expr left = parse_factor();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kPercent) {
      const auto& op = take();
      left = node(op.kind == Tok::kStar ? NodeKind::kMul : NodeKind::kMod, op.offset,
                  {std::move(left), parse_factor()});
    }
    return left;
  }

  Expr parse_factor() {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::kNumber: {
        take();
        Expr e = node(NodeKind::kConst, t.offset);
        e.value = t.number;
        return e;
      }
      case Tok::kIdent: {
        take();
        Expr e = node(NodeKind::kNumProp, t.offset);
        e.name = t.text;
        return e;
      }
      case Tok::kMinus: {
        take();
        return node(NodeKind::kNeg, t.offset, {parse_factor()});
      }
      case Tok::kLParen: {
        take();
        Expr inner = parse_arith();
        if (peek().kind != Tok::kRParen) fail("expected ')'");
        take();
        return inner;
      }
      default:
        fail("expected number, property or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string_view rel_text(Rel r) {
  switch (r) {
    case Rel::kEq: return "==";
    case Rel::kNe: return "!=";
    case Rel::kLt: return "<";
    case Rel::kLe: return "<=";
    case Rel::kGt: return ">";
    case Rel::kGe: return ">=";
  }
  return "==";
}

bool compare(const Number& a, Rel r, const Number& b) {
  const auto c = a <=> b;
  switch (r) {
    case Rel::kEq: return c == 0;
    case Rel::kNe: return c != 0;
    case Rel::kLt: return c < 0;
    case Rel::kLe: return c <= 0;
    case Rel::kGt: return c > 0;
    case Rel::kGe: return c >= 0;
  }
  return false;
}

std::optional<Number> to_number(const PropertyValue& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return Number(*i);
  if (auto* d = std::get_if<double>(&v)) return Number(*d);
  if (auto* r = std::get_if<Rational>(&v)) {
    if (r->denominator != 0 && r->numerator % r->denominator == 0) {
      return Number(r->numerator / r->denominator);
    }
    return Number(static_cast<double>(r->numerator) / static_cast<double>(r->denominator));
  }
  // The infinite sentinel and non-numeric values compare as UNKNOWN.
  return std::nullopt;
}

std::optional<Number> arith_binary(NodeKind kind, const Number& a, const Number& b) {
  if (a.is_integer() && b.is_integer()) {
    const auto x = a.as_integer();
    const auto y = b.as_integer();
    std::int64_t r = 0;
    switch (kind) {
      case NodeKind::kAdd:
        if (!__builtin_add_overflow(x, y, &r)) return Number(r);
        break;
      case NodeKind::kSub:
        if (!__builtin_sub_overflow(x, y, &r)) return Number(r);
        break;
      case NodeKind::kMul:
        if (!__builtin_mul_overflow(x, y, &r)) return Number(r);
        break;
      case NodeKind::kMod:
        if (y == 0) return std::nullopt;
        if (y == -1) return Number(std::int64_t{0});
        return Number(x % y);
      default:
        break;
    }
  }
  const double x = a.as_double();
  const double y = b.as_double();
  switch (kind) {
    case NodeKind::kAdd: return Number(x + y);
    case NodeKind::kSub: return Number(x - y);
    case NodeKind::kMul: return Number(x * y);
    case NodeKind::kMod:
      if (y == 0) return std::nullopt;
      return Number(std::fmod(x, y));
    default: return std::nullopt;
  }
}

}  // namespace

Expr parse_query(std::string_view text) { return Parser(text).whole_query(); }

Expr parse_arith(std::string_view text) { return Parser(text).whole_arith(); }

Expr parse_key(std::string_view text) {
  try {
    return parse_arith(text);
  } catch (const QueryError&) {
    return parse_query(text);
  }
}

Expr parse_key(std::string_view text, const schema::ClassRegistry& registry,
               std::string_view cls) {
  Expr e = parse_key(text);
  if (e.kind == NodeKind::kNumProp) {
    const auto fields = registry.effective_fields(cls);
    auto it = fields.find(e.name);
    if (it != fields.end() && !it->second.numeric()) e.kind = NodeKind::kBoolProp;
  }
  typecheck(e, registry, cls);
  return e;
}

std::string to_string(const Expr& e) {
  const auto& c = e.children;
  switch (e.kind) {
    case NodeKind::kTrue: return "true";
    case NodeKind::kFalse: return "false";
    case NodeKind::kBoolProp:
    case NodeKind::kNumProp: return e.name;
    case NodeKind::kConst: return e.value.to_string();
    case NodeKind::kCompare:
      return to_string(c[0]) + " " + std::string(rel_text(e.rel)) + " " + to_string(c[1]);
    case NodeKind::kNot: {
      const bool atomic = c[0].kind == NodeKind::kBoolProp || c[0].kind == NodeKind::kTrue ||
                          c[0].kind == NodeKind::kFalse || c[0].kind == NodeKind::kNot;
      return "not " + (atomic ? to_string(c[0]) : "(" + to_string(c[0]) + ")");
    }
    case NodeKind::kAnd: return "(" + to_string(c[0]) + " and " + to_string(c[1]) + ")";
    case NodeKind::kOr: return "(" + to_string(c[0]) + " or " + to_string(c[1]) + ")";
    case NodeKind::kXor: return "(" + to_string(c[0]) + " xor " + to_string(c[1]) + ")";
    case NodeKind::kNeg: return "-(" + to_string(c[0]) + ")";
    case NodeKind::kAdd: return "(" + to_string(c[0]) + " + " + to_string(c[1]) + ")";
    case NodeKind::kSub: return "(" + to_string(c[0]) + " - " + to_string(c[1]) + ")";
    case NodeKind::kMul: return "(" + to_string(c[0]) + " * " + to_string(c[1]) + ")";
    case NodeKind::kMod: return "(" + to_string(c[0]) + " % " + to_string(c[1]) + ")";
  }
  return "";
}

void typecheck(const Expr& e, const schema::ClassRegistry& registry, std::string_view cls) {
  const auto fields = registry.effective_fields(cls);
  const auto& spec = registry.get(cls);
  auto check = [&](auto&& self, const Expr& x) -> void {
    if (x.kind == NodeKind::kBoolProp || x.kind == NodeKind::kNumProp) {
      auto it = fields.find(x.name);
      if (it == fields.end()) {
        throw QueryError("unknown property '" + x.name + "' for type " + spec.type_name,
                         x.offset);
      }
      const auto kind = it->second.kind;
      if (x.kind == NodeKind::kBoolProp && kind != schema::FieldKind::kBoolean &&
          kind != schema::FieldKind::kIndex) {
        throw QueryError("property '" + x.name + "' is not Boolean", x.offset);
      }
      if (x.kind == NodeKind::kNumProp && !it->second.numeric()) {
        throw QueryError("property '" + x.name + "' is not numeric", x.offset);
      }
    }
    for (const auto& c : x.children) self(self, c);
  };
  check(check, e);
}

TriValue tri_not(TriValue a) {
  if (a == TriValue::kUnknown) return a;
  return a == TriValue::kTrue ? TriValue::kFalse : TriValue::kTrue;
}

TriValue tri_and(TriValue a, TriValue b) {
  if (a == TriValue::kFalse || b == TriValue::kFalse) return TriValue::kFalse;
  if (a == TriValue::kUnknown || b == TriValue::kUnknown) return TriValue::kUnknown;
  return TriValue::kTrue;
}

TriValue tri_or(TriValue a, TriValue b) {
  if (a == TriValue::kTrue || b == TriValue::kTrue) return TriValue::kTrue;
  if (a == TriValue::kUnknown || b == TriValue::kUnknown) return TriValue::kUnknown;
  return TriValue::kFalse;
}

TriValue tri_xor(TriValue a, TriValue b) {
  if (a == TriValue::kUnknown || b == TriValue::kUnknown) return TriValue::kUnknown;
  return a != b ? TriValue::kTrue : TriValue::kFalse;
}

std::optional<Number> eval_arith(const Expr& e, const ObjectRecord& rec,
                                 const schema::ClassRegistry& registry, std::string_view cls) {
  switch (e.kind) {
    case NodeKind::kConst:
      return e.value;
    case NodeKind::kNumProp: {
      auto v = schema::lookup(registry, rec, cls, e.name);
      if (!v) return std::nullopt;
      return to_number(*v);
    }
    case NodeKind::kNeg: {
      auto x = eval_arith(e.children[0], rec, registry, cls);
      if (!x) return std::nullopt;
      if (x->is_integer() && x->as_integer() != std::numeric_limits<std::int64_t>::min()) {
        return Number(-x->as_integer());
      }
      return Number(-x->as_double());
    }
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kMod: {
      auto a = eval_arith(e.children[0], rec, registry, cls);
      if (!a) return std::nullopt;
      auto b = eval_arith(e.children[1], rec, registry, cls);
      if (!b) return std::nullopt;
      return arith_binary(e.kind, *a, *b);
    }
    default:
      return std::nullopt;
  }
}

TriValue eval_expr(const Expr& e, const ObjectRecord& rec,
                   const schema::ClassRegistry& registry, std::string_view cls) {
  switch (e.kind) {
    case NodeKind::kTrue:
      return TriValue::kTrue;
    case NodeKind::kFalse:
      return TriValue::kFalse;
    case NodeKind::kBoolProp: {
      auto v = schema::lookup(registry, rec, cls, e.name);
      const auto fields = registry.effective_fields(cls);
      auto f = fields.find(e.name);
      if (f != fields.end() && f->second.kind == schema::FieldKind::kIndex) {
        return v ? TriValue::kTrue : TriValue::kFalse;
      }
      if (!v) return TriValue::kUnknown;
      if (auto* b = std::get_if<bool>(&*v)) return *b ? TriValue::kTrue : TriValue::kFalse;
      return TriValue::kUnknown;
    }
    case NodeKind::kCompare: {
      auto a = eval_arith(e.children[0], rec, registry, cls);
      auto b = eval_arith(e.children[1], rec, registry, cls);
      if (!a || !b) return TriValue::kUnknown;
      const auto c = *a <=> *b;
      if (c == std::partial_ordering::unordered) return TriValue::kUnknown;
      return compare(*a, e.rel, *b) ? TriValue::kTrue : TriValue::kFalse;
    }
    case NodeKind::kNot:
      return tri_not(eval_expr(e.children[0], rec, registry, cls));
    case NodeKind::kAnd:
      return tri_and(eval_expr(e.children[0], rec, registry, cls),
                     eval_expr(e.children[1], rec, registry, cls));
    case NodeKind::kOr:
      return tri_or(eval_expr(e.children[0], rec, registry, cls),
                    eval_expr(e.children[1], rec, registry, cls));
    case NodeKind::kXor:
      return tri_xor(eval_expr(e.children[0], rec, registry, cls),
                     eval_expr(e.children[1], rec, registry, cls));
    default:
      return TriValue::kUnknown;
  }
}

std::optional<Number> eval_key(const Expr& e, const ObjectRecord& rec,
                               const schema::ClassRegistry& registry, std::string_view cls) {
  if (e.is_arith()) return eval_arith(e, rec, registry, cls);
  switch (eval_expr(e, rec, registry, cls)) {
    case TriValue::kTrue: return Number(std::int64_t{1});
    case TriValue::kFalse: return Number(std::int64_t{0});
    default: return std::nullopt;
  }
}

}  // namespace zoo::query
