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

#include "zoo/value.hpp"

#include <sstream>

#include "zoo/error.hpp"

namespace zoo {

namespace {
constexpr const char* kInfinite = "inf";
}

nlohmann::json to_json(const PropertyValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Infinite>) {
          return kInfinite;
        } else if constexpr (std::is_same_v<T, Rational>) {
          return {{"denominator", x.denominator}, {"numerator", x.numerator}};
        } else {
          return x;
        }
      },
      v);
}

PropertyValue value_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == kInfinite) return Infinite{};
    return s;
  }
  if (j.is_array()) {
    IndexTuple t;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw Error("index tuple entries must be integers");
      t.push_back(e.get<std::int64_t>());
    }
    return t;
  }
  if (j.is_object() && j.contains("numerator") && j.contains("denominator") &&
      j.size() == 2) {
    Rational r{j["numerator"].get<std::int64_t>(), j["denominator"].get<std::int64_t>()};
    if (r.denominator == 0) throw Error("rational with zero denominator");
    return r;
  }
  throw Error("unsupported property value: " + j.dump());
}

nlohmann::json to_json(const PropertyBag& bag) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : bag) j[k] = to_json(v);
  return j;
}

PropertyBag bag_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("property bag must be a JSON object");
  PropertyBag bag;
  for (const auto& [k, v] : j.items()) bag.emplace(k, value_from_json(v));
  return bag;
}

std::string to_display(const PropertyValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return nlohmann::json(x).dump();
        } else if constexpr (std::is_same_v<T, Rational>) {
          return std::to_string(x.numerator) + "/" + std::to_string(x.denominator);
        } else if constexpr (std::is_same_v<T, IndexTuple>) {
          std::ostringstream os;
          os << '(';
          for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
          os << ')';
          return os.str();
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          return kInfinite;
        }
      },
      v);
}

}  // namespace zoo
