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

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace zoo {

// Value of an invariant that does not exist as a finite number: the girth of
// an acyclic graph, the diameter of a disconnected one. Distinct from an
// absent (not yet computed) property.
struct Infinite {
  friend bool operator==(Infinite, Infinite) = default;
};

struct Rational {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

using IndexTuple = std::vector<std::int64_t>;

using PropertyValue = std::variant<bool, std::int64_t, double, Rational,
                                   IndexTuple, std::string, Infinite>;

// Absent properties are simply not present in the map.
using PropertyBag = std::map<std::string, PropertyValue>;

nlohmann::json to_json(const PropertyValue& v);
PropertyValue value_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PropertyBag& bag);
PropertyBag bag_from_json(const nlohmann::json& j);

// Human-readable rendering used by CSV and diagnostics.
std::string to_display(const PropertyValue& v);

}  // namespace zoo
