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

#include "zoo/cid.hpp"

#include <regex>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zoo/error.hpp"
#include "zoo/fixtures.hpp"

namespace zoo::cid {
namespace {

const std::string kPetersen(fixtures::kPetersenGuid);
const std::string kCounting =
    "123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef0";

// Independent checksum: XOR of nibble values, written out digit by digit.
char OracleChecksum(const std::string& hex) {
  unsigned x = 0;
  for (char c : hex) x ^= std::stoul(std::string(1, c), nullptr, 16);
  const char digits[] = "0123456789abcdef";
  return digits[x];
}

CidError::Kind KindOf(std::string_view text) {
  try {
    parse_cid(text);
  } catch (const CidError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return CidError::Kind::kMalformed;
}

TEST(CidTest, Goldens) {
  EXPECT_EQ(cid_from_guid(kPetersen, 12).render(), "Zc74c-6028-a25a+8");
  EXPECT_EQ(cid_from_guid(kCounting, 12).render(), "Z1234-5678-9abc+c");
  EXPECT_EQ(cid_from_guid(kPetersen, 16).render(), "Zc74c-6028-a25a-65a6+" +
                                                       std::string(1, OracleChecksum("c74c6028a25a65a6")));
  EXPECT_EQ(cid_from_guid(kPetersen).render(), fixtures::kPetersenCid);
}

TEST(CidTest, ChecksumMatchesOracle) {
  testing::Rng rng(5);
  std::uniform_int_distribution<int> nibble(0, 15);
  for (int t = 0; t < 100; ++t) {
    std::string hex;
    for (int i = 0; i < 64; ++i) hex.push_back("0123456789abcdef"[nibble(rng)]);
    for (std::size_t len = 12; len <= 64; len += 4) {
      const Cid c = cid_from_guid(hex, len);
      EXPECT_EQ(c.prefix, hex.substr(0, len));
      EXPECT_EQ(c.checksum, OracleChecksum(c.prefix));
      EXPECT_EQ(parse_cid(c.render()), c);
    }
  }
}

TEST(CidTest, ParseAcceptsCaseAndHyphenVariants) {
  const Cid want = parse_cid("Zc74c-6028-a25a+8");
  EXPECT_EQ(parse_cid("zC74C-6028-A25A+8"), want);
  EXPECT_EQ(parse_cid("Zc74c6028a25a+8"), want);
  EXPECT_EQ(parse_cid("Zc74c6028-a25a+8"), want);
  EXPECT_EQ(want.prefix, "c74c6028a25a");
}

TEST(CidTest, ParseErrors) {
  EXPECT_EQ(KindOf("Zc74c-6028-a25a+9"), CidError::Kind::kChecksumMismatch);
  EXPECT_EQ(KindOf("c74c-6028-a25a+8"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Zc74c-6028-a25a"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Zc74c-6028-a25a+"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Zc74c-6028-a25g+8"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Zc74c--6028-a25a+8"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Z-c74c-6028-a25a+8"), CidError::Kind::kMalformed);
  EXPECT_EQ(KindOf("Zc74c-6028+4"), CidError::Kind::kBadLength);
  EXPECT_EQ(KindOf("Zc74c-6028-a25a-6+1"), CidError::Kind::kBadLength);
  EXPECT_THROW(cid_from_guid(kPetersen, 10), CidError);
  EXPECT_THROW(cid_from_guid(kPetersen, 68), CidError);
  EXPECT_THROW(cid_from_guid("xyz", 12), CidError);
}

TEST(CidTest, EverySingleDigitChangeIsDetected) {
  const std::string good = "Zc74c-6028-a25a+8";
  for (std::size_t i = 1; i < good.size(); ++i) {
    if (good[i] == '-' || good[i] == '+') continue;
    for (char c : std::string("0123456789abcdef")) {
      if (c == good[i]) continue;
      std::string bad = good;
      bad[i] = c;
      EXPECT_EQ(KindOf(bad), CidError::Kind::kChecksumMismatch) << bad;
    }
  }
}

TEST(CidTest, ResolvePrefixLength) {
  const std::string a = kPetersen;
  std::string b = a;
  b[20] = b[20] == '0' ? '1' : '0';  // shares 20 digits with a
  std::string c = a;
  c[0] = c[0] == '0' ? '1' : '0';
  const std::vector<std::string> alone = {a, c};
  EXPECT_EQ(resolve_prefix_length(a, alone), 12u);
  const std::vector<std::string> close = {a, b, c};
  const std::size_t len = resolve_prefix_length(a, close);
  EXPECT_EQ(len, 24u);
  // Minimality: the next shorter admissible prefix is shared with b.
  EXPECT_EQ(a.substr(0, len - 4), b.substr(0, len - 4));
  EXPECT_NE(a.substr(0, len), b.substr(0, len));

  std::string d = a;
  d[13] = d[13] == '0' ? '1' : '0';
  const std::vector<std::string> sixteen = {a, d};
  EXPECT_EQ(resolve_prefix_length(a, sixteen), 16u);

  const std::vector<std::string> dup = {a, a};
  EXPECT_THROW(resolve_prefix_length(a, dup), Error);
  const std::vector<std::string> missing = {c};
  EXPECT_THROW(resolve_prefix_length(a, missing), Error);
}

TEST(CidTest, RenderedFormMatchesPattern) {
  const std::regex shape("Z[0-9a-f]{4}(-[0-9a-f]{4}){2,15}\\+[0-9a-f]");
  for (std::size_t len = 12; len <= 64; len += 4) {
    EXPECT_TRUE(std::regex_match(cid_from_guid(kCounting, len).render(), shape));
  }
  EXPECT_TRUE(looks_like_cid("Zc74c-6028-a25a+8"));
  EXPECT_FALSE(looks_like_cid(kPetersen));
}

}  // namespace
}  // namespace zoo::cid
