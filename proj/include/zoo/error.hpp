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

#include <stdexcept>
#include <string>

namespace zoo {

// Base class for every domain failure raised by the library. The CLI maps
// these to exit status 1; anything else is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class CidError : public Error {
 public:
  enum class Kind { kMalformed, kBadLength, kChecksumMismatch };
  CidError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class RepoError : public Error {
 public:
  enum class Kind { kNotFound, kDanglingLink, kMalformed, kIo, kInvalid };
  RepoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Syntax or type error in a query; offset is a byte position in the source.
class QueryError : public Error {
 public:
  QueryError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)),
        message_(what),
        offset_(offset) {}
  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

class StoreError : public Error {
 public:
  enum class Kind { kUnknownClass, kUnknownCollection, kNotFound, kInvalid, kBuild };
  StoreError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace zoo
