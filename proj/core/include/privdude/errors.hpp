// Copyright 2026 The PrivDude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDUDE_ERRORS_HPP
#define PRIVDUDE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace privdude {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix shapes disagree. Messages name the offending agent or
// constraint index where one exists.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An object was used after it reached a terminal state (e.g. querying a
// halted sparse vector).
class StateError : public Error {
 public:
  using Error::Error;
};

// An algorithm precondition does not hold for the given instance.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A desk-scale enumeration would exceed its size cap.
class ScaleError : public Error {
 public:
  using Error::Error;
};

// An agent oracle failed; carries the agent index (0 = agent 0).
class OracleError : public Error {
 public:
  OracleError(std::size_t agent_index, const std::string& what)
      : Error("agent " + std::to_string(agent_index) + ": " + what),
        agent_index_(agent_index) {}
  std::size_t agent_index() const { return agent_index_; }

 private:
  std::size_t agent_index_;
};

// An internal consistency assertion failed. Surfaced, never swallowed;
// the CLI maps this to exit code 3.
class InternalError : public Error {
 public:
  using Error::Error;
};

// File system trouble. The CLI maps this to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace privdude

#endif  // PRIVDUDE_ERRORS_HPP
