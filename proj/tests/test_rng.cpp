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

#include <doctest.h>

#include "privdude/rng.hpp"

using namespace privdude;

TEST_CASE("derived streams replay exactly") {
  RngStream a = RngStream::derive(42, {stream_tag::kGradient, 3, 1});
  RngStream b = RngStream::derive(42, {stream_tag::kGradient, 3, 1});
  for (int i = 0; i < 32; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("distinct paths give distinct streams") {
  RngStream a = RngStream::derive(42, {stream_tag::kGradient, 3, 1});
  RngStream b = RngStream::derive(42, {stream_tag::kGradient, 3, 2});
  RngStream c = RngStream::derive(43, {stream_tag::kGradient, 3, 1});
  CHECK(a.next_u64() != b.next_u64());
  RngStream a2 = RngStream::derive(42, {stream_tag::kGradient, 3, 1});
  CHECK(a2.next_u64() != c.next_u64());
}

TEST_CASE("next_unit stays inside the open interval") {
  RngStream s(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.next_unit();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}
