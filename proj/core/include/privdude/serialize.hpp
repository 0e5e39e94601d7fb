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

#ifndef PRIVDUDE_SERIALIZE_HPP
#define PRIVDUDE_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include "privdude/problems.hpp"

namespace privdude {

// UTF-8 JSON instance files:
//   {kind, n, k, b, metadata{sigma,tau,width,V,C_inf,C_1,L?}, payload{...},
//    seed}
// Doubles are emitted in shortest-round-trip decimal form, so
// load(save(x)) reproduces every number bit-exactly.

struct StoredInstance {
  Instance instance;
  std::uint64_t seed = 0;
};

std::string instance_to_json(const Instance& instance, std::uint64_t seed);
StoredInstance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, std::uint64_t seed,
                   const std::string& path);
StoredInstance load_instance(const std::string& path);

// Whole-file helpers shared by the CLI.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace privdude

#endif  // PRIVDUDE_SERIALIZE_HPP
