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

#include "privdude/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "privdude/errors.hpp"

namespace privdude {

namespace {

using nlohmann::json;

json metadata_to_json(const ProgramMetadata& meta) {
  json j;
  j["sigma"] = meta.sigma;
  j["tau"] = meta.tau;
  j["width"] = meta.width;
  j["V"] = meta.V;
  j["C_inf"] = meta.C_inf;
  j["C_1"] = meta.C_1;
  if (meta.min_vertex_contribution) {
    j["L"] = *meta.min_vertex_contribution;
  }
  return j;
}

struct InstanceSerializer {
  std::uint64_t seed;

  json operator()(const KnapsackInstance& inst) const {
    json j = shell(inst.to_program(), ProblemKind::kKnapsack, inst.n());
    j["payload"] = {{"values", inst.values}, {"weights", inst.weights}};
    return j;
  }
  json operator()(const DDemandInstance& inst) const {
    json j = shell(inst.to_program(), ProblemKind::kDDemand, inst.n());
    j["payload"] = {{"goods", inst.goods},
                    {"bundle_cap", inst.bundle_cap},
                    {"bundle_values", inst.bundle_values}};
    return j;
  }
  json operator()(const FlowInstance& inst) const {
    json j = shell(inst.to_program(), ProblemKind::kFlow, inst.n());
    json edges = json::array();
    for (const auto& e : inst.edges) edges.push_back({e.from, e.to});
    j["payload"] = {{"nodes", inst.nodes},
                    {"edges", edges},
                    {"sources", inst.sources},
                    {"sinks", inst.sinks},
                    {"edge_costs", inst.edge_costs},
                    {"path_length_bound", inst.path_length_bound}};
    return j;
  }
  json operator()(const ScheduleInstance& inst) const {
    json j = shell(inst.to_program(), ProblemKind::kSchedule, inst.n());
    j["payload"] = {{"intervals", inst.intervals},
                    {"slots", inst.slots},
                    {"slot_values", inst.slot_values},
                    {"demands", inst.demands},
                    {"total_cap", inst.total_cap}};
    return j;
  }
  json operator()(const SharedResourceInstance& inst) const {
    json j = shell(inst.to_program(), ProblemKind::kSharedResource, inst.n());
    j["payload"] = {{"projects", inst.projects},
                    {"resources", inst.resources},
                    {"max_project_resources", inst.max_project_resources},
                    {"resource_costs", inst.resource_costs},
                    {"project_resources", inst.project_resources},
                    {"project_values", inst.project_values}};
    return j;
  }

  json shell(const SeparableProgram& program, ProblemKind kind,
             std::size_t n) const {
    json j;
    j["kind"] = kind_name(kind);
    j["n"] = n;
    j["k"] = program.k();
    j["b"] = program.b();
    j["metadata"] = metadata_to_json(program.metadata());
    j["seed"] = seed;
    return j;
  }
};

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) {
    throw IoError(std::string("instance file missing field: ") + name);
  }
  return j.at(name).get<T>();
}

Instance parse_instance(const json& j) {
  const ProblemKind kind = kind_from_name(field<std::string>(j, "kind"));
  const json payload = field<json>(j, "payload");
  const auto b = field<std::vector<double>>(j, "b");
  switch (kind) {
    case ProblemKind::kKnapsack: {
      KnapsackInstance inst;
      inst.values = field<std::vector<double>>(payload, "values");
      inst.weights = field<std::vector<std::vector<double>>>(payload,
                                                             "weights");
      inst.capacities = b;
      return inst;
    }
    case ProblemKind::kDDemand: {
      DDemandInstance inst;
      inst.goods = field<std::size_t>(payload, "goods");
      inst.bundle_cap = field<std::size_t>(payload, "bundle_cap");
      inst.bundle_values =
          field<std::vector<std::vector<double>>>(payload, "bundle_values");
      inst.supplies = b;
      return inst;
    }
    case ProblemKind::kFlow: {
      FlowInstance inst;
      inst.nodes = field<std::size_t>(payload, "nodes");
      for (const auto& e :
           field<std::vector<std::vector<std::size_t>>>(payload, "edges")) {
        if (e.size() != 2) throw IoError("flow edge must be a [from, to] pair");
        inst.edges.push_back({e[0], e[1]});
      }
      inst.sources = field<std::vector<std::size_t>>(payload, "sources");
      inst.sinks = field<std::vector<std::size_t>>(payload, "sinks");
      inst.edge_costs =
          field<std::vector<std::vector<double>>>(payload, "edge_costs");
      inst.path_length_bound =
          field<std::size_t>(payload, "path_length_bound");
      inst.capacities = b;
      return inst;
    }
    case ProblemKind::kSchedule: {
      ScheduleInstance inst;
      inst.intervals = field<std::size_t>(payload, "intervals");
      inst.slots = field<std::size_t>(payload, "slots");
      inst.slot_values =
          field<std::vector<std::vector<double>>>(payload, "slot_values");
      inst.demands =
          field<std::vector<std::vector<double>>>(payload, "demands");
      inst.total_cap = field<double>(payload, "total_cap");
      inst.slot_caps = b;
      return inst;
    }
    case ProblemKind::kSharedResource: {
      SharedResourceInstance inst;
      inst.projects = field<std::size_t>(payload, "projects");
      inst.resources = field<std::size_t>(payload, "resources");
      inst.max_project_resources =
          field<std::size_t>(payload, "max_project_resources");
      inst.resource_costs =
          field<std::vector<double>>(payload, "resource_costs");
      inst.project_resources = field<std::vector<std::vector<std::size_t>>>(
          payload, "project_resources");
      inst.project_values =
          field<std::vector<std::vector<double>>>(payload, "project_values");
      return inst;
    }
  }
  throw IoError("unknown instance kind");
}

}  // namespace

std::string instance_to_json(const Instance& instance, std::uint64_t seed) {
  const json j = std::visit(InstanceSerializer{seed}, instance);
  return j.dump(2) + "\n";
}

StoredInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("instance parse failure: ") + e.what());
  }
  StoredInstance stored;
  try {
    stored.instance = parse_instance(j);
    stored.seed = field<std::uint64_t>(j, "seed");
  } catch (const json::exception& e) {
    throw IoError(std::string("instance field failure: ") + e.what());
  }
  return stored;
}

void save_instance(const Instance& instance, std::uint64_t seed,
                   const std::string& path) {
  write_text_file(path, instance_to_json(instance, seed));
}

StoredInstance load_instance(const std::string& path) {
  return instance_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << contents;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace privdude
