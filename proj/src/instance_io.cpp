// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#include "corais/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corais {

using nlohmann::json;

std::string save_instance(const Instance& inst) {
  json doc;
  doc["version"] = kInstanceFormatVersion;
  doc["n_edges"] = inst.num_edges();
  doc["region_size"] = inst.region_size;
  doc["c_t"] = inst.transmission_constant;
  json edges = json::array();
  for (const auto& e : inst.edges) {
    edges.push_back({{"coords", {e.coords.x, e.coords.y}},
                     {"phi_coeffs", e.phi_coeffs},
                     {"replicas", e.replica_count}});
  }
  doc["edges"] = std::move(edges);
  json snapshots = json::array();
  for (const auto& s : inst.snapshots) {
    snapshots.push_back({{"c_le", s.c_le},
                         {"c_in", s.c_in},
                         {"t_in", s.t_in},
                         {"b_le", s.b_le},
                         {"b_in", s.b_in}});
  }
  doc["snapshots"] = std::move(snapshots);
  json requests = json::array();
  for (const auto& r : inst.requests) {
    requests.push_back({{"source", r.source_edge},
                        {"predicted", r.predicted_edge},
                        {"f", r.input_size},
                        {"u", r.output_size}});
  }
  doc["requests"] = std::move(requests);
  if (inst.backlogs) {
    json backlogs = json::array();
    for (const auto& eb : *inst.backlogs) {
      json local = json::array();
      for (const auto& it : eb.local) {
        local.push_back({{"f", it.input_size},
                         {"u", it.output_size},
                         {"predicted", it.predicted_edge}});
      }
      json transfer_in = json::array();
      for (const auto& it : eb.transfer_in) {
        transfer_in.push_back({{"f", it.input_size},
                               {"u", it.output_size},
                               {"origin", it.origin_edge.value_or(-1)},
                               {"predicted", it.predicted_edge}});
      }
      backlogs.push_back(
          {{"local", std::move(local)}, {"transfer_in", std::move(transfer_in)}});
    }
    doc["backlogs"] = std::move(backlogs);
  }
  return doc.dump(2);
}

Instance load_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("instance parse error: ") + e.what());
  }
  try {
    const int version = doc.at("version").get<int>();
    if (version != kInstanceFormatVersion) {
      throw Error("unsupported instance format version " +
                  std::to_string(version));
    }
    Instance inst;
    inst.region_size = doc.at("region_size").get<int>();
    inst.transmission_constant = doc.at("c_t").get<double>();
    const int n_edges = doc.at("n_edges").get<int>();
    int id = 0;
    for (const auto& e : doc.at("edges")) {
      EdgeProfile profile;
      profile.id = id++;
      profile.coords.x = e.at("coords").at(0).get<double>();
      profile.coords.y = e.at("coords").at(1).get<double>();
      profile.phi_coeffs = e.at("phi_coeffs").get<std::vector<double>>();
      profile.replica_count = e.at("replicas").get<int>();
      inst.edges.push_back(std::move(profile));
    }
    if (inst.num_edges() != n_edges) {
      throw Error("instance document: n_edges " + std::to_string(n_edges) +
                  " does not match edges array length " +
                  std::to_string(inst.num_edges()));
    }
    for (const auto& s : doc.at("snapshots")) {
      WorkloadSnapshot snap;
      snap.c_le = s.at("c_le").get<double>();
      snap.c_in = s.at("c_in").get<double>();
      snap.t_in = s.at("t_in").get<double>();
      snap.b_le = s.at("b_le").get<double>();
      snap.b_in = s.at("b_in").get<double>();
      inst.snapshots.push_back(snap);
    }
    int rid = 0;
    for (const auto& r : doc.at("requests")) {
      RequestSpec req;
      req.id = rid++;
      req.source_edge = r.at("source").get<int>();
      req.predicted_edge = r.at("predicted").get<int>();
      req.input_size = r.at("f").get<double>();
      req.output_size = r.at("u").get<double>();
      inst.requests.push_back(req);
    }
    if (doc.contains("backlogs")) {
      std::vector<EdgeBacklog> backlogs;
      for (const auto& eb : doc.at("backlogs")) {
        EdgeBacklog bucket;
        for (const auto& it : eb.at("local")) {
          BacklogItem item;
          item.input_size = it.at("f").get<double>();
          item.output_size = it.at("u").get<double>();
          item.predicted_edge = it.at("predicted").get<int>();
          bucket.local.push_back(item);
        }
        for (const auto& it : eb.at("transfer_in")) {
          BacklogItem item;
          item.input_size = it.at("f").get<double>();
          item.output_size = it.at("u").get<double>();
          item.origin_edge = it.at("origin").get<int>();
          item.predicted_edge = it.at("predicted").get<int>();
          bucket.transfer_in.push_back(item);
        }
        backlogs.push_back(std::move(bucket));
      }
      inst.backlogs = std::move(backlogs);
    }
    return inst;
  } catch (const json::exception& e) {
    throw Error(std::string("instance document error: ") + e.what());
  }
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << save_instance(inst) << '\n';
  if (!out) throw Error("failed writing " + path);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

}  // namespace corais
