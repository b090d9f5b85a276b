#include "spheretik/io.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "spheretik/error.hpp"

namespace spheretik {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  }
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
  }
}

Vec3 parse_vec3(const ordered_json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number()) {
    throw Error(ErrorCode::ParseError, context + ": expected an array of 3 numbers");
  }
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ordered_json vec3_to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

}  // namespace

Problem load_problem(const std::string& path) {
  const ordered_json j = parse_file(path);
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
    throw Error(ErrorCode::ParseError, "'" + path + "': expected an object with a 'nodes' array");
  }

  std::vector<Node> nodes;
  for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
    const auto& jn = j["nodes"][i];
    const std::string where = "node #" + std::to_string(i);
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string()) {
      throw Error(ErrorCode::ParseError, where + ": expected an object with a string 'id'");
    }
    Node node;
    node.id = jn["id"].get<std::string>();
    if (jn.contains("y") && !jn["y"].is_null()) {
      node.y = parse_vec3(jn["y"], "node '" + node.id + "': field 'y'");
    }
    if (jn.contains("w")) {
      const auto& jw = jn["w"];
      if (jw.is_string()) {
        if (jw.get<std::string>() != "inf") {
          throw Error(ErrorCode::ParseError,
                      "node '" + node.id + "': field 'w' must be a number or \"inf\"");
        }
        node.w = std::numeric_limits<double>::infinity();
      } else if (jw.is_number()) {
        node.w = jw.get<double>();
      } else {
        throw Error(ErrorCode::ParseError,
                    "node '" + node.id + "': field 'w' must be a number or \"inf\"");
      }
    }
    nodes.push_back(std::move(node));
  }

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) {
      throw Error(ErrorCode::ParseError, "'" + path + "': 'edges' must be an array");
    }
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& je = j["edges"][i];
      const std::string where = "edge #" + std::to_string(i);
      if (!je.is_object() || !je.contains("u") || !je["u"].is_string() || !je.contains("v") ||
          !je["v"].is_string()) {
        throw Error(ErrorCode::ParseError, where + ": expected an object with string 'u' and 'v'");
      }
      Edge edge;
      edge.u = je["u"].get<std::string>();
      edge.v = je["v"].get<std::string>();
      if (je.contains("lambda")) {
        if (!je["lambda"].is_number()) {
          throw Error(ErrorCode::ParseError, where + ": field 'lambda' must be a number");
        }
        edge.lambda = je["lambda"].get<double>();
      }
      edges.push_back(std::move(edge));
    }
  }

  return build_problem(std::move(nodes), std::move(edges));
}

void save_problem(const std::string& path, const Problem& problem) {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const Node& node : problem.nodes()) {
    ordered_json jn;
    jn["id"] = node.id;
    if (node.y) {
      jn["y"] = vec3_to_json(*node.y);
    }
    if (node.w == std::numeric_limits<double>::infinity()) {
      jn["w"] = "inf";
    } else {
      jn["w"] = node.w;
    }
    j["nodes"].push_back(std::move(jn));
  }
  j["edges"] = ordered_json::array();
  for (const Edge& edge : problem.edges()) {
    j["edges"].push_back({{"u", edge.u}, {"v", edge.v}, {"lambda", edge.lambda}});
  }
  write_file(path, j);
}

void save_solution(const std::string& path, const SolutionOutput& out) {
  ordered_json j;
  j["x"] = ordered_json::object();
  for (const auto& [id, v] : out.x) {
    j["x"][id] = vec3_to_json(v.vec());
  }
  j["objective_original"] = out.objective_original;
  if (out.objective_relaxed) {
    j["objective_relaxed"] = *out.objective_relaxed;
  }
  if (out.tight) {
    j["tight"] = *out.tight;
  }
  if (out.gap) {
    j["gap"] = *out.gap;
  }
  j["converged"] = out.converged;
  j["iterations"] = out.iterations;
  if (!out.per_edge.empty()) {
    j["per_edge"] = ordered_json::array();
    for (const EdgeCheck& check : out.per_edge) {
      ordered_json je;
      je["u"] = check.u;
      je["v"] = check.v;
      je["eigenvalues"] = check.eigenvalues;
      je["d_defect"] = check.d_defect;
      j["per_edge"].push_back(std::move(je));
    }
  }
  j["diagnostics"] = out.diagnostics;
  write_file(path, j);
}

void save_signal(const std::string& path, const std::map<NodeId, UnitVec3>& x) {
  ordered_json j;
  j["x"] = ordered_json::object();
  for (const auto& [id, v] : x) {
    j["x"][id] = vec3_to_json(v.vec());
  }
  write_file(path, j);
}

std::map<NodeId, UnitVec3> load_signal(const std::string& path) {
  const ordered_json j = parse_file(path);
  if (!j.is_object() || !j.contains("x") || !j["x"].is_object()) {
    throw Error(ErrorCode::ParseError, "'" + path + "': expected an object with an 'x' map");
  }
  std::map<NodeId, UnitVec3> x;
  for (const auto& [id, jv] : j["x"].items()) {
    const Vec3 v = parse_vec3(jv, "node '" + id + "': field 'x'");
    try {
      x.emplace(id, normalize(v));
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, "node '" + id + "': vector is degenerate");
    }
  }
  return x;
}

}  // namespace spheretik
