#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spheretik/graph.hpp"
#include "spheretik/pauli.hpp"
#include "spheretik/rng.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik::testing {

inline double inf() { return std::numeric_limits<double>::infinity(); }

inline Node node(NodeId id, std::optional<Vec3> y, double w) {
  Node n;
  n.id = std::move(id);
  n.y = y;
  n.w = w;
  return n;
}

/// A free node pinned between known neighbors; the staple small instance.
inline Problem star_problem(const Vec3& y1, const Vec3& y2, double lambda = 1.0) {
  std::vector<Node> nodes;
  nodes.push_back(node("c", std::nullopt, 0.0));
  nodes.push_back(node("p1", y1, inf()));
  nodes.push_back(node("p2", y2, inf()));
  std::vector<Edge> edges{{"c", "p1", lambda}, {"c", "p2", lambda}};
  return build_problem(std::move(nodes), std::move(edges));
}

inline HermitianMat6 random_hermitian(Rng& rng, double scale = 1.0) {
  HermitianMat6 h;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      if (i == j) {
        h.set(i, j, {scale * rng.uniform(-1.0, 1.0), 0.0});
      } else {
        h.set(i, j, {scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0)});
      }
    }
  }
  return h;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() / ("spheretik_" + tag);
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

}  // namespace spheretik::testing
