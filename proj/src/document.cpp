#include "dyadica/document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dyadica {

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
  return doc;
}

SpaceDocument parse_space_json(const nlohmann::json& doc, const std::string& name) {
  try {
    const auto& points = doc.at("points");
    if (!points.is_array() || points.empty()) {
      throw MalformedInput(name + ": points must be a nonempty array");
    }
    const int n = static_cast<int>(points.size());
    for (int i = 0; i < n; ++i) {
      if (points[static_cast<std::size_t>(i)].get<int>() != i) {
        throw MalformedInput(name + ": points must be 0..n-1 in order");
      }
    }

    SpaceDocument out;
    out.raw.n = n;
    out.description = name + " (n=" + std::to_string(n) + ")";
    out.raw.dist.assign(static_cast<std::size_t>(n) * n, 0.0);

    const auto& metric = doc.at("metric");
    const std::string type = metric.at("type").get<std::string>();
    if (type == "matrix") {
      const auto& values = metric.at("values");
      if (static_cast<int>(values.size()) != n) {
        throw MalformedInput(name + ": metric matrix must have n rows");
      }
      for (int i = 0; i < n; ++i) {
        const auto& row = values[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != n) {
          throw MalformedInput(name + ": metric matrix must be n x n");
        }
        for (int j = 0; j < n; ++j) {
          out.raw.dist[static_cast<std::size_t>(i) * n + j] =
              row[static_cast<std::size_t>(j)].get<double>();
        }
      }
    } else if (type == "euclidean") {
      const auto& coords = metric.at("coords");
      if (static_cast<int>(coords.size()) != n) {
        throw MalformedInput(name + ": coords must have one row per point");
      }
      std::vector<std::vector<double>> pts;
      for (const auto& row : coords) pts.push_back(row.get<std::vector<double>>());
      for (int i = 0; i < n; ++i) {
        if (pts[static_cast<std::size_t>(i)].size() != pts[0].size()) {
          throw MalformedInput(name + ": coord rows must share a dimension");
        }
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (std::size_t d = 0; d < pts[0].size(); ++d) {
            double diff = pts[static_cast<std::size_t>(i)][d] - pts[static_cast<std::size_t>(j)][d];
            acc += diff * diff;
          }
          out.raw.dist[static_cast<std::size_t>(i) * n + j] = std::sqrt(acc);
        }
      }
    } else {
      throw MalformedInput(name + ": metric type must be matrix or euclidean");
    }

    out.raw.mass = doc.at("measure").get<Values>();
    if (static_cast<int>(out.raw.mass.size()) != n) {
      throw MalformedInput(name + ": measure must list one mass per point");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(name + ": " + e.what());
  }
}

}  // namespace

SpaceDocument parse_space_document(const std::string& text, const std::string& name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(name + ": " + e.what());
  }
  return parse_space_json(doc, name);
}

SpaceDocument load_space_document(const std::string& path) {
  return parse_space_json(load_json(path), path);
}

Values load_values(const std::string& path, int n) {
  nlohmann::json doc = load_json(path);
  if (!doc.is_array()) throw MalformedInput(path + ": expected a JSON array");
  Values out;
  try {
    out = doc.get<Values>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
  if (static_cast<int>(out.size()) != n) {
    throw MalformedInput(path + ": expected " + std::to_string(n) + " values, got " +
                         std::to_string(out.size()));
  }
  return out;
}

}  // namespace dyadica
