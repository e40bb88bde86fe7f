#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "motion.hpp"
#include "oct_model.hpp"

namespace bricard {

using json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// sorted keys, 17 significant digits, two-space indent
inline void write_canonical(std::ostream& os, const json& j, int indent = 0) {
  std::string pad(indent, ' '), inner(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write_canonical(os, it.value(), indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write_canonical(os, j[k], indent + 2);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << inner;
        write_canonical(os, j[k], indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

inline std::string canonical_json(const json& j) {
  std::ostringstream os;
  write_canonical(os, j);
  os << "\n";
  return os.str();
}

inline OctLabeling labeling_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("labeling must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "lengths") throw SchemaError("unknown key '" + it.key() + "'");
  if (!j.contains("lengths") || !j["lengths"].is_object()) throw SchemaError("missing object 'lengths'");
  std::map<std::string, double> m;
  for (auto it = j["lengths"].begin(); it != j["lengths"].end(); ++it) {
    try {
      edge_from_key(it.key());
    } catch (const DomainError&) {
      throw SchemaError("unknown edge key '" + it.key() + "'");
    }
    if (!it.value().is_number()) throw SchemaError("length of " + it.key() + " is not a number");
    double v = it.value().get<double>();
    if (!(v > 0)) throw SchemaError("length of " + it.key() + " must be positive");
    m[it.key()] = v;
  }
  if (m.size() != 12) throw SchemaError("expected 12 edge lengths, got " + std::to_string(m.size()));
  try {
    return OctLabeling::from_map(m);
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
}

inline json labeling_to_json(const OctLabeling& lab) {
  json l = json::object();
  for (const auto& [k, v] : lab.to_map()) l[k] = v;
  return json{{"lengths", l}};
}

inline OctLabeling read_labeling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return labeling_from_json(j);
}

inline std::string trajectory_header() {
  std::string h = "step,s";
  for (int v = 1; v <= 6; ++v)
    for (char c : {'x', 'y', 'z'}) h += std::string(",") + c + std::to_string(v);
  return h + ",residual,flexdim,flat";
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << trajectory_header() << "\n";
  for (std::size_t k = 0; k < t.samples.size(); ++k) {
    const auto& s = t.samples[k];
    os << k << "," << format_double(s.s);
    for (const auto& p : s.r.points())
      for (int c = 0; c < 3; ++c) os << "," << format_double(p(c));
    os << "," << format_double(s.residual) << "," << s.flex_dim << "," << (s.flat ? 1 : 0) << "\n";
  }
}

// lengths come from `lab` when given, else from the first row
inline Trajectory read_trajectory_csv(std::istream& in, const std::optional<OctLabeling>& lab = std::nullopt) {
  std::string line;
  if (!std::getline(in, line) || line != trajectory_header()) throw SchemaError("unexpected trajectory header");
  std::vector<TrajectorySample> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 23) throw SchemaError("line " + std::to_string(lineno) + ": expected 23 columns");
    try {
      TrajectorySample s;
      s.s = std::stod(f[1]);
      std::array<Vec3, 6> p;
      for (int v = 0; v < 6; ++v) p[v] = Vec3(std::stod(f[2 + 3 * v]), std::stod(f[3 + 3 * v]), std::stod(f[4 + 3 * v]));
      s.r = Realization(p);
      s.residual = std::stod(f[20]);
      s.flex_dim = std::stoi(f[21]);
      s.flat = std::stoi(f[22]) != 0;
      rows.push_back(s);
    } catch (const std::logic_error&) {
      throw SchemaError("line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (rows.empty()) throw SchemaError("trajectory has no samples");
  OctLabeling l = lab ? *lab : rows.front().r.measured_labeling();
  Trajectory t{l, std::move(rows), TraceStatus::Complete, 0, {}};
  return t;
}

}  // namespace bricard
