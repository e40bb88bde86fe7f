#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace bricard {

inline constexpr double kDefaultTol = 1e-9;

using Vec3 = Eigen::Vector3d;

class VertexId {
 public:
  explicit VertexId(int v) : v_(v) {
    if (v < 1 || v > 6) throw DomainError("vertex id out of range: " + std::to_string(v));
  }
  int value() const { return v_; }
  operator int() const { return v_; }
  friend bool operator==(VertexId, VertexId) = default;
  friend auto operator<=>(VertexId, VertexId) = default;

 private:
  int v_;
};

// 1<->2, 3<->4, 5<->6
inline int partner(int v) { return (v % 2) ? v + 1 : v - 1; }

inline bool is_edge_pair(int i, int j) {
  return i >= 1 && i <= 6 && j >= 1 && j <= 6 && i != j && partner(i) != j;
}

struct Edge {
  int a = 1, b = 3;  // a < b

  Edge() = default;
  Edge(int i, int j) : a(std::min(i, j)), b(std::max(i, j)) {
    if (!is_edge_pair(i, j))
      throw DomainError("not an octahedron edge: " + std::to_string(i) + "," + std::to_string(j));
  }

  // position in the canonical order 13 14 15 16 23 24 25 26 35 36 45 46
  int index() const {
    if (a <= 2) return (a - 1) * 4 + (b - 3);
    return 8 + (a - 3) * 2 + (b - 5);
  }
  bool contains(int v) const { return a == v || b == v; }
  int other(int v) const { return v == a ? b : a; }
  std::string key() const { return std::to_string(a) + "-" + std::to_string(b); }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline const std::array<Edge, 12>& all_edges() {
  static const std::array<Edge, 12> edges = {
      Edge{1, 3}, Edge{1, 4}, Edge{1, 5}, Edge{1, 6}, Edge{2, 3}, Edge{2, 4},
      Edge{2, 5}, Edge{2, 6}, Edge{3, 5}, Edge{3, 6}, Edge{4, 5}, Edge{4, 6}};
  return edges;
}

inline Edge edge_from_key(const std::string& key) {
  if (key.size() != 3 || key[1] != '-') throw DomainError("bad edge key: " + key);
  int i = key[0] - '0', j = key[2] - '0';
  if (i >= j || !is_edge_pair(i, j)) throw DomainError("bad edge key: " + key);
  return Edge{i, j};
}

struct OrientedEdge {
  int tail = 1, head = 3;

  OrientedEdge() = default;
  OrientedEdge(int t, int h) : tail(t), head(h) { (void)Edge{t, h}; }

  Edge edge() const { return Edge{tail, head}; }
  OrientedEdge reversed() const { return OrientedEdge{head, tail}; }
  std::string str() const { return std::to_string(tail) + "->" + std::to_string(head); }

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

// reference orientation, indexed like all_edges()
inline const std::array<OrientedEdge, 12>& fixed_orientation() {
  static const std::array<OrientedEdge, 12> dir = {
      OrientedEdge{1, 3}, OrientedEdge{4, 1}, OrientedEdge{5, 1}, OrientedEdge{1, 6},
      OrientedEdge{3, 2}, OrientedEdge{2, 4}, OrientedEdge{2, 5}, OrientedEdge{6, 2},
      OrientedEdge{3, 5}, OrientedEdge{6, 3}, OrientedEdge{5, 4}, OrientedEdge{4, 6}};
  return dir;
}

inline bool agrees_with_fixed(const OrientedEdge& e) {
  return fixed_orientation()[e.edge().index()] == e;
}

// vertices in the order they are drawn around the hexagon; sigma shifts by one slot
inline const std::array<int, 6>& hexagon_order() {
  static const std::array<int, 6> h = {1, 4, 5, 2, 3, 6};
  return h;
}

inline int hexagon_position(int v) {
  const auto& h = hexagon_order();
  return static_cast<int>(std::find(h.begin(), h.end(), v) - h.begin());
}

inline int mod6(int k) { return ((k % 6) + 6) % 6; }

// k-th power of the cycle (1 4 5 2 3 6)
inline int sigma(int v, int k = 1) {
  return hexagon_order()[mod6(hexagon_position(v) + k)];
}

inline OrientedEdge sigma(const OrientedEdge& e, int k = 1) {
  return OrientedEdge{sigma(e.tail, k), sigma(e.head, k)};
}

inline Edge sigma(const Edge& e, int k = 1) { return Edge{sigma(e.a, k), sigma(e.b, k)}; }

// one vertex from each non-edge pair
inline const std::array<std::array<int, 3>, 8>& faces() {
  static const std::array<std::array<int, 3>, 8> f = {{{1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {1, 4, 6},
                                                       {2, 3, 5}, {2, 3, 6}, {2, 4, 5}, {2, 4, 6}}};
  return f;
}

struct Pyramid {
  int apex;
  std::array<int, 4> w;  // w1..w4; {w1,w3} and {w2,w4} are the opposite pairs
};

inline Pyramid pyramid(VertexId apex) {
  const auto& h = hexagon_order();
  int p = hexagon_position(apex);
  return Pyramid{apex, {h[mod6(p - 1)], h[mod6(p - 2)], h[mod6(p + 2)], h[mod6(p + 1)]}};
}

struct Quadrilateral {
  int label;                 // 12, 34 or 56
  std::array<int, 4> cycle;  // vertices in cyclic order

  std::array<Edge, 4> edges() const {
    return {Edge{cycle[0], cycle[1]}, Edge{cycle[1], cycle[2]}, Edge{cycle[2], cycle[3]},
            Edge{cycle[3], cycle[0]}};
  }
  bool contains(const Edge& e) const {
    auto es = edges();
    return std::find(es.begin(), es.end(), e) != es.end();
  }
  int edge_slot(const Edge& e) const {
    auto es = edges();
    auto it = std::find(es.begin(), es.end(), e);
    if (it == es.end()) throw DomainError("edge " + e.key() + " not in quadrilateral");
    return static_cast<int>(it - es.begin());
  }
};

// quadrilaterals 34 and 12 are the sigma^2 and sigma^4 images of 56
inline Quadrilateral quadrilateral(int label) {
  switch (label) {
    case 56: return Quadrilateral{56, {1, 3, 2, 4}};
    case 34: return Quadrilateral{34, {5, 1, 6, 2}};
    case 12: return Quadrilateral{12, {3, 5, 4, 6}};
  }
  throw DomainError("no quadrilateral labeled " + std::to_string(label));
}

inline std::array<Quadrilateral, 3> all_quadrilaterals() {
  return {quadrilateral(12), quadrilateral(34), quadrilateral(56)};
}

inline int quad_label_of(const Edge& e) {
  for (int lo : {1, 3, 5})
    if (!e.contains(lo) && !e.contains(lo + 1)) return lo * 10 + lo + 1;
  throw DomainError("edge touches every pair");
}

inline int sigma_quad_label(int label, int k) {
  int lo = sigma(label / 10, k);
  int hi = partner(lo);
  return std::min(lo, hi) * 10 + std::max(lo, hi);
}

struct SignedLength {
  double value;
};

class OctLabeling {
 public:
  explicit OctLabeling(const std::array<double, 12>& lengths) : len_(lengths) {
    for (const auto& e : all_edges()) {
      double l = len_[e.index()];
      if (!std::isfinite(l) || l <= 0.0) throw DomainError("edge " + e.key() + " needs a positive length");
    }
    for (const auto& f : faces()) {
      double a = length(f[0], f[1]), b = length(f[1], f[2]), c = length(f[0], f[2]);
      double m = std::max({a, b, c});
      if (a + b + c - 2.0 * m <= 1e-12 * m)
        throw DomainError("degenerate face " + std::to_string(f[0]) + std::to_string(f[1]) +
                          std::to_string(f[2]));
    }
  }

  static OctLabeling uniform(double l) {
    std::array<double, 12> a;
    a.fill(l);
    return OctLabeling(a);
  }

  static OctLabeling from_map(const std::map<std::string, double>& m) {
    std::array<double, 12> a{};
    std::array<bool, 12> seen{};
    for (const auto& [k, v] : m) {
      Edge e = edge_from_key(k);
      a[e.index()] = v;
      seen[e.index()] = true;
    }
    for (const auto& e : all_edges())
      if (!seen[e.index()]) throw DomainError("missing edge " + e.key());
    return OctLabeling(a);
  }

  double length(const Edge& e) const { return len_[e.index()]; }
  double length(int i, int j) const { return len_[Edge{i, j}.index()]; }
  const std::array<double, 12>& lengths() const { return len_; }

  std::map<std::string, double> to_map() const {
    std::map<std::string, double> m;
    for (const auto& e : all_edges()) m[e.key()] = length(e);
    return m;
  }

  double mean_length() const {
    double s = 0;
    for (double l : len_) s += l;
    return s / 12.0;
  }

 private:
  std::array<double, 12> len_;
};

inline OctLabeling estar_labeling() {
  // 13 14 15 16 23 24 25 26 35 36 45 46
  return OctLabeling({20, 20, 13, 13, 20, 20, 13, 13, 11, 21, 21, 11});
}

class Realization {
 public:
  Realization() { pts_.fill(Vec3::Zero()); }
  explicit Realization(const std::array<Vec3, 6>& pts) : pts_(pts) {
    for (const auto& p : pts_)
      if (!p.allFinite()) throw DomainError("realization has a non-finite coordinate");
  }

  const Vec3& operator[](int v) const { return pts_.at(v - 1); }
  const std::array<Vec3, 6>& points() const { return pts_; }

  Realization with_point(int v, const Vec3& p) const {
    auto pts = pts_;
    pts.at(v - 1) = p;
    return Realization(pts);
  }

  template <class F>
  Realization transformed(F&& f) const {
    std::array<Vec3, 6> pts;
    for (int i = 0; i < 6; ++i) pts[i] = f(pts_[i]);
    return Realization(pts);
  }

  double distance(int i, int j) const { return (pts_[i - 1] - pts_[j - 1]).norm(); }

  Eigen::Matrix<double, 6, 6> distance_matrix() const {
    Eigen::Matrix<double, 6, 6> d;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) d(i, j) = (pts_[i] - pts_[j]).norm();
    return d;
  }

  OctLabeling measured_labeling() const {
    std::array<double, 12> a;
    for (const auto& e : all_edges()) a[e.index()] = distance(e.a, e.b);
    return OctLabeling(a);
  }

 private:
  std::array<Vec3, 6> pts_;
};

inline SignedLength signed_length(const OctLabeling& lab, VertexId tail, VertexId head) {
  OrientedEdge e{tail, head};
  double l = lab.length(e.edge());
  return SignedLength{agrees_with_fixed(e) ? l : -l};
}

inline double compatibility_residual(const Realization& r, const OctLabeling& lab) {
  double worst = 0;
  for (const auto& e : all_edges())
    worst = std::max(worst, std::abs(r.distance(e.a, e.b) - lab.length(e)));
  return worst;
}

inline bool are_congruent(const Realization& r1, const Realization& r2, double tol) {
  if (!(tol > 0)) throw PreconditionError("are_congruent needs tol > 0");
  return (r1.distance_matrix() - r2.distance_matrix()).cwiseAbs().maxCoeff() < tol;
}

// cosines of the apex angles (w1,w2), (w2,w3), (w3,w4), (w4,w1)
inline std::array<double, 4> pyramid_apex_cosines(const OctLabeling& lab, VertexId apex) {
  Pyramid p = pyramid(apex);
  std::array<double, 4> c;
  for (int k = 0; k < 4; ++k) {
    int u = p.w[k], v = p.w[(k + 1) % 4];
    double a = lab.length(apex, u), b = lab.length(apex, v), base = lab.length(u, v);
    double m = std::max({a, b, base});
    if (a + b + base - 2.0 * m <= 1e-12 * m) throw DomainError("degenerate pyramid face");
    c[k] = (a * a + b * b - base * base) / (2.0 * a * b);
  }
  return c;
}

inline OctLabeling cyclic_relabel(const OctLabeling& lab, int k) {
  std::array<double, 12> a;
  for (const auto& e : all_edges()) a[sigma(e, k).index()] = lab.length(e);
  return OctLabeling(a);
}

inline Realization cyclic_relabel(const Realization& r, int k) {
  std::array<Vec3, 6> pts;
  for (int v = 1; v <= 6; ++v) pts[sigma(v, k) - 1] = r[v];
  return Realization(pts);
}

inline Realization regular_octahedron(double edge = 1.0) {
  double s = edge / std::sqrt(2.0);
  return Realization({Vec3(s, 0, 0), Vec3(-s, 0, 0), Vec3(0, s, 0), Vec3(0, -s, 0), Vec3(0, 0, s),
                      Vec3(0, 0, -s)});
}

}  // namespace bricard
