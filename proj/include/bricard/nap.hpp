#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "bonds.hpp"
#include "sphere_reduction.hpp"

namespace bricard {

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

inline SimpleGraph edge_graph_as_simple() {
  EdgeGraph g = build_edge_graph();
  SimpleGraph s{12, {}};
  for (const auto& l : g.links) s.edges.push_back({l.u, l.v});
  return s;
}

inline SimpleGraph cycle_graph(int n) {
  SimpleGraph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

enum Color : int { Red = 0, Blue = 1 };
using NapColoring = std::vector<int>;  // one color per graph edge

// triples of distinct edges (a, b, c) forming a walk a-b-c; closed walks around a triangle count
inline std::vector<std::array<int, 3>> three_walks(const SimpleGraph& g) {
  std::vector<std::array<int, 3>> out;
  int m = g.edge_count();
  auto shares = [&](int e, int v) { return g.edges[e].first == v || g.edges[e].second == v; };
  for (int b = 0; b < m; ++b) {
    auto [x, y] = g.edges[b];
    for (int a = 0; a < m; ++a) {
      if (a == b || !shares(a, x)) continue;
      for (int c = 0; c < m; ++c) {
        if (c == b || c == a || !shares(c, y)) continue;
        out.push_back({std::min(a, c), b, std::max(a, c)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool alternates(const NapColoring& c, const std::array<int, 3>& w) {
  return c[w[0]] == c[w[2]] && c[w[0]] != c[w[1]];
}

inline bool is_nap_coloring(const SimpleGraph& g, const NapColoring& c) {
  if (static_cast<int>(c.size()) != g.edge_count())
    throw PreconditionError("coloring must assign every edge");
  bool red = false, blue = false;
  for (int x : c) (x == Red ? red : blue) = true;
  if (!red || !blue) return false;
  for (const auto& w : three_walks(g))
    if (alternates(c, w)) return false;
  return true;
}

inline NapColoring normalize_swap(NapColoring c) {
  if (!c.empty() && c[0] == Blue)
    for (int& x : c) x = 1 - x;
  return c;
}

inline constexpr int kMaxNapEdges = 26;

// all NAP colorings with edge 0 red, sorted lexicographically
inline std::vector<NapColoring> enumerate_nap_colorings(const SimpleGraph& g) {
  int m = g.edge_count();
  if (m > kMaxNapEdges)
    throw CapacityError("graph has " + std::to_string(m) + " edges; the limit is " + std::to_string(kMaxNapEdges));
  std::vector<NapColoring> out;
  if (m == 0) return out;

  // each walk is checked once its last edge is colored
  std::vector<std::vector<std::array<int, 3>>> due(m);
  for (const auto& w : three_walks(g)) due[std::max({w[0], w[1], w[2]})].push_back(w);

  NapColoring c(m, Red);
  auto dfs = [&](auto&& self, int e) -> void {
    if (e == m) {
      if (std::find(c.begin(), c.end(), Blue) != c.end()) out.push_back(c);
      return;
    }
    for (int col : {Red, Blue}) {
      if (e == 0 && col == Blue) continue;
      c[e] = col;
      bool ok = true;
      for (const auto& w : due[e])
        if (alternates(c, w)) { ok = false; break; }
      if (ok) self(self, e + 1);
    }
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// link of G_edg is red when its face contains the smaller vertex of the excluded pair
inline NapColoring induced_quadrilateral_coloring(int quad) {
  EdgeGraph g = build_edge_graph();
  int m = quad / 10;
  NapColoring c;
  for (const auto& l : g.links) {
    bool touches = all_edges()[l.u].contains(m) || all_edges()[l.v].contains(m);
    c.push_back(touches ? Red : Blue);
  }
  return normalize_swap(c);
}

// symbol P_{ij} for an ordered pair over an octahedron edge
struct MarkedPoint {
  int i, j;
  std::string str() const { return "P" + std::to_string(i) + std::to_string(j); }
  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
  friend auto operator<=>(const MarkedPoint&, const MarkedPoint&) = default;
};

inline std::vector<MarkedPoint> all_marked_points() {
  std::vector<MarkedPoint> out;
  for (const auto& e : all_edges()) {
    out.push_back({e.a, e.b});
    out.push_back({e.b, e.a});
  }
  return out;
}

struct DivisorPartition {
  std::set<MarkedPoint> I, J;

  DivisorPartition conjugate() const {
    auto flip = [](const std::set<MarkedPoint>& s) {
      std::set<MarkedPoint> r;
      for (const auto& p : s) r.insert({p.j, p.i});
      return r;
    };
    return {flip(I), flip(J)};
  }

  std::string str() const {
    std::string s = "I={";
    for (const auto& p : I) s += p.str() + (p == *I.rbegin() ? "" : ",");
    s += "} J={";
    for (const auto& p : J) s += p.str() + (p == *J.rbegin() ? "" : ",");
    return s + "}";
  }

  friend bool operator==(const DivisorPartition&, const DivisorPartition&) = default;
};

inline DivisorPartition partition_of(const OctahedralBond& b) {
  int m = b.quad / 10;
  DivisorPartition d;
  Quadrilateral q = quadrilateral(b.quad);
  for (int w : q.cycle) d.I.insert({{m, w}, {w, m}});
  for (const auto& a : b.orientation) d.I.insert({a.tail, a.head});
  for (const auto& p : all_marked_points())
    if (!d.I.count(p)) d.J.insert(p);
  return d;
}

inline OctahedralBond orientation_of(const DivisorPartition& d, int quad) {
  Quadrilateral q = quadrilateral(quad);
  int m = quad / 10;
  std::array<OrientedEdge, 4> arcs;
  int n = 0;
  for (const auto& p : d.I) {
    if (p.i == m || p.j == m) continue;
    if (n == 4 || !q.contains(Edge{p.i, p.j})) throw DomainError("partition does not match quadrilateral");
    arcs[n++] = OrientedEdge{p.i, p.j};
  }
  if (n != 4) throw DomainError("partition does not match quadrilateral");
  return bond_from_arcs(quad, arcs);
}

// the 16 swaps of the pairs (P_ts, P_st) over the quadrilateral edges
inline std::vector<std::pair<DivisorPartition, OctahedralBond>> divisor_partitions_for_quadrilateral(int quad) {
  std::vector<std::pair<DivisorPartition, OctahedralBond>> out;
  for (const auto& b : all_orientations(quad)) out.push_back({partition_of(b), b});
  return out;
}

// coloring of G_edg read off a partition: a link is red when at least 3 of its 4 symbols lie in I
inline NapColoring coloring_of(const DivisorPartition& d) {
  EdgeGraph g = build_edge_graph();
  NapColoring c;
  for (const auto& l : g.links) {
    const Edge& a = all_edges()[l.u];
    const Edge& b = all_edges()[l.v];
    int in = d.I.count({a.a, a.b}) + d.I.count({a.b, a.a}) + d.I.count({b.a, b.b}) + d.I.count({b.b, b.a});
    c.push_back(in >= 3 ? Red : Blue);
  }
  return normalize_swap(c);
}

}  // namespace bricard
