#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "oct_model.hpp"

namespace bricard {

// vertices of G_edg are octahedron edges (indexed like all_edges()),
// joined when they bound a common face
struct EdgeGraph {
  struct Link {
    int u, v;    // edge indices, u < v
    int shared;  // common octahedron vertex
  };
  std::vector<Link> links;

  int vertex_count() const { return 12; }
  int edge_count() const { return static_cast<int>(links.size()); }

  bool adjacent(const Edge& a, const Edge& b) const { return find(a, b) >= 0; }

  int find(const Edge& a, const Edge& b) const {
    int u = std::min(a.index(), b.index()), v = std::max(a.index(), b.index());
    for (int k = 0; k < edge_count(); ++k)
      if (links[k].u == u && links[k].v == v) return k;
    return -1;
  }

  static std::string key(const Link& l) {
    return all_edges()[l.u].key() + "|" + all_edges()[l.v].key();
  }
};

inline EdgeGraph build_edge_graph() {
  EdgeGraph g;
  for (const auto& f : faces()) {
    for (int k = 0; k < 3; ++k) {
      int j = f[k], i = f[(k + 1) % 3], m = f[(k + 2) % 3];
      int a = Edge{i, j}.index(), b = Edge{m, j}.index();
      g.links.push_back({std::min(a, b), std::max(a, b), j});
    }
  }
  std::sort(g.links.begin(), g.links.end(),
            [](const auto& x, const auto& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  return g;
}

// values aligned with build_edge_graph().links
struct SphericalLabeling {
  std::array<double, 24> cosines{};

  double value(const Edge& a, const Edge& b) const {
    static const EdgeGraph g = build_edge_graph();
    int k = g.find(a, b);
    if (k < 0) throw DomainError(a.key() + " and " + b.key() + " share no face");
    return cosines[k];
  }

  std::map<std::string, double> to_map() const {
    static const EdgeGraph g = build_edge_graph();
    std::map<std::string, double> m;
    for (int k = 0; k < g.edge_count(); ++k) m[EdgeGraph::key(g.links[k])] = cosines[k];
    return m;
  }
};

// +1 when the fixed orientation of e points into v
inline int orientation_sign_at(const Edge& e, int v) {
  return fixed_orientation()[e.index()].head == v ? 1 : -1;
}

// cosine of the face angle at the shared vertex, with the orientation sign
// correction so that it equals <q_a, q_b> for lifted realizations
inline SphericalLabeling induced_labeling(const OctLabeling& lab) {
  static const EdgeGraph g = build_edge_graph();
  SphericalLabeling s;
  for (int k = 0; k < g.edge_count(); ++k) {
    const auto& l = g.links[k];
    const Edge& ea = all_edges()[l.u];
    const Edge& eb = all_edges()[l.v];
    int j = l.shared, i = ea.other(j), m = eb.other(j);
    double lij = lab.length(ea), lmj = lab.length(eb), lim = lab.length(i, m);
    double c = -(lim * lim - lij * lij - lmj * lmj) / (2.0 * lij * lmj);
    s.cosines[k] = orientation_sign_at(ea, j) * orientation_sign_at(eb, j) * c;
  }
  return s;
}

struct SphericalRealization {
  std::array<Vec3, 12> q;
  const Vec3& operator[](const Edge& e) const { return q[e.index()]; }
};

inline SphericalRealization lift_realization(const Realization& r, const OctLabeling& lab,
                                             double tol = kDefaultTol) {
  double res = compatibility_residual(r, lab);
  if (!(res < tol))
    throw PreconditionError("realization is not compatible with the labeling (residual " +
                            std::to_string(res) + ")");
  SphericalRealization s;
  for (const auto& e : all_edges())
    s.q[e.index()] = (r[e.a] - r[e.b]) / signed_length(lab, VertexId(e.a), VertexId(e.b)).value;
  return s;
}

inline double cycle_closure(const SphericalRealization& sr, const OctLabeling& lab,
                            const int* cyc, int n) {
  Vec3 sum = Vec3::Zero();
  for (int k = 0; k < n; ++k) {
    int x = cyc[k], y = cyc[(k + 1) % n];
    sum += signed_length(lab, VertexId(x), VertexId(y)).value * sr[Edge{x, y}];
  }
  return sum.norm();
}

inline double triangle_closure_residual(const SphericalRealization& sr, const OctLabeling& lab) {
  double worst = 0;
  for (const auto& f : faces()) worst = std::max(worst, cycle_closure(sr, lab, f.data(), 3));
  for (const auto& q : all_quadrilaterals())
    worst = std::max(worst, cycle_closure(sr, lab, q.cycle.data(), 4));
  return worst;
}

using Complex = std::complex<double>;

struct ProjectivePointPair {
  std::array<Complex, 2> left;   // (u : v)
  std::array<Complex, 2> right;  // (u' : v')

  ProjectivePointPair(std::array<Complex, 2> l, std::array<Complex, 2> r) : left(l), right(r) {
    if ((left[0] == 0.0 && left[1] == 0.0) || (right[0] == 0.0 && right[1] == 0.0))
      throw DomainError("(0:0) is not a projective point");
  }
};

// lands on the quadric z^2 - 4xy = 1
inline std::array<Complex, 3> segre_point(const ProjectivePointPair& p) {
  Complex u = p.left[0], v = p.left[1], u2 = p.right[0], v2 = p.right[1];
  Complex d = u * v2 - v * u2;
  double scale = (std::abs(u) + std::abs(v)) * (std::abs(u2) + std::abs(v2));
  if (std::abs(d) <= 1e-14 * scale) throw DomainError("point at infinity: the two points coincide");
  return {u * u2 / d, v * v2 / d, (u * v2 + v * u2) / d};
}

}  // namespace bricard
