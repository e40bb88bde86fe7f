#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "bonds.hpp"
#include "oct_model.hpp"

namespace bricard {

enum class Parity { Even, Odd, Both, None };
enum class PairMode { Equal, Supplementary, Mixed, None };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Both: return "both";
    default: return "none";
  }
}

inline const char* mode_name(PairMode m) {
  switch (m) {
    case PairMode::Equal: return "equal";
    case PairMode::Supplementary: return "supplementary";
    case PairMode::Mixed: return "mixed";
    default: return "none";
  }
}

// parity of the edge {apex, w} inside the pyramid at apex
inline Parity edge_parity(int apex, int w) {
  // apexes 1, 4, 6 as drawn; the partner apex inherits the same parity on {partner, w}
  static const std::map<std::pair<int, int>, Parity> drawn = {
      {{1, 6}, Parity::Even}, {{1, 3}, Parity::Odd},  {{1, 4}, Parity::Odd},  {{1, 5}, Parity::Even},
      {{4, 1}, Parity::Even}, {{4, 2}, Parity::Even}, {{4, 6}, Parity::Odd},  {{4, 5}, Parity::Odd},
      {{6, 1}, Parity::Odd},  {{6, 3}, Parity::Even}, {{6, 4}, Parity::Even}, {{6, 2}, Parity::Odd}};
  (void)Edge{apex, w};
  auto it = drawn.find({apex, w});
  if (it != drawn.end()) return it->second;
  return drawn.at({partner(apex), w});
}

struct PyramidFamily {
  int apex = 1;
  bool is_deltoid = false, is_rhomboid = false, is_lozenge = false, is_general = false;
  Parity deltoid_parity = Parity::None;
  PairMode deltoid_mode = PairMode::None;
  PairMode rhomboid_mode = PairMode::None;
  std::array<double, 4> cosines{};

  bool rhomboid_or_lozenge() const { return is_rhomboid || is_lozenge; }

  std::string str() const {
    std::string s;
    auto add = [&](bool f, const char* n) {
      if (f) s += (s.empty() ? "" : "+") + std::string(n);
    };
    add(is_general, "general");
    add(is_deltoid, "deltoid");
    add(is_rhomboid, "rhomboid");
    add(is_lozenge, "lozenge");
    return s;
  }
};

namespace detail {

inline PairMode match_pair(double a, double b, double tol) {
  if (std::abs(a - b) < tol) return PairMode::Equal;
  if (std::abs(a + b) < tol) return PairMode::Supplementary;
  return PairMode::None;
}

inline PairMode combine(PairMode x, PairMode y) {
  if (x == PairMode::None || y == PairMode::None) return PairMode::None;
  return x == y ? x : PairMode::Mixed;
}

}  // namespace detail

inline PyramidFamily classify_pyramid(const OctLabeling& lab, VertexId apex, double tol = kDefaultTol) {
  using detail::combine;
  using detail::match_pair;
  PyramidFamily f;
  f.apex = apex;
  auto c = pyramid_apex_cosines(lab, apex);
  f.cosines = c;

  // angle k sits between w_k and w_{k+1}; pairs {0,1},{2,3} meet at w2 and w4, pairs {1,2},{3,0} at w3 and w1
  PairMode odd_axis = combine(match_pair(c[0], c[1], tol), match_pair(c[2], c[3], tol));
  PairMode even_axis = combine(match_pair(c[1], c[2], tol), match_pair(c[3], c[0], tol));
  Pyramid p = pyramid(apex);
  bool odd = odd_axis != PairMode::None, even = even_axis != PairMode::None;
  if (odd || even) {
    f.is_deltoid = true;
    // parity read from the table rather than assumed
    Parity po = edge_parity(apex, p.w[1]), pe = edge_parity(apex, p.w[0]);
    f.deltoid_parity = odd && even ? Parity::Both : odd ? po : pe;
    f.deltoid_mode = odd ? odd_axis : even_axis;
  }

  f.rhomboid_mode = combine(match_pair(c[0], c[2], tol), match_pair(c[1], c[3], tol));
  f.is_rhomboid = f.rhomboid_mode != PairMode::None;

  double a = std::abs(c[0]);
  bool same_abs = std::all_of(c.begin(), c.end(), [&](double x) { return std::abs(std::abs(x) - a) < tol; });
  int negatives = static_cast<int>(std::count_if(c.begin(), c.end(), [&](double x) { return x < 0; }));
  f.is_lozenge = same_abs && a >= tol && negatives % 2 == 0;

  f.is_general = !f.is_deltoid && !f.is_rhomboid && !f.is_lozenge;
  return f;
}

inline std::array<double, 4> pyramid_apex_angles(const OctLabeling& lab, VertexId apex) {
  auto c = pyramid_apex_cosines(lab, apex);
  std::array<double, 4> a;
  for (int k = 0; k < 4; ++k) {
    double x = c[k];
    if (std::abs(x) > 1.0 && std::abs(x) - 1.0 < 1e-12) x = std::copysign(1.0, x);
    a[k] = std::acos(x);
  }
  return a;
}

// sign patterns e with sum e_k a_k = 0 mod 2pi, counted up to the global flip
inline int count_flat_pyramid_realizations(const OctLabeling& lab, VertexId apex, double tol = kDefaultTol) {
  auto a = pyramid_apex_angles(lab, apex);
  const double two_pi = 2.0 * std::numbers::pi;
  int n = 0;
  for (int mask = 0; mask < 16; ++mask) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += (mask >> k & 1 ? -1.0 : 1.0) * a[k];
    double r = std::remainder(s, two_pi);
    if (std::abs(r) < tol) ++n;
  }
  return n / 2;
}

struct Type1Report {
  bool satisfied = false;
  std::vector<std::string> witnesses;
};

struct Type2Report {
  bool satisfied = false;
  std::vector<int> fixed_pairs;  // labels 12, 34, 56 that pass
};

struct Type3Report {
  bool satisfied = false;
  bool families_ok = false;
  std::map<int, std::vector<std::array<int, 4>>> eta;  // per quadrilateral, every working sign vector
};

inline bool lengths_equal(const OctLabeling& lab, const Edge& a, const Edge& b, double tol) {
  return std::abs(lab.length(a) - lab.length(b)) < tol * lab.mean_length();
}

inline Type1Report check_type1(const OctLabeling& lab, double tol = kDefaultTol) {
  Type1Report r;
  r.satisfied = true;
  for (const auto& q : all_quadrilaterals()) {
    auto e = q.edges();
    for (int k = 0; k < 2; ++k) {
      bool ok = lengths_equal(lab, e[k], e[k + 2], tol);
      r.satisfied &= ok;
      if (ok) r.witnesses.push_back("l" + e[k].key() + " = l" + e[k + 2].key());
    }
  }
  return r;
}

// reflection fixing the pair of `label` and swapping the other two pairs
inline int type2_swap(int label, int v) {
  int lo = label / 10;
  if (v == lo || v == lo + 1) return v;
  return partner(v);
}

inline bool check_type2_pair(const OctLabeling& lab, int label, double tol = kDefaultTol) {
  for (const auto& e : all_edges()) {
    Edge t{type2_swap(label, e.a), type2_swap(label, e.b)};
    if (!lengths_equal(lab, e, t, tol)) return false;
  }
  return true;
}

inline Type2Report check_type2(const OctLabeling& lab, double tol = kDefaultTol) {
  Type2Report r;
  for (int label : {12, 34, 56})
    if (check_type2_pair(lab, label, tol)) r.fixed_pairs.push_back(label);
  r.satisfied = !r.fixed_pairs.empty();
  return r;
}

inline std::vector<std::array<int, 4>> balanced_signs() {
  std::vector<std::array<int, 4>> out;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) != 2) continue;
    std::array<int, 4> s;
    for (int k = 0; k < 4; ++k) s[k] = (mask >> k & 1) ? -1 : 1;
    out.push_back(s);
  }
  return out;
}

inline Type3Report check_type3(const OctLabeling& lab, double tol = kDefaultTol) {
  Type3Report r;
  r.families_ok = true;
  for (int v = 1; v <= 6; ++v) r.families_ok &= classify_pyramid(lab, VertexId(v), tol).rhomboid_or_lozenge();
  bool all_quads = true;
  for (const auto& q : all_quadrilaterals()) {
    auto e = q.edges();
    auto& found = r.eta[q.label];
    for (const auto& s : balanced_signs()) {
      double sum = 0;
      for (int k = 0; k < 4; ++k) sum += s[k] * lab.length(e[k]);
      if (std::abs(sum) < tol * lab.mean_length()) found.push_back(s);
    }
    all_quads &= !found.empty();
  }
  r.satisfied = r.families_ok && all_quads;
  return r;
}

struct TypeReport {
  Type1Report type1;
  Type2Report type2;
  Type3Report type3;
  std::array<PyramidFamily, 6> families;
  std::vector<std::string> seed_modes;  // line, plane, flat
  double tol = kDefaultTol;

  bool any() const { return type1.satisfied || type2.satisfied || type3.satisfied; }
};

inline bool has_neighbor_rhomboids(const std::array<PyramidFamily, 6>& fam) {
  for (const auto& e : all_edges())
    if (fam[e.a - 1].rhomboid_or_lozenge() && fam[e.b - 1].rhomboid_or_lozenge()) return true;
  return false;
}

inline TypeReport classify_octahedron(const OctLabeling& lab, double tol = kDefaultTol) {
  TypeReport r;
  r.tol = tol;
  r.type1 = check_type1(lab, tol);
  r.type2 = check_type2(lab, tol);
  r.type3 = check_type3(lab, tol);
  for (int v = 1; v <= 6; ++v) r.families[v - 1] = classify_pyramid(lab, VertexId(v), tol);
  if (r.type1.satisfied) r.seed_modes.push_back("line");
  if (r.type2.satisfied) r.seed_modes.push_back("plane");
  if (r.any() && has_neighbor_rhomboids(r.families)) r.seed_modes.push_back("flat");
  return r;
}

// edge -> multiplicity in {1, 2, 4}, indexed like all_edges()
struct MultiplicityAssignment {
  std::array<int, 12> m{};

  int operator[](const Edge& e) const { return m[e.index()]; }

  static MultiplicityAssignment by_quadrilateral(int m12, int m34, int m56) {
    MultiplicityAssignment a;
    for (const auto& e : all_edges()) {
      int q = quad_label_of(e);
      a.m[e.index()] = q == 12 ? m12 : q == 34 ? m34 : m56;
    }
    return a;
  }
};

namespace detail {

inline bool pyramid_rule(const PyramidFamily& f, int x, int y) {
  auto in = [](int v, std::initializer_list<int> s) { return std::find(s.begin(), s.end(), v) != s.end(); };
  int lo = std::min(x, y), hi = std::max(x, y);
  if (f.is_general && in(x, {2, 4}) && in(y, {2, 4})) return true;
  if (f.is_deltoid && ((lo == 2 && hi == 4) || (lo == 1 && hi == 2))) return true;
  if (f.rhomboid_or_lozenge() && x == y && (x == 1 || x == 2)) return true;
  return false;
}

}  // namespace detail

inline bool validate_multiplicities(const std::map<int, PyramidFamily>& families, const MultiplicityAssignment& ma) {
  for (int v : ma.m)
    if (v != 1 && v != 2 && v != 4) return false;
  for (const auto& q : all_quadrilaterals()) {
    auto e = q.edges();
    for (int k = 1; k < 4; ++k)
      if (ma[e[k]] != ma[e[0]]) return false;
  }
  for (int v = 1; v <= 6; ++v) {
    Pyramid p = pyramid(VertexId(v));
    std::array<int, 4> m;
    for (int k = 0; k < 4; ++k) m[k] = ma[Edge{v, p.w[k]}];
    if (m[0] != m[2] || m[1] != m[3]) return false;
    int lo = std::min(m[0], m[1]), hi = std::max(m[0], m[1]);
    if (hi > 2 * lo) return false;
    auto it = families.find(v);
    if (it != families.end() && !detail::pyramid_rule(it->second, m[0], m[1])) return false;
  }
  return true;
}

}  // namespace bricard
