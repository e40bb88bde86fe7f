#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oct_model.hpp"

namespace bricard {

enum class BondLetter { X, Y, Z };

inline char letter_char(BondLetter l) { return "XYZ"[static_cast<int>(l)]; }

struct BondName {
  int quad = 56;
  BondLetter letter = BondLetter::X;
  bool bar = false;

  BondName conjugate() const { return BondName{quad, letter, !bar}; }
  std::string str() const {
    return std::string("B") + std::to_string(quad) + "_" + letter_char(letter) + (bar ? "bar" : "");
  }

  friend bool operator==(const BondName&, const BondName&) = default;
  friend auto operator<=>(const BondName&, const BondName&) = default;
};

// a name written with the label digits swapped (B^{ji}) in terms of B^{ij}:
// X flips to its conjugate, Y and Z keep their bar
inline BondName normalize_written_name(int first, int second, BondLetter letter, bool bar) {
  if (partner(first) != second) throw DomainError("not a non-edge pair");
  int lo = std::min(first, second);
  BondName n{lo * 10 + lo + 1, letter, bar};
  if (first > second && letter == BondLetter::X) n.bar = !n.bar;
  return n;
}

struct OctahedralBond {
  int quad = 56;
  std::array<OrientedEdge, 4> orientation;  // one arc per slot of quadrilateral(quad).edges()
  int mu = 0;

  int agreement() const {
    int n = 0;
    for (const auto& a : orientation) n += agrees_with_fixed(a);
    return n;
  }
  bool valid() const { return agreement() == 2; }

  OctahedralBond reversed() const {
    OctahedralBond b = *this;
    for (auto& a : b.orientation) a = a.reversed();
    return b;
  }

  // the arcs that agree with the fixed orientation touch all four vertices
  bool spans() const {
    std::set<int> touched;
    for (const auto& a : orientation)
      if (agrees_with_fixed(a)) touched.insert({a.tail, a.head});
    return touched.size() == 4;
  }

  bool has_arc(const OrientedEdge& e) const {
    return std::find(orientation.begin(), orientation.end(), e) != orientation.end();
  }

  std::string str() const {
    std::string s;
    for (const auto& a : orientation) s += (s.empty() ? "" : " ") + a.str();
    return s;
  }

  friend bool operator==(const OctahedralBond& x, const OctahedralBond& y) {
    return x.quad == y.quad && x.orientation == y.orientation;
  }
};

inline OctahedralBond bond_from_arcs(int quad, const std::array<OrientedEdge, 4>& arcs) {
  Quadrilateral q = quadrilateral(quad);
  OctahedralBond b;
  b.quad = quad;
  std::array<bool, 4> filled{};
  for (const auto& a : arcs) {
    int s = q.edge_slot(a.edge());
    if (filled[s]) throw DomainError("two arcs on one edge");
    filled[s] = true;
    b.orientation[s] = a;
  }
  return b;
}

inline std::vector<OctahedralBond> all_orientations(int quad) {
  Quadrilateral q = quadrilateral(quad);
  std::vector<OctahedralBond> out;
  for (int mask = 0; mask < 16; ++mask) {
    OctahedralBond b;
    b.quad = quad;
    for (int k = 0; k < 4; ++k) {
      OrientedEdge fwd{q.cycle[k], q.cycle[(k + 1) % 4]};
      b.orientation[k] = (mask >> k & 1) ? fwd.reversed() : fwd;
    }
    out.push_back(b);
  }
  return out;
}

inline OctahedralBond cyclic_relabel(const OctahedralBond& b, int k) {
  std::array<OrientedEdge, 4> arcs;
  for (int s = 0; s < 4; ++s) arcs[s] = sigma(b.orientation[s], k);
  OctahedralBond out = bond_from_arcs(sigma_quad_label(b.quad, k), arcs);
  out.mu = b.mu;
  return out;
}

// X, Y, Z on quadrilateral 56; the other two quadrilaterals are named through sigma^2, sigma^4
inline OctahedralBond named_bond(const BondName& n) {
  static const std::array<std::array<OrientedEdge, 4>, 3> base = {{
      {OrientedEdge{1, 3}, OrientedEdge{1, 4}, OrientedEdge{2, 3}, OrientedEdge{2, 4}},
      {OrientedEdge{1, 3}, OrientedEdge{4, 1}, OrientedEdge{2, 3}, OrientedEdge{4, 2}},
      {OrientedEdge{1, 3}, OrientedEdge{1, 4}, OrientedEdge{3, 2}, OrientedEdge{4, 2}},
  }};
  int k = n.quad == 56 ? 0 : n.quad == 34 ? 2 : n.quad == 12 ? 4 : -1;
  if (k < 0) throw DomainError("no quadrilateral labeled " + std::to_string(n.quad));
  OctahedralBond b = cyclic_relabel(bond_from_arcs(56, base[static_cast<int>(n.letter)]), k);
  return n.bar ? b.reversed() : b;
}

inline BondName name_of(const OctahedralBond& b) {
  for (BondLetter l : {BondLetter::X, BondLetter::Y, BondLetter::Z})
    for (bool bar : {false, true}) {
      BondName n{b.quad, l, bar};
      if (named_bond(n) == b) return n;
    }
  throw DomainError("orientation " + b.str() + " is not a valid bond");
}

// ordered X, Xbar, Y, Ybar, Z, Zbar
inline std::vector<OctahedralBond> valid_octahedral_bonds(int quad) {
  std::vector<OctahedralBond> out;
  for (BondLetter l : {BondLetter::X, BondLetter::Y, BondLetter::Z})
    for (bool bar : {false, true}) out.push_back(named_bond(BondName{quad, l, bar}));
  return out;
}

struct LinearForm {
  struct Term {
    Edge edge;
    OrientedEdge written;  // the fixed direction, so the term reads +-l_{tail head}
    int coeff;
  };
  std::vector<Term> terms;

  std::array<int, 12> coefficients() const {
    std::array<int, 12> c{};
    for (const auto& t : terms) c[t.edge.index()] += t.coeff;
    return c;
  }

  double evaluate(const OctLabeling& lab) const {
    double s = 0;
    for (const auto& t : terms) s += t.coeff * lab.length(t.edge);
    return s;
  }

  LinearForm negated() const {
    LinearForm f = *this;
    for (auto& t : f.terms) t.coeff = -t.coeff;
    return f;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& t = terms[k];
      if (k == 0)
        os << (t.coeff < 0 ? "-" : "");
      else
        os << (t.coeff < 0 ? " - " : " + ");
      os << "l" << t.written.tail << t.written.head;
    }
    os << " = 0";
    return os.str();
  }
};

inline LinearForm length_equation(const OctahedralBond& b) {
  LinearForm f;
  for (const auto& a : b.orientation)
    f.terms.push_back({a.edge(), fixed_orientation()[a.edge().index()], agrees_with_fixed(a) ? 1 : -1});
  return f;
}

// which opposite pair of the pyramid a bond uses: A = {w1,w3}, B = {w2,w4}
enum class Axis { A, B };

struct PyramidalBond {
  int apex = 1;
  Axis axis = Axis::A;
  bool first_in = true;   // arc at w1 (or w2) points into the apex
  bool second_in = true;  // arc at w3 (or w4) points into the apex
  int mu = 0;

  std::array<OrientedEdge, 2> arcs() const {
    Pyramid p = pyramid(VertexId(apex));
    int a = axis == Axis::A ? p.w[0] : p.w[1];
    int b = axis == Axis::A ? p.w[2] : p.w[3];
    return {first_in ? OrientedEdge{a, apex} : OrientedEdge{apex, a},
            second_in ? OrientedEdge{b, apex} : OrientedEdge{apex, b}};
  }

  PyramidalBond conjugate() const { return PyramidalBond{apex, axis, !first_in, !second_in, mu}; }

  // "through" bonds pass the apex, the others point both in or both out
  bool through() const { return first_in != second_in; }

  std::string str() const {
    auto a = arcs();
    return "P" + std::to_string(apex) + "{" + a[0].str() + "," + a[1].str() + "}";
  }

  friend bool operator==(const PyramidalBond& x, const PyramidalBond& y) {
    return x.apex == y.apex && x.axis == y.axis && x.first_in == y.first_in && x.second_in == y.second_in;
  }
};

inline std::vector<PyramidalBond> pyramidal_bonds(int apex) {
  std::vector<PyramidalBond> out;
  for (Axis ax : {Axis::A, Axis::B})
    for (bool f : {true, false})
      for (bool s : {false, true}) out.push_back(PyramidalBond{apex, ax, f, s});
  return out;
}

inline std::vector<PyramidalBond> all_pyramidal_bonds() {
  std::vector<PyramidalBond> out;
  for (int v = 1; v <= 6; ++v)
    for (const auto& b : pyramidal_bonds(v)) out.push_back(b);
  return out;
}

inline std::vector<BondName> pyramidal_bond_extensions(const PyramidalBond& pb) {
  auto arcs = pb.arcs();
  int quad = quad_label_of(arcs[0].edge());
  std::vector<BondName> out;
  for (const auto& b : valid_octahedral_bonds(quad))
    if (b.has_arc(arcs[0]) && b.has_arc(arcs[1])) out.push_back(name_of(b));
  return out;
}

}  // namespace bricard
