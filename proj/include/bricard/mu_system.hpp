#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bonds.hpp"

namespace bricard {

// conjugate pyramidal bonds share a mu-number, so equations live on classes
struct PyramidalClass {
  int apex = 1;
  Axis axis = Axis::A;
  bool through = true;

  static PyramidalClass of(const PyramidalBond& b) { return {b.apex, b.axis, b.through()}; }

  std::string str() const {
    return "P" + std::to_string(apex) + "[" + (axis == Axis::A ? "A" : "B") + "," +
           (through ? "thru" : "inout") + "]";
  }

  friend bool operator==(const PyramidalClass&, const PyramidalClass&) = default;
  friend auto operator<=>(const PyramidalClass&, const PyramidalClass&) = default;
};

struct OctahedralClass {
  int quad = 56;
  BondLetter letter = BondLetter::X;

  static OctahedralClass of(const BondName& n) { return {n.quad, n.letter}; }
  std::string str() const { return std::string(1, letter_char(letter)) + std::to_string(quad); }

  friend bool operator==(const OctahedralClass&, const OctahedralClass&) = default;
  friend auto operator<=>(const OctahedralClass&, const OctahedralClass&) = default;
};

struct MuEquation {
  PyramidalClass lhs;
  std::vector<OctahedralClass> rhs;     // extension row: sum of octahedral unknowns
  std::optional<PyramidalClass> equal;  // pairing row: mu^v = mu^partner(v)

  std::string str() const {
    std::string s = lhs.str() + " = ";
    if (equal) return s + equal->str();
    for (std::size_t k = 0; k < rhs.size(); ++k) s += (k ? " + " : "") + rhs[k].str();
    return s;
  }
};

struct MuSystem {
  std::vector<MuEquation> equations;

  int extension_count() const {
    return static_cast<int>(std::count_if(equations.begin(), equations.end(),
                                          [](const auto& e) { return !e.equal; }));
  }

  // one equation per line, sorted
  std::string canonical() const {
    std::vector<std::string> lines;
    for (const auto& e : equations) lines.push_back(e.str());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }

  const MuEquation* extension_for(const PyramidalClass& c) const {
    for (const auto& e : equations)
      if (!e.equal && e.lhs == c) return &e;
    return nullptr;
  }
};

inline std::vector<OctahedralClass> extension_classes(const PyramidalBond& b) {
  std::vector<OctahedralClass> out;
  for (const auto& n : pyramidal_bond_extensions(b)) out.push_back(OctahedralClass::of(n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline MuSystem derive_mu_system() {
  std::map<PyramidalClass, std::vector<OctahedralClass>> rows;
  for (const auto& b : all_pyramidal_bonds()) {
    auto ext = pyramidal_bond_extensions(b);
    auto conj = pyramidal_bond_extensions(b.conjugate());
    std::vector<BondName> expect;
    for (const auto& n : ext) expect.push_back(n.conjugate());
    std::sort(expect.begin(), expect.end());
    std::sort(conj.begin(), conj.end());
    if (expect != conj) throw std::logic_error("conjugate pyramidal bond " + b.str() + " breaks symmetry");

    auto cls = extension_classes(b);
    auto [it, fresh] = rows.emplace(PyramidalClass::of(b), cls);
    if (!fresh && it->second != cls) throw std::logic_error("inconsistent class for " + b.str());
  }

  MuSystem sys;
  for (int v : {1, 3, 5})
    for (Axis ax : {Axis::A, Axis::B})
      for (bool thru : {true, false}) {
        PyramidalClass c{v, ax, thru};
        sys.equations.push_back({c, rows.at(c), std::nullopt});
      }
  for (int v : {2, 4, 6})
    for (Axis ax : {Axis::A, Axis::B})
      for (bool thru : {true, false}) {
        PyramidalClass c{v, ax, thru}, p{partner(v), ax, thru};
        if (rows.at(c) != rows.at(p)) throw std::logic_error("pyramid " + std::to_string(v) + " differs from its partner");
        sys.equations.push_back({c, {}, p});
      }
  return sys;
}

// pyramid families by their bonds; columns (A thru, A inout, B thru, B inout)
struct BondTableRow {
  std::string family;
  std::string subfamily;
  std::array<int, 4> bonds;
};

inline const std::vector<BondTableRow>& bond_table() {
  static const std::vector<BondTableRow> rows = {
      {"general", "", {1, 1, 1, 1}},
      {"odd deltoid", "coincide", {1, 1, 1, 0}},
      {"odd deltoid", "antipodal", {1, 1, 0, 1}},
      {"even deltoid", "coincide", {1, 0, 1, 1}},
      {"even deltoid", "antipodal", {0, 1, 1, 1}},
      {"rhomboid/lozenge", "type 1", {1, 0, 1, 0}},
      {"rhomboid/lozenge", "type 2", {0, 1, 1, 0}},
      {"rhomboid/lozenge", "type 3", {1, 0, 0, 1}},
      {"rhomboid/lozenge", "type 4", {0, 1, 0, 1}},
  };
  return rows;
}

inline const BondTableRow* bond_table_lookup(const std::array<int, 4>& v) {
  for (const auto& r : bond_table())
    if (r.bonds == v) return &r;
  return nullptr;
}

struct MuAssignment {
  // index 3*q + letter, q over quads 12, 34, 56
  std::array<int, 9> oct{};
  std::array<std::array<int, 4>, 6> pyramids{};  // per apex 1..6
  std::array<std::string, 6> families;

  static int slot(int quad, BondLetter l) {
    int q = quad == 12 ? 0 : quad == 34 ? 1 : 2;
    return 3 * q + static_cast<int>(l);
  }
  int value(const OctahedralClass& c) const { return oct[slot(c.quad, c.letter)]; }

  // (mu^12, mu^34, mu^56) with mu^ij = 2 (X + Y + Z)
  std::array<int, 3> profile() const {
    std::array<int, 3> p;
    for (int q = 0; q < 3; ++q) p[q] = 2 * (oct[3 * q] + oct[3 * q + 1] + oct[3 * q + 2]);
    return p;
  }
};

inline int class_column(const PyramidalClass& c) {
  return (c.axis == Axis::A ? 0 : 2) + (c.through ? 0 : 1);
}

inline std::optional<MuAssignment> evaluate_mu(const MuSystem& sys, const std::array<int, 9>& oct) {
  MuAssignment a;
  a.oct = oct;
  std::map<PyramidalClass, int> val;
  for (const auto& e : sys.equations)
    if (!e.equal) {
      int s = 0;
      for (const auto& c : e.rhs) s += a.value(c);
      val[e.lhs] = s;
    }
  for (const auto& e : sys.equations)
    if (e.equal) val[e.lhs] = val.at(*e.equal);
  for (const auto& [c, x] : val) a.pyramids[c.apex - 1][class_column(c)] = x;
  for (int v = 0; v < 6; ++v) {
    const BondTableRow* row = bond_table_lookup(a.pyramids[v]);
    if (!row) return std::nullopt;
    a.families[v] = row->family + (row->subfamily.empty() ? "" : " (" + row->subfamily + ")");
  }
  return a;
}

struct MuSolution {
  std::vector<MuAssignment> assignments;
  std::set<std::array<int, 3>> profiles;         // as found
  std::set<std::array<int, 3>> sorted_profiles;  // descending, up to permutation
  bool clipped = false;  // a solution with some value 2 exists when unknowns range over {0,1,2}
};

inline MuSolution solve_mu_system(const MuSystem& sys) {
  MuSolution sol;
  for (int mask = 0; mask < 512; ++mask) {
    std::array<int, 9> oct;
    for (int k = 0; k < 9; ++k) oct[k] = mask >> k & 1;
    if (auto a = evaluate_mu(sys, oct)) {
      auto p = a->profile();
      sol.profiles.insert(p);
      std::sort(p.begin(), p.end(), std::greater<>());
      sol.sorted_profiles.insert(p);
      sol.assignments.push_back(*a);
    }
  }
  // widen the box once to make sure the {0,1} bound cuts nothing off
  for (int code = 0; code < 19683; ++code) {
    std::array<int, 9> oct;
    int c = code;
    bool has_two = false;
    for (int k = 0; k < 9; ++k) {
      oct[k] = c % 3;
      c /= 3;
      has_two |= oct[k] == 2;
    }
    if (has_two && evaluate_mu(sys, oct)) sol.clipped = true;
  }
  return sol;
}

}  // namespace bricard
