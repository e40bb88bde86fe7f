#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bricard/bricard.hpp>

namespace bricard::cli {

inline constexpr int kExitUsage = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNoMotion = 3;

inline json family_json(const PyramidFamily& f) {
  return {{"family", f.str()},
          {"cosines", json(std::vector<double>(f.cosines.begin(), f.cosines.end()))},
          {"deltoid", f.is_deltoid},
          {"rhomboid", f.is_rhomboid},
          {"lozenge", f.is_lozenge},
          {"general", f.is_general},
          {"deltoid_parity", parity_name(f.deltoid_parity)},
          {"deltoid_mode", mode_name(f.deltoid_mode)},
          {"rhomboid_mode", mode_name(f.rhomboid_mode)}};
}

inline json type_report_json(const TypeReport& r) {
  json fam = json::object();
  for (const auto& f : r.families) fam[std::to_string(f.apex)] = family_json(f);
  json eta = json::object();
  for (const auto& [q, v] : r.type3.eta) {
    json list = json::array();
    for (const auto& s : v) list.push_back(std::vector<int>(s.begin(), s.end()));
    eta[std::to_string(q)] = list;
  }
  return {{"any", r.any()},
          {"tol", r.tol},
          {"families", fam},
          {"seed_modes", r.seed_modes},
          {"type1", {{"satisfied", r.type1.satisfied}, {"witnesses", r.type1.witnesses}}},
          {"type2", {{"satisfied", r.type2.satisfied}, {"fixed_pairs", r.type2.fixed_pairs}}},
          {"type3", {{"satisfied", r.type3.satisfied}, {"families_ok", r.type3.families_ok}, {"eta", eta}}}};
}

inline json spherical_json(const SphericalLabeling& s) {
  json j = json::object();
  for (const auto& [k, v] : s.to_map()) j[k] = v;
  return j;
}

inline json bonds_json(int quad) {
  json list = json::array();
  int passing = 0;
  for (const auto& b : all_orientations(quad)) {
    json o = {{"arcs", json::array()}, {"agreement", b.agreement()}, {"passes", b.valid()}};
    for (const auto& a : b.orientation) o["arcs"].push_back(a.str());
    if (b.valid()) {
      ++passing;
      o["name"] = name_of(b).str();
      o["spans"] = b.spans();
      o["length_equation"] = length_equation(b).str();
    }
    list.push_back(o);
  }
  json pairs = json::array(), spanning = json::array();
  for (BondLetter l : {BondLetter::X, BondLetter::Y, BondLetter::Z}) {
    BondName n{quad, l, false};
    json p = {n.str(), n.conjugate().str()};
    pairs.push_back(p);
    if (named_bond(n).spans() && named_bond(n.conjugate()).spans()) spanning.push_back(p);
  }
  return {{"quad", quad},
          {"orientations", list},
          {"passing", passing},
          {"conjugate_pairs", pairs},
          {"spanning_pairs", spanning}};
}

inline json profiles_json(const std::set<std::array<int, 3>>& s) {
  json j = json::array();
  for (const auto& p : s) j.push_back(std::vector<int>(p.begin(), p.end()));
  return j;
}

inline json mu_json(bool solve) {
  MuSystem sys = derive_mu_system();
  json eqs = json::array();
  std::istringstream lines(sys.canonical());
  for (std::string l; std::getline(lines, l);) eqs.push_back(l);
  json j = {{"equations", eqs}, {"extension_count", sys.extension_count()}};
  if (solve) {
    MuSolution sol = solve_mu_system(sys);
    json fiber = json::array();
    for (const auto& a : sol.assignments) {
      if (a.profile() != std::array<int, 3>{4, 4, 4}) continue;
      json v = json::object();
      for (int quad : {12, 34, 56})
        for (BondLetter l : {BondLetter::X, BondLetter::Y, BondLetter::Z})
          v[std::string(1, letter_char(l)) + std::to_string(quad)] = a.value({quad, l});
      fiber.push_back(v);
    }
    j["solution"] = {{"feasible_assignments", sol.assignments.size()},
                     {"profiles", profiles_json(sol.profiles)},
                     {"profiles_up_to_permutation", profiles_json(sol.sorted_profiles)},
                     {"fiber_444", fiber},
                     {"clipped", sol.clipped}};
  }
  return j;
}

inline SimpleGraph graph_by_name(const std::string& name, std::vector<std::string>& keys) {
  if (name == "edg") {
    EdgeGraph eg = build_edge_graph();
    for (const auto& l : eg.links) keys.push_back(EdgeGraph::key(l));
    return edge_graph_as_simple();
  }
  if (name.rfind("cycle:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(6));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--graph", "bad cycle length in " + name);
    }
    if (n < 3) throw CLI::ValidationError("--graph", "cycle needs at least 3 vertices");
    SimpleGraph g = cycle_graph(n);
    for (const auto& [a, b] : g.edges) keys.push_back(std::to_string(a) + "-" + std::to_string(b));
    return g;
  }
  throw CLI::ValidationError("--graph", "expected edg or cycle:N, got " + name);
}

inline json nap_json(const std::string& name) {
  std::vector<std::string> keys;
  SimpleGraph g = graph_by_name(name, keys);
  auto found = enumerate_nap_colorings(g);
  json list = json::array();
  for (const auto& c : found) {
    json red = json::array(), blue = json::array();
    for (int k = 0; k < g.edge_count(); ++k) (c[k] == Red ? red : blue).push_back(keys[k]);
    json o = {{"red", red}, {"blue", blue}};
    if (name == "edg")
      for (int q : {12, 34, 56})
        if (c == induced_quadrilateral_coloring(q)) o["quadrilateral"] = q;
    list.push_back(o);
  }
  return {{"graph", name}, {"edges", g.edge_count()}, {"count", found.size()}, {"colorings", list}};
}

inline json points_json(const Realization& r) {
  json pts = json::array();
  for (const auto& p : r.points()) pts.push_back({p.x(), p.y(), p.z()});
  return pts;
}

inline double worst_flat_dihedral(const Realization& r) {
  double w = 0;
  for (const auto& e : all_edges()) {
    double a = dihedral_angle(r, e);
    w = std::max(w, std::min(a, std::numbers::pi - a));
  }
  return w;
}

inline json flats_json(const std::vector<FlatPoint>& flats) {
  json list = json::array();
  for (const auto& f : flats)
    list.push_back({{"s", f.s}, {"rms", f.rms}, {"points", points_json(f.r)}, {"max_dihedral_offset", worst_flat_dihedral(f.r)}});
  return {{"count", flats.size()}, {"flats", list}};
}

inline SeedMode parse_mode(const std::string& m) {
  if (m == "line") return SeedMode::Line;
  if (m == "plane") return SeedMode::Plane;
  return SeedMode::Flat;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// built-in example pipeline; returns true when every check holds
inline bool verify_example(std::ostream& out, std::uint64_t seed, double tol) {
  OctLabeling lab = estar_labeling();
  TypeReport rep = classify_octahedron(lab, tol);
  out << "Type I: " << yes_no(rep.type1.satisfied) << ", Type II: " << yes_no(rep.type2.satisfied)
      << ", Type III: " << yes_no(rep.type3.satisfied) << "\n";
  bool ok = rep.type1.satisfied && rep.type2.satisfied && rep.type3.satisfied;

  SeedSpec spec;
  spec.seed = seed;
  Realization r0 = seed_realization(lab, spec);
  double res0 = compatibility_residual(r0, lab);
  out << "line seed residual: " << sci(res0) << "\n";
  ok &= res0 < 1e-10;

  Trajectory t = trace_motion(lab, r0, 200);
  double worst = 0;
  bool rank11 = true;
  for (const auto& s : t.samples) {
    worst = std::max(worst, s.residual);
    rank11 &= s.flex_dim == 1;
  }
  int distinct = 0;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i && fresh; ++j) fresh = !are_congruent(t.samples[i].r, t.samples[j].r, 1e-6);
    distinct += fresh;
  }
  out << "trace: " << t.samples.size() << " samples, " << distinct << " non-congruent, max residual " << sci(worst)
      << ", rank 11 at every sample: " << yes_no(rank11) << "\n";
  ok &= t.samples.size() == 200 && distinct >= 100 && worst < 1e-8 && rank11;

  TraceOptions lo;
  lo.steps = 5000;
  Trajectory loop = trace_motion(lab, r0, lo);
  auto flats = detect_flat(loop);
  double off = 0;
  for (const auto& f : flats) off = std::max(off, worst_flat_dihedral(f.r));
  out << "closed loop: " << yes_no(loop.status == TraceStatus::ClosedLoop) << " after " << loop.samples.size()
      << " samples, flat realizations: " << flats.size() << ", max dihedral offset from 0 or pi: " << sci(off)
      << "\n";
  ok &= loop.status == TraceStatus::ClosedLoop && flats.size() == 2 && off < 1e-5;

  out << "Flexible: " << yes_no(ok) << "\n";
  return ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  double default_tol = kDefaultTol, default_trace_tol = 1e-8;
  if (const char* env = std::getenv("BRICARD_TOL")) {
    try {
      default_tol = default_trace_tol = std::stod(env);
    } catch (const std::logic_error&) {
      err << "error: BRICARD_TOL is not a number: " << env << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Bond calculus, classification and motion tracing for flexible octahedra", "bricard"};
  app.require_subcommand(1);

  std::string input, in_csv, out_path, mode = "line", graph = "edg";
  double tol = default_tol, trace_tol = default_trace_tol, step = 0, flat_tol = 1e-6;
  int steps = 200, quad = 56;
  std::uint64_t seed = 0;
  bool solve = false;

  auto* classify = app.add_subcommand("classify", "report Bricard types; exit 3 when none holds");
  classify->add_option("--input", input, "labeling JSON")->required();
  classify->add_option("--tol", tol, "relative length tolerance")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "print the induced spherical labeling");
  reduce->add_option("--input", input, "labeling JSON")->required();

  auto* bonds = app.add_subcommand("bonds", "list the 16 orientations of a quadrilateral");
  bonds->add_option("--quad", quad, "quadrilateral label")->check(CLI::IsMember({12, 34, 56}))->capture_default_str();

  auto* mu = app.add_subcommand("mu", "print the mu-number system");
  mu->add_flag("--solve", solve, "solve exhaustively and print the profiles");

  auto* nap = app.add_subcommand("nap", "enumerate NAP colorings");
  nap->add_option("--graph", graph, "edg or cycle:N")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "trace a motion from a seed realization");
  trace->add_option("--input", input, "labeling JSON")->required();
  trace->add_option("--mode", mode, "seed mode")->check(CLI::IsMember({"line", "plane", "flat"}))->capture_default_str();
  trace->add_option("--steps", steps, "number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  trace->add_option("--step", step, "arclength step, 0 for 0.01 x mean edge length")->capture_default_str();
  trace->add_option("--tol", trace_tol, "residual tolerance per sample")->capture_default_str();
  trace->add_option("--out", out_path, "CSV path; CSV goes to stdout when omitted");
  trace->add_option("--seed", seed, "randomization seed")->capture_default_str();

  auto* flats = app.add_subcommand("flats", "locate flat realizations in a trajectory CSV");
  flats->add_option("--in", in_csv, "trajectory CSV")->required();
  flats->add_option("--input", input, "labeling JSON; lengths are measured from the first row when omitted");
  flats->add_option("--flat-tol", flat_tol, "plane RMS tolerance relative to mean edge length")->capture_default_str();

  auto* verify = app.add_subcommand("verify-example", "run the built-in flexible example end to end");
  verify->add_option("--seed", seed, "randomization seed")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) {
      TypeReport rep = classify_octahedron(read_labeling(input), tol);
      out << canonical_json(type_report_json(rep));
      return rep.any() ? 0 : kExitNoMotion;
    }
    if (reduce->parsed()) {
      out << canonical_json(spherical_json(induced_labeling(read_labeling(input))));
      return 0;
    }
    if (bonds->parsed()) {
      out << canonical_json(bonds_json(quad));
      return 0;
    }
    if (mu->parsed()) {
      out << canonical_json(mu_json(solve));
      return 0;
    }
    if (nap->parsed()) {
      out << canonical_json(nap_json(graph));
      return 0;
    }
    if (trace->parsed()) {
      OctLabeling lab = read_labeling(input);
      SeedSpec spec;
      spec.mode = parse_mode(mode);
      spec.seed = seed;
      Realization r0 = seed_realization(lab, spec);
      TraceOptions o;
      o.steps = steps;
      o.h = step;
      o.tol = trace_tol;
      Trajectory t = trace_motion(lab, r0, o);
      if (out_path.empty()) {
        write_trajectory_csv(out, t);
      } else {
        std::ofstream f(out_path);
        if (!f) {
          err << "error: cannot write " << out_path << "\n";
          return kExitUsage;
        }
        write_trajectory_csv(f, t);
        json flat_s = json::array();
        for (const auto& s : t.samples)
          if (s.flat) flat_s.push_back(s.s);
        out << canonical_json({{"mode", mode},
                               {"samples", t.samples.size()},
                               {"status", status_name(t.status)},
                               {"h", t.h},
                               {"seed_flex_dim", t.seed_rank.flex_dim},
                               {"flat_samples", flat_s},
                               {"out", out_path}});
      }
      if (t.status == TraceStatus::Rigid) {
        err << "labeling is rigid at the seed\n";
        return kExitNoMotion;
      }
      return t.status == TraceStatus::CorrectorFailed ? kExitUsage : 0;
    }
    if (flats->parsed()) {
      std::ifstream f(in_csv);
      if (!f) throw SchemaError("cannot open " + in_csv);
      std::optional<OctLabeling> lab;
      if (!input.empty()) lab = read_labeling(input);
      out << canonical_json(flats_json(detect_flat(read_trajectory_csv(f, lab), flat_tol)));
      return 0;
    }
    if (verify->parsed()) return verify_example(out, seed, default_tol) ? 0 : kExitUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NoSeedError& e) {
    err << "no seed: " << e.what() << "\n";
    return kExitNoMotion;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bricard::cli
