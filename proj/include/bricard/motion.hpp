#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "classifier.hpp"
#include "oct_model.hpp"

namespace bricard {

using RigidityMatrix = Eigen::Matrix<double, 12, 18>;

inline RigidityMatrix rigidity_matrix(const Realization& r) {
  RigidityMatrix m = RigidityMatrix::Zero();
  for (const auto& e : all_edges()) {
    Vec3 d = 2.0 * (r[e.a] - r[e.b]);
    m.block<1, 3>(e.index(), 3 * (e.a - 1)) = d.transpose();
    m.block<1, 3>(e.index(), 3 * (e.b - 1)) = -d.transpose();
  }
  return m;
}

struct RankOptions {
  double rank_tol = kDefaultTol;    // relative to the largest singular value
  double compat_tol = 1e-6;         // relative to the mean edge length
  double coincide_tol = 1e-9;       // relative to the mean edge length
};

struct RankReport {
  int rank = 0;
  int flex_dim = 0;
  bool degenerate = false;  // two realized points coincide
  Eigen::Matrix<double, 12, 1> singular_values;
};

inline double min_point_distance(const Realization& r) {
  double m = INFINITY;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) m = std::min(m, r.distance(i, j));
  return m;
}

inline RankReport rigidity_rank(const Realization& r, const OctLabeling& lab, const RankOptions& opt = {}) {
  double scale = lab.mean_length();
  if (!(compatibility_residual(r, lab) < opt.compat_tol * scale))
    throw PreconditionError("rigidity_rank: realization is not compatible with the labeling");
  RankReport rep;
  rep.degenerate = min_point_distance(r) < opt.coincide_tol * scale;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rigidity_matrix(r));
  rep.singular_values = svd.singularValues();
  double cut = opt.rank_tol * rep.singular_values(0);
  for (int k = 0; k < 12; ++k) rep.rank += rep.singular_values(k) > cut;
  rep.flex_dim = 12 - rep.rank;
  return rep;
}

inline RankReport rigidity_rank(const Realization& r, const OctLabeling& lab, double tol) {
  RankOptions o;
  o.rank_tol = tol;
  return rigidity_rank(r, lab, o);
}

// RMS distance of the six points to their best-fit plane
inline double plane_rms(const Realization& r) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : r.points()) c += p;
  c /= 6.0;
  Eigen::Matrix<double, 6, 3> m;
  for (int i = 0; i < 6; ++i) m.row(i) = (r.points()[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(m)};
  return svd.singularValues()(2) / std::sqrt(6.0);
}

inline double dihedral_angle(const Realization& r, const Edge& edge) {
  int i = edge.a, j = edge.b;
  std::array<int, 2> wings{};
  int n = 0;
  for (int k = 1; k <= 6; ++k)
    if (k != i && k != j && k != partner(i) && k != partner(j)) wings[n++] = k;
  Vec3 axis = r[j] - r[i];
  double len = axis.norm();
  if (len == 0.0) throw DomainError("dihedral_angle: edge has zero length");
  axis /= len;
  std::array<Vec3, 2> h;
  for (int k = 0; k < 2; ++k) {
    Vec3 d = r[wings[k]] - r[i];
    h[k] = d - d.dot(axis) * axis;
    if (h[k].norm() <= 1e-12 * std::max(len, d.norm()))
      throw DomainError("dihedral_angle: degenerate face at edge " + edge.key());
  }
  double c = h[0].dot(h[1]) / (h[0].norm() * h[1].norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// reflect the apex across the plane of its four neighbours and put the image at the partner vertex
inline Realization reduce_mirror_vertex(const Realization& r, VertexId apex, double tol = kDefaultTol) {
  Pyramid p = pyramid(apex);
  Vec3 c = Vec3::Zero();
  for (int w : p.w) c += r[w];
  c /= 4.0;
  Eigen::Matrix<double, 4, 3> m;
  for (int k = 0; k < 4; ++k) m.row(k) = (r[p.w[k]] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m), Eigen::ComputeFullV);
  if (svd.singularValues()(2) / 2.0 > tol)
    throw PreconditionError("reduce_mirror_vertex: base vertices are not coplanar");
  if (svd.singularValues()(1) <= tol) throw PreconditionError("reduce_mirror_vertex: base vertices are collinear");
  Vec3 n = svd.matrixV().col(2);
  Vec3 a = r[apex];
  Vec3 img = a - 2.0 * (a - c).dot(n) * n;
  return r.with_point(partner(apex), img);
}

// ---- pinned coordinates -------------------------------------------------
// vertex 1 at the origin, 3 on the +x axis, 5 in the upper xy half-plane;
// unknowns u = (x3, x5, y5, p2, p4, p6)

using Pinned = Eigen::Matrix<double, 12, 1>;
using PinnedJacobian = Eigen::Matrix<double, 12, 12>;

inline Realization pin(const Realization& r) {
  Vec3 e1 = r[3] - r[1];
  if (e1.norm() == 0.0) throw DomainError("pin: vertices 1 and 3 coincide");
  e1.normalize();
  Vec3 d = r[5] - r[1];
  Vec3 e2 = d - d.dot(e1) * e1;
  if (e2.norm() <= 1e-14 * d.norm()) throw DomainError("pin: vertices 1, 3, 5 are collinear");
  e2.normalize();
  Vec3 e3 = e1.cross(e2);
  Eigen::Matrix3d rot;
  rot.row(0) = e1.transpose();
  rot.row(1) = e2.transpose();
  rot.row(2) = e3.transpose();
  Vec3 o = r[1];
  return r.transformed([&](const Vec3& p) -> Vec3 { return rot * (p - o); });
}

inline Pinned to_pinned(const Realization& pinned) {
  Pinned u;
  u << pinned[3].x(), pinned[5].x(), pinned[5].y(), pinned[2], pinned[4], pinned[6];
  return u;
}

inline Realization from_pinned(const Pinned& u) {
  return Realization({Vec3::Zero(), u.segment<3>(3), Vec3(u(0), 0, 0), u.segment<3>(6), Vec3(u(1), u(2), 0),
                      u.segment<3>(9)});
}

inline Eigen::Matrix<double, 12, 1> pinned_residual(const Pinned& u, const OctLabeling& lab) {
  Realization r = from_pinned(u);
  Eigen::Matrix<double, 12, 1> f;
  for (const auto& e : all_edges()) {
    double l = lab.length(e);
    f(e.index()) = (r[e.a] - r[e.b]).squaredNorm() - l * l;
  }
  return f;
}

inline PinnedJacobian pinned_jacobian(const Pinned& u) {
  RigidityMatrix full = rigidity_matrix(from_pinned(u));
  static const std::array<int, 12> cols = {6, 12, 13, 3, 4, 5, 9, 10, 11, 15, 16, 17};
  PinnedJacobian j;
  for (int k = 0; k < 12; ++k) j.col(k) = full.col(cols[k]);
  return j;
}

inline Pinned pinned_tangent(const Pinned& u) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(pinned_jacobian(u)), Eigen::ComputeFullV);
  return svd.matrixV().col(11);
}

// Gauss-Newton on F(u) = 0, t.(u - anchor) = 0
inline std::optional<Pinned> correct(const Pinned& guess, const Pinned& anchor, const Pinned& t, const OctLabeling& lab,
                                     int max_iter, double tol) {
  Pinned u = guess;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::Matrix<double, 13, 1> f;
    f.head<12>() = pinned_residual(u, lab);
    f(12) = t.dot(u - anchor);
    Eigen::Matrix<double, 13, 12> j;
    j.topRows<12>() = pinned_jacobian(u);
    j.row(12) = t.transpose();
    Pinned du = Eigen::MatrixXd(j).completeOrthogonalDecomposition().solve(Eigen::VectorXd(-f));
    if (!du.allFinite()) return std::nullopt;
    u += du;
    if (compatibility_residual(from_pinned(u), lab) < tol && std::abs(t.dot(u - anchor)) < tol) return u;
  }
  return std::nullopt;
}

struct TrajectorySample {
  double s = 0;
  Realization r;
  double residual = 0;
  int flex_dim = 0;
  bool flat = false;
};

enum class TraceStatus { Complete, ClosedLoop, Rigid, CorrectorFailed };

inline const char* status_name(TraceStatus s) {
  switch (s) {
    case TraceStatus::Complete: return "complete";
    case TraceStatus::ClosedLoop: return "closed";
    case TraceStatus::Rigid: return "rigid";
    default: return "corrector-failed";
  }
}

struct Trajectory {
  OctLabeling labeling;
  std::vector<TrajectorySample> samples;
  TraceStatus status = TraceStatus::Complete;
  double h = 0;
  RankReport seed_rank;
};

struct TraceOptions {
  int steps = 200;
  double h = 0;           // 0 picks 0.01 x mean edge length
  double tol = 1e-8;      // sample residual bound
  int max_corrector = 25;
  double flat_tol = 1e-6;  // plane RMS relative to mean edge length
  double rank_tol = kDefaultTol;
  bool stop_on_loop = true;
};

inline Trajectory trace_motion(const OctLabeling& lab, const Realization& seed, const TraceOptions& opt) {
  double scale = lab.mean_length();
  double h = opt.h > 0 ? opt.h : 0.01 * scale;
  double newton_tol = std::min(opt.tol, 1e-11 * scale);
  Trajectory traj{lab, {}, TraceStatus::Complete, h, {}};

  Realization p0 = pin(seed);
  if (!(compatibility_residual(p0, lab) < opt.tol))
    throw PreconditionError("trace_motion: seed is not compatible with the labeling");
  RankOptions ro;
  ro.rank_tol = opt.rank_tol;
  traj.seed_rank = rigidity_rank(p0, lab, ro);
  if (traj.seed_rank.flex_dim == 0) {
    traj.status = TraceStatus::Rigid;
    return traj;
  }

  auto record = [&](const Pinned& u, double s) {
    Realization r = from_pinned(u);
    TrajectorySample smp{s, r, compatibility_residual(r, lab), rigidity_rank(r, lab, ro).flex_dim,
                         plane_rms(r) < opt.flat_tol * scale};
    traj.samples.push_back(smp);
  };

  Pinned u0 = to_pinned(p0);
  Pinned u = u0;
  Pinned t = pinned_tangent(u);
  if (traj.seed_rank.flex_dim > 1) {
    // branch point (e.g. a flat seed): probe along each kernel direction, then aim along the secant
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(pinned_jacobian(u0)), Eigen::ComputeFullV);
    bool found = false;
    for (int k = 11; k >= 12 - traj.seed_rank.flex_dim && !found; --k)
      for (double sg : {1.0, -1.0}) {
        Pinned d = sg * svd.matrixV().col(k);
        Pinned guess = u0 + h * d;
        auto p = correct(guess, guess, d, lab, 2 * opt.max_corrector, newton_tol);
        if (!p || (*p - u0).norm() > 10.0 * h) continue;
        if (rigidity_rank(from_pinned(*p), lab, ro).flex_dim != 1) continue;
        t = (*p - u0).normalized();
        found = true;
        break;
      }
  }
  // deterministic starting direction: first sizeable component positive
  for (int k = 0; k < 12; ++k)
    if (std::abs(t(k)) > 1e-8) {
      if (t(k) < 0) t = -t;
      break;
    }
  double s = 0;
  record(u, s);

  while (static_cast<int>(traj.samples.size()) < opt.steps) {
    double step = h;
    std::optional<Pinned> next;
    while (step >= h / 1024.0) {
      Pinned guess = u + step * t;
      next = correct(guess, guess, t, lab, opt.max_corrector, newton_tol);
      if (next && (*next - guess).norm() < 0.5 * step) break;
      next.reset();
      step /= 2.0;
    }
    if (!next) {
      traj.status = TraceStatus::CorrectorFailed;
      break;
    }
    Pinned tn = pinned_tangent(*next);
    if (tn.dot(t) < 0) tn = -tn;
    s += (*next - u).norm();
    u = *next;
    t = tn;
    record(u, s);
    if (opt.stop_on_loop && s > 10.0 * h && (u - u0).norm() < 0.75 * h) {
      traj.status = TraceStatus::ClosedLoop;
      break;
    }
  }
  return traj;
}

inline Trajectory trace_motion(const OctLabeling& lab, const Realization& seed, int steps, double h = 0,
                               double tol = 1e-8) {
  TraceOptions o;
  o.steps = steps;
  o.h = h;
  o.tol = tol;
  return trace_motion(lab, seed, o);
}

// ---- flat detection -----------------------------------------------------

struct FlatPoint {
  double s;
  Realization r;
  double rms;
};

namespace detail {

// point on the motion at arclength offset d from sample u along its tangent
struct ArcWalker {
  const OctLabeling& lab;
  Pinned u, t;
  double newton_tol;

  std::optional<Pinned> at(double d) const {
    Pinned guess = u + d * t;
    return correct(guess, guess, t, lab, 50, newton_tol);
  }
};

inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

// minimum-norm Gauss-Newton with backtracking; returns the final residual norm
template <class Fn>
double least_squares(Eigen::VectorXd& x, Fn&& fn, int max_iter = 200) {
  Eigen::VectorXd f;
  Eigen::MatrixXd j;
  fn(x, f, j);
  double cost = f.norm();
  for (int it = 0; it < max_iter && cost > 1e-15; ++it) {
    Eigen::VectorXd dx = j.completeOrthogonalDecomposition().solve(-f);
    if (!dx.allFinite()) break;
    double a = 1.0;
    bool moved = false;
    while (a > 1e-6) {
      Eigen::VectorXd xn = x + a * dx;
      Eigen::VectorXd fn2;
      Eigen::MatrixXd jn;
      fn(xn, fn2, jn);
      if (fn2.norm() < cost) {
        x = xn;
        f = fn2;
        j = jn;
        cost = f.norm();
        moved = true;
        break;
      }
      a /= 2.0;
    }
    if (!moved) break;
  }
  return cost;
}

// F(x) = squared distances minus squared lengths over listed edges, with points given by `place`
template <class Place>
void distance_system(const Eigen::VectorXd& x, const std::vector<Edge>& rows, const OctLabeling& lab, Place&& place,
                     Eigen::VectorXd& f, Eigen::MatrixXd& j) {
  int n = static_cast<int>(x.size());
  std::array<Vec3, 6> p;
  std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6> dp;
  place(x, p, dp);
  f.resize(rows.size());
  j.resize(rows.size(), n);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Edge& e = rows[k];
    Vec3 d = p[e.a - 1] - p[e.b - 1];
    double l = lab.length(e);
    f(k) = d.squaredNorm() - l * l;
    j.row(k) = 2.0 * d.transpose() * (dp[e.a - 1] - dp[e.b - 1]);
  }
}

}  // namespace detail

// nearest exactly planar realization, solved in the best-fit plane of r
inline std::optional<Realization> polish_flat(const Realization& r, const OctLabeling& lab) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : r.points()) c += p;
  c /= 6.0;
  Eigen::Matrix<double, 6, 3> m;
  for (int i = 0; i < 6; ++i) m.row(i) = (r.points()[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m), Eigen::ComputeFullV);
  Vec3 e1 = svd.matrixV().col(0), e2 = svd.matrixV().col(1);
  Eigen::VectorXd x(12);
  for (int i = 0; i < 6; ++i) {
    x(2 * i) = (r.points()[i] - c).dot(e1);
    x(2 * i + 1) = (r.points()[i] - c).dot(e2);
  }
  std::vector<Edge> rows(all_edges().begin(), all_edges().end());
  auto place = [&](const Eigen::VectorXd& y, std::array<Vec3, 6>& p,
                   std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6>& dp) {
    for (int i = 0; i < 6; ++i) {
      p[i] = c + y(2 * i) * e1 + y(2 * i + 1) * e2;
      dp[i] = Eigen::MatrixXd::Zero(3, 12);
      dp[i].col(2 * i) = e1;
      dp[i].col(2 * i + 1) = e2;
    }
  };
  detail::least_squares(x, [&](const Eigen::VectorXd& y, Eigen::VectorXd& f, Eigen::MatrixXd& j) {
    detail::distance_system(y, rows, lab, place, f, j);
  });
  std::array<Vec3, 6> p;
  std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6> dp;
  place(x, p, dp);
  Realization out(p);
  if (!(compatibility_residual(out, lab) < 1e-10 * std::max(1.0, lab.mean_length()))) return std::nullopt;
  return out;
}

// flat parameters along a trajectory: local minima of the plane RMS, refined on the arc
inline std::vector<FlatPoint> detect_flat(const Trajectory& traj, double tol = 1e-6) {
  std::vector<FlatPoint> out;
  const auto& sm = traj.samples;
  int n = static_cast<int>(sm.size());
  if (n == 0) return out;
  const OctLabeling& lab = traj.labeling;
  double scale = lab.mean_length();
  double thresh = tol * scale;
  double newton_tol = 1e-11 * scale;

  std::vector<double> rms(n);
  std::vector<Pinned> us(n);
  for (int i = 0; i < n; ++i) {
    us[i] = to_pinned(pin(sm[i].r));
    rms[i] = plane_rms(sm[i].r);
  }
  double h = traj.h;
  if (h <= 0) {
    // trajectories read back from disk carry no step; use the widest spacing
    for (int i = 1; i < n; ++i) h = std::max(h, (us[i] - us[i - 1]).norm());
    h = std::max(h, 1e-3 * scale);
  }

  auto accept = [&](double s, const Realization& r) {
    double q = plane_rms(r);
    if (q >= thresh) return;
    for (const auto& f : out)
      if (std::abs(f.s - s) < 2.0 * h) return;
    out.push_back({s, r, q});
  };

  for (int i = 0; i < n; ++i) {
    bool left = i == 0 || rms[i] <= rms[i - 1];
    bool right = i == n - 1 || rms[i] <= rms[i + 1];
    if (!(left && right) || rms[i] > 2.0 * h) continue;
    if (rms[i] < thresh) {
      accept(sm[i].s, sm[i].r);
      continue;
    }
    Pinned t = pinned_tangent(us[i]);
    double back = i > 0 ? -(us[i] - us[i - 1]).norm() : 0.0;
    double fwd = i < n - 1 ? (us[i + 1] - us[i]).norm() : 0.0;
    if (i < n - 1 && t.dot(us[i + 1] - us[i]) < 0) t = -t;
    if (i == n - 1 && i > 0 && t.dot(us[i] - us[i - 1]) < 0) t = -t;
    detail::ArcWalker walk{lab, us[i], t, newton_tol};

    // the out-of-plane coordinates of 2, 4, 6 change sign through a flat: bisect on the largest one
    std::optional<double> root;
    for (auto [a, b] : {std::pair{back, 0.0}, std::pair{0.0, fwd}}) {
      if (b - a <= 0 || root) continue;
      auto pa = walk.at(a), pb = walk.at(b);
      if (!pa || !pb) continue;
      int best = -1;
      double mag = 0;
      for (int z : {5, 8, 11}) {
        if ((*pa)(z) * (*pb)(z) < 0 && std::abs((*pa)(z)) + std::abs((*pb)(z)) > mag) {
          best = z;
          mag = std::abs((*pa)(z)) + std::abs((*pb)(z));
        }
      }
      if (best < 0) continue;
      double lo = a, hi = b, flo = (*pa)(best);
      bool ok = true;
      while (hi - lo > 1e-10 && ok) {
        double mid = 0.5 * (lo + hi);
        auto pm = walk.at(mid);
        if (!pm) { ok = false; break; }
        if ((*pm)(best) * flo > 0) { lo = mid; flo = (*pm)(best); }
        else hi = mid;
      }
      if (ok) root = 0.5 * (lo + hi);
    }
    if (!root) {
      auto f = [&](double d) {
        auto p = walk.at(d);
        return p ? plane_rms(from_pinned(*p)) : INFINITY;
      };
      root = detail::golden_min(f, back, fwd, 1e-10);
    }
    auto p = walk.at(*root);
    if (!p) continue;
    Realization near = from_pinned(*p);
    // flats are branch points, so the arc point is only ~sqrt(residual) from the flat;
    // finish with a planar solve started there and keep it if it stays close
    if (auto flat = polish_flat(near, lab)) {
      double moved = 0;
      for (int v = 1; v <= 6; ++v) moved = std::max(moved, ((*flat)[v] - near[v]).norm());
      if (moved < std::sqrt(tol) * scale) accept(sm[i].s + *root, *flat);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.s < y.s; });
  return out;
}

// ---- seeds --------------------------------------------------------------

enum class SeedMode { Line, Plane, Flat };

inline const char* mode_name(SeedMode m) {
  switch (m) {
    case SeedMode::Line: return "line";
    case SeedMode::Plane: return "plane";
    default: return "flat";
  }
}

struct SeedSpec {
  SeedMode mode = SeedMode::Line;
  int fixed_pair = 12;      // plane mode: the pair kept on the mirror plane
  std::uint64_t seed = 0;   // randomization seed for restarts
  int restarts = 200;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline bool seed_acceptable(const Realization& r, const OctLabeling& lab, bool want_flat) {
  double scale = lab.mean_length();
  if (!(compatibility_residual(r, lab) < 1e-10 * std::max(1.0, scale))) return false;
  if (want_flat) return true;
  if (min_point_distance(r) < 0.02 * scale) return false;
  if (plane_rms(r) < 0.02 * scale) return false;
  return true;
}

}  // namespace detail

inline Realization seed_realization(const OctLabeling& lab, const SeedSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  double scale = lab.mean_length();
  auto rnd = [&] { return (2.0 * detail::unit_uniform(rng) - 1.0) * scale; };

  if (spec.mode == SeedMode::Line) {
    // x = (p1, p3, p5); partners are the half-turn images about the z-axis
    const Eigen::Matrix3d half = Eigen::Vector3d(-1, -1, 1).asDiagonal();
    const std::vector<Edge> rows = {Edge{1, 3}, Edge{1, 4}, Edge{1, 5}, Edge{1, 6}, Edge{3, 5}, Edge{3, 6}};
    auto place = [&](const Eigen::VectorXd& x, std::array<Vec3, 6>& p,
                     std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6>& dp) {
      for (int k = 0; k < 3; ++k) {
        int v = 2 * k + 1;
        p[v - 1] = x.segment<3>(3 * k);
        p[v] = half * p[v - 1];
        dp[v - 1] = Eigen::MatrixXd::Zero(3, 9);
        dp[v - 1].block<3, 3>(0, 3 * k) = Eigen::Matrix3d::Identity();
        dp[v] = Eigen::MatrixXd::Zero(3, 9);
        dp[v].block<3, 3>(0, 3 * k) = half;
      }
    };
    for (int attempt = 0; attempt < spec.restarts; ++attempt) {
      Eigen::VectorXd x(9);
      for (int k = 0; k < 9; ++k) x(k) = rnd();
      detail::least_squares(x, [&](const Eigen::VectorXd& y, Eigen::VectorXd& f, Eigen::MatrixXd& j) {
        detail::distance_system(y, rows, lab, place, f, j);
      });
      std::array<Vec3, 6> p;
      std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6> dp;
      place(x, p, dp);
      Realization r(p);
      if (detail::seed_acceptable(r, lab, false) && rigidity_rank(r, lab).flex_dim >= 1) return r;
    }
    throw NoSeedError("line mode: no symmetric realization found");
  }

  if (spec.mode == SeedMode::Plane) {
    int a = spec.fixed_pair / 10, b = a + 1;
    std::vector<int> free;
    for (int v : {1, 3, 5})
      if (v != a) free.push_back(v);
    const Eigen::Matrix3d mirror = Eigen::Vector3d(1, 1, -1).asDiagonal();
    // x = (a.xy, b.xy, c, e) with partners of c and e mirrored across z = 0
    std::vector<Edge> rows = {Edge{a, free[0]}, Edge{a, free[1]}, Edge{b, free[0]}, Edge{b, free[1]},
                              Edge{free[0], free[1]}, Edge{free[0], partner(free[1])}};
    auto place = [&](const Eigen::VectorXd& x, std::array<Vec3, 6>& p,
                     std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6>& dp) {
      for (auto& d : dp) d = Eigen::MatrixXd::Zero(3, 10);
      p[a - 1] = Vec3(x(0), x(1), 0);
      dp[a - 1](0, 0) = dp[a - 1](1, 1) = 1;
      p[b - 1] = Vec3(x(2), x(3), 0);
      dp[b - 1](0, 2) = dp[b - 1](1, 3) = 1;
      for (int k = 0; k < 2; ++k) {
        int v = free[k];
        p[v - 1] = x.segment<3>(4 + 3 * k);
        p[partner(v) - 1] = mirror * p[v - 1];
        dp[v - 1].block<3, 3>(0, 4 + 3 * k) = Eigen::Matrix3d::Identity();
        dp[partner(v) - 1].block<3, 3>(0, 4 + 3 * k) = mirror;
      }
    };
    for (int attempt = 0; attempt < spec.restarts; ++attempt) {
      Eigen::VectorXd x(10);
      for (int k = 0; k < 10; ++k) x(k) = rnd();
      detail::least_squares(x, [&](const Eigen::VectorXd& y, Eigen::VectorXd& f, Eigen::MatrixXd& j) {
        detail::distance_system(y, rows, lab, place, f, j);
      });
      std::array<Vec3, 6> p;
      std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6> dp;
      place(x, p, dp);
      Realization r(p);
      if (detail::seed_acceptable(r, lab, false) && rigidity_rank(r, lab).flex_dim >= 1) return r;
    }
    throw NoSeedError("plane mode: no mirror-symmetric realization found");
  }

  // flat: 1 at the origin, 3 on the x-axis, 5 above it; 2, 4, 6 free in the plane
  double l13 = lab.length(1, 3), l15 = lab.length(1, 5), l35 = lab.length(3, 5);
  double x5 = (l13 * l13 + l15 * l15 - l35 * l35) / (2.0 * l13);
  Vec3 p1(0, 0, 0), p3(l13, 0, 0), p5(x5, std::sqrt(std::max(0.0, l15 * l15 - x5 * x5)), 0);
  std::vector<Edge> rows;
  for (const auto& e : all_edges())
    if (!(e == Edge{1, 3} || e == Edge{1, 5} || e == Edge{3, 5})) rows.push_back(e);
  auto place = [&](const Eigen::VectorXd& x, std::array<Vec3, 6>& p,
                   std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6>& dp) {
    for (auto& d : dp) d = Eigen::MatrixXd::Zero(3, 6);
    p[0] = p1;
    p[2] = p3;
    p[4] = p5;
    for (int k = 0; k < 3; ++k) {
      int v = 2 * k + 2;
      p[v - 1] = Vec3(x(2 * k), x(2 * k + 1), 0);
      dp[v - 1](0, 2 * k) = dp[v - 1](1, 2 * k + 1) = 1;
    }
  };
  std::optional<Realization> fallback;
  for (int attempt = 0; attempt < spec.restarts; ++attempt) {
    Eigen::VectorXd x(6);
    for (int k = 0; k < 6; ++k) x(k) = rnd();
    detail::least_squares(x, [&](const Eigen::VectorXd& y, Eigen::VectorXd& f, Eigen::MatrixXd& j) {
      detail::distance_system(y, rows, lab, place, f, j);
    });
    std::array<Vec3, 6> p;
    std::array<Eigen::Matrix<double, 3, Eigen::Dynamic>, 6> dp;
    place(x, p, dp);
    Realization r(p);
    if (!detail::seed_acceptable(r, lab, true)) continue;
    // prefer a flat with all six points distinct
    if (min_point_distance(r) > 0.02 * scale) return r;
    if (!fallback) fallback = r;
  }
  if (fallback) return *fallback;
  throw NoSeedError("flat mode: no planar realization found");
}

}  // namespace bricard
