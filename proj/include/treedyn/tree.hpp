#pragma once

// Combinatorics of the homogeneous tree of degree q+1: vertices as reduced
// words, the metric, spheres and balls, boundary cones with their canonical
// measure, horocycle heights, and the finite function containers used by the
// rest of the library.

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "treedyn/error.hpp"

namespace treedyn {

using cplx = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

class TreeParams {
 public:
  explicit TreeParams(int q);

  int q() const noexcept { return q_; }
  double log_q() const noexcept { return log_q_; }
  /// Period of the spectral parameter: 2π / log q.
  double tau() const noexcept { return tau_; }

  bool operator==(const TreeParams& other) const noexcept { return q_ == other.q_; }

 private:
  int q_;
  double log_q_;
  double tau_;
};

/// A vertex addressed by its reduced word from the root o. The first symbol
/// is in [0, q], every later symbol is a child index in [0, q). The empty word
/// is the root.
class Vertex {
 public:
  Vertex() = default;

  static Vertex root() { return Vertex{}; }

  int depth() const noexcept { return static_cast<int>(word_.size()); }
  bool is_root() const noexcept { return word_.empty(); }
  std::span<const int> word() const noexcept { return word_; }
  int symbol(int i) const { return word_.at(static_cast<std::size_t>(i)); }

  /// Ancestor at the given depth (the word prefix).
  Vertex prefix(int length) const;
  /// Appends one symbol; the caller guarantees the range rule.
  Vertex child(int symbol) const;

  auto operator<=>(const Vertex&) const = default;
  bool operator==(const Vertex&) const = default;

 private:
  friend Vertex parse_vertex(std::span<const int> word, const TreeParams& params);
  explicit Vertex(std::vector<int> word) : word_(std::move(word)) {}

  std::vector<int> word_;
};

Vertex parse_vertex(std::span<const int> word, const TreeParams& params);

/// Length of the longest common prefix: the depth of the confluence point.
int common_prefix(const Vertex& x, const Vertex& y);

int distance(const Vertex& x, const Vertex& y);

std::int64_t sphere_size(int n, const TreeParams& params);
std::int64_t ball_size(int radius, const TreeParams& params);

/// Position of a vertex inside its sphere; words of one length are ranked
/// lexicographically (mixed radix, first digit base q+1).
std::int64_t sphere_rank(const Vertex& v, const TreeParams& params);
Vertex vertex_at(int depth, std::int64_t rank, const TreeParams& params);

/// Index of v in the shortlex enumeration of a ball (spheres in order of depth,
/// lexicographic inside each sphere).
inline std::int64_t ball_index(const Vertex& v, const TreeParams& params) {
  return ball_size(v.depth() - 1, params) + sphere_rank(v, params);
}

std::vector<Vertex> enumerate_sphere(int n, const TreeParams& params);
/// All vertices with |word| <= radius in shortlex order.
std::vector<Vertex> enumerate_ball(int radius, const TreeParams& params);

/// The set of boundary rays passing through a non-root anchor vertex.
class BoundaryCone {
 public:
  explicit BoundaryCone(Vertex anchor);

  const Vertex& anchor() const noexcept { return anchor_; }
  int depth() const noexcept { return anchor_.depth(); }

 private:
  Vertex anchor_;
};

/// Busemann height of x with respect to any ray inside the cone. Requires
/// cone.depth() > |x| so that the value does not depend on the ray.
int horocycle_height(const Vertex& x, const BoundaryCone& cone);

Rational cone_measure(const BoundaryCone& cone, const TreeParams& params);

/// Boundary function constant on every cone of a fixed depth. Values are
/// stored by sphere rank of the anchor.
class ConeFunction {
 public:
  ConeFunction(TreeParams params, int depth, std::vector<cplx> values);

  static ConeFunction constant(TreeParams params, int depth, cplx value);
  static ConeFunction indicator(TreeParams params, const BoundaryCone& cone);
  static ConeFunction sample(TreeParams params, int depth,
                             const std::function<cplx(const Vertex&)>& fn);

  const TreeParams& params() const noexcept { return params_; }
  int depth() const noexcept { return depth_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx at(std::int64_t rank) const { return values_.at(static_cast<std::size_t>(rank)); }
  cplx value(const Vertex& anchor) const;
  /// Mass of each cone of this depth as a double.
  double cell_measure() const noexcept { return 1.0 / static_cast<double>(values_.size()); }

 private:
  TreeParams params_;
  int depth_;
  std::vector<cplx> values_;
};

cplx integrate_boundary(const ConeFunction& f);
ConeFunction refine_cone_function(const ConeFunction& f, int depth);

/// Complex sequence indexed by distance from the root.
class RadialSequence {
 public:
  RadialSequence(TreeParams params, std::vector<cplx> entries);

  const TreeParams& params() const noexcept { return params_; }
  int max_index() const noexcept { return static_cast<int>(entries_.size()) - 1; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const cplx> entries() const noexcept { return entries_; }
  cplx operator[](std::size_t n) const { return entries_.at(n); }

 private:
  TreeParams params_;
  std::vector<cplx> entries_;
};

/// A function known on the closed ball B(o, radius).
///
/// Values on B(o, core_radius) are stored explicitly. Below the core sphere
/// the function is constant on each class {descendants of u at relative depth
/// j}, u a vertex of the core sphere; one value per class is stored. Every
/// function on a ball is representable with core_radius == radius; radial
/// functions use core_radius == 0, and Poisson transforms of depth-D cone data
/// use core_radius == D. The Laplacian preserves this class, which is what
/// lets long series in the Laplacian run on deep balls.
class TreeFunction {
 public:
  using Sampler = std::function<cplx(const Vertex&)>;

  TreeFunction(TreeParams params, int core_radius, int radius, std::vector<cplx> core,
               std::vector<cplx> tails);

  static TreeFunction zero(TreeParams params, int radius);
  /// Entries outside the list are zero; every entry must satisfy |word| <= radius.
  static TreeFunction from_entries(TreeParams params, int radius,
                                   std::span<const std::pair<Vertex, cplx>> entries);
  static TreeFunction delta(TreeParams params, const Vertex& x, int radius);
  static TreeFunction radial_lift(const RadialSequence& r);
  /// Evaluates fn on B(o, radius). fn must be invariant under tree
  /// automorphisms fixing B(o, core_radius) pointwise; below the core it is
  /// called once per class, at the representative u·0·0·…·0.
  static TreeFunction sample(TreeParams params, int core_radius, int radius, const Sampler& fn);

  const TreeParams& params() const noexcept { return params_; }
  int radius() const noexcept { return radius_; }
  int core_radius() const noexcept { return core_radius_; }
  int tail_length() const noexcept { return radius_ - core_radius_; }
  std::int64_t class_count() const noexcept { return sphere_size(core_radius_, params_); }

  std::span<const cplx> core_values() const noexcept { return core_; }
  std::span<const cplx> tail_values() const noexcept { return tails_; }
  /// Values of class `cls` (a core-sphere rank) at relative depths 1..tail_length().
  std::span<const cplx> tail(std::int64_t cls) const;

  cplx value(const Vertex& v) const;
  cplx operator()(const Vertex& v) const { return value(v); }

  bool is_zero() const;
  double sup_norm() const;
  /// (Σ_{|x|<=radius} |f(x)|^p)^{1/p}; p = +inf gives the sup norm.
  double lp_norm(double p) const;

  /// Same function with a smaller validity radius.
  TreeFunction restricted(int radius) const;
  /// Same function with more vertices stored explicitly.
  TreeFunction with_core_radius(int core_radius) const;
  /// Declares the function zero on radius() < |x| <= new_radius.
  TreeFunction extended_by_zero(int new_radius) const;

  /// Nonzero values on B(o, min(max_radius, radius())) in shortlex order.
  std::vector<std::pair<Vertex, cplx>> nonzero_entries(int max_radius) const;

  TreeFunction scaled(cplx factor) const;

  friend TreeFunction operator+(const TreeFunction& f, const TreeFunction& g);
  friend TreeFunction operator-(const TreeFunction& f, const TreeFunction& g);

 private:
  TreeParams params_;
  int core_radius_;
  int radius_;
  std::vector<cplx> core_;
  std::vector<cplx> tails_;
};

/// Largest number of explicitly stored vertices accepted by TreeFunction.
inline constexpr std::int64_t kMaxExplicitVertices = std::int64_t{1} << 24;

/// Average over each sphere about the root.
RadialSequence radialize(const TreeFunction& f);

}  // namespace treedyn
