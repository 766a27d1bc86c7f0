#include "treedyn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace treedyn {

namespace {

std::size_t checked_explicit_size(int radius, const TreeParams& params) {
  const auto n = ball_size(radius, params);
  if (n > kMaxExplicitVertices) {
    throw Error(ErrorKind::InvalidArgument,
                "ball of radius " + std::to_string(radius) + " has " + std::to_string(n) +
                    " vertices, above the explicit storage limit");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

TreeFunction::TreeFunction(TreeParams params, int core_radius, int radius, std::vector<cplx> core,
                           std::vector<cplx> tails)
    : params_(params),
      core_radius_(core_radius),
      radius_(radius),
      core_(std::move(core)),
      tails_(std::move(tails)) {
  if (core_radius_ < 0 || radius_ < core_radius_) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= core_radius <= radius");
  }
  if (core_.size() != checked_explicit_size(core_radius_, params_)) {
    throw Error(ErrorKind::InvalidArgument, "core size does not match ball size");
  }
  const auto expected_tails = static_cast<std::size_t>(class_count() * tail_length());
  if (tails_.size() != expected_tails) {
    throw Error(ErrorKind::InvalidArgument, "tail storage size mismatch");
  }
}

TreeFunction TreeFunction::zero(TreeParams params, int radius) {
  return TreeFunction(params, 0, radius, {0.0},
                      std::vector<cplx>(static_cast<std::size_t>(std::max(radius, 0)), 0.0));
}

TreeFunction TreeFunction::from_entries(TreeParams params, int radius,
                                        std::span<const std::pair<Vertex, cplx>> entries) {
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "radius must be >= 0");
  int core = 0;
  for (const auto& [v, value] : entries) {
    if (v.depth() > radius) {
      throw Error(ErrorKind::InvalidArgument, "entry outside the ball of radius " + std::to_string(radius));
    }
    core = std::max(core, v.depth());
  }
  std::vector<cplx> values(checked_explicit_size(core, params), 0.0);
  std::vector<bool> seen(values.size(), false);
  for (const auto& [v, value] : entries) {
    const auto idx = static_cast<std::size_t>(ball_index(v, params));
    if (seen[idx]) throw Error(ErrorKind::InvalidArgument, "duplicate vertex in entries");
    seen[idx] = true;
    values[idx] = value;
  }
  const auto tails = static_cast<std::size_t>(sphere_size(core, params) * (radius - core));
  return TreeFunction(params, core, radius, std::move(values), std::vector<cplx>(tails, 0.0));
}

TreeFunction TreeFunction::delta(TreeParams params, const Vertex& x, int radius) {
  const std::pair<Vertex, cplx> entry{x, 1.0};
  return from_entries(params, radius, std::span(&entry, 1));
}

TreeFunction TreeFunction::radial_lift(const RadialSequence& r) {
  auto entries = r.entries();
  return TreeFunction(r.params(), 0, r.max_index(), {entries[0]},
                      std::vector<cplx>(entries.begin() + 1, entries.end()));
}

TreeFunction TreeFunction::sample(TreeParams params, int core_radius, int radius, const Sampler& fn) {
  if (core_radius < 0 || radius < core_radius) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= core_radius <= radius");
  }
  std::vector<cplx> core(checked_explicit_size(core_radius, params));
  std::size_t idx = 0;
  for (int n = 0; n <= core_radius; ++n) {
    for (const auto& v : enumerate_sphere(n, params)) core[idx++] = fn(v);
  }
  const int len = radius - core_radius;
  std::vector<cplx> tails;
  tails.reserve(static_cast<std::size_t>(sphere_size(core_radius, params) * len));
  for (const auto& u : enumerate_sphere(core_radius, params)) {
    Vertex v = u;
    for (int j = 1; j <= len; ++j) {
      v = v.child(0);
      tails.push_back(fn(v));
    }
  }
  return TreeFunction(params, core_radius, radius, std::move(core), std::move(tails));
}

std::span<const cplx> TreeFunction::tail(std::int64_t cls) const {
  if (cls < 0 || cls >= class_count()) throw Error(ErrorKind::InvalidArgument, "class index out of range");
  const auto len = static_cast<std::size_t>(tail_length());
  return std::span<const cplx>(tails_).subspan(static_cast<std::size_t>(cls) * len, len);
}

cplx TreeFunction::value(const Vertex& v) const {
  if (v.depth() > radius_) {
    throw Error(ErrorKind::InvalidArgument, "vertex at depth " + std::to_string(v.depth()) +
                                                " outside validity radius " + std::to_string(radius_));
  }
  if (v.depth() <= core_radius_) return core_[static_cast<std::size_t>(ball_index(v, params_))];
  const auto cls = sphere_rank(v.prefix(core_radius_), params_);
  return tail(cls)[static_cast<std::size_t>(v.depth() - core_radius_ - 1)];
}

bool TreeFunction::is_zero() const {
  const auto nz = [](cplx c) { return c != cplx(0.0); };
  return std::none_of(core_.begin(), core_.end(), nz) && std::none_of(tails_.begin(), tails_.end(), nz);
}

double TreeFunction::sup_norm() const {
  double m = 0.0;
  for (const auto c : core_) m = std::max(m, std::abs(c));
  for (const auto c : tails_) m = std::max(m, std::abs(c));
  return m;
}

double TreeFunction::lp_norm(double p) const {
  if (std::isinf(p)) return sup_norm();
  if (!(p >= 1.0)) throw Error(ErrorKind::ExponentOutOfRange, "norm exponent must be >= 1");
  // Accumulate with a common scale to avoid overflow of |f|^p.
  const double scale = sup_norm();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto c : core_) sum += std::pow(std::abs(c) / scale, p);
  const int len = tail_length();
  for (std::int64_t cls = 0; cls < class_count(); ++cls) {
    const auto t = tail(cls);
    double members = 1.0;  // class size at relative depth j
    for (int j = 1; j <= len; ++j) {
      members *= (core_radius_ == 0 && j == 1) ? params_.q() + 1 : params_.q();
      sum += members * std::pow(std::abs(t[static_cast<std::size_t>(j - 1)]) / scale, p);
    }
  }
  return scale * std::pow(sum, 1.0 / p);
}

TreeFunction TreeFunction::restricted(int radius) const {
  if (radius > radius_ || radius < 0) {
    throw Error(ErrorKind::InvalidArgument, "restriction radius must lie in [0, radius()]");
  }
  if (radius >= core_radius_) {
    const int len = radius - core_radius_;
    std::vector<cplx> tails;
    tails.reserve(static_cast<std::size_t>(class_count() * len));
    for (std::int64_t cls = 0; cls < class_count(); ++cls) {
      const auto t = tail(cls);
      tails.insert(tails.end(), t.begin(), t.begin() + len);
    }
    return TreeFunction(params_, core_radius_, radius, core_, std::move(tails));
  }
  const auto n = static_cast<std::size_t>(ball_size(radius, params_));
  return TreeFunction(params_, radius, radius, std::vector<cplx>(core_.begin(), core_.begin() + n), {});
}

TreeFunction TreeFunction::with_core_radius(int core_radius) const {
  if (core_radius < core_radius_ || core_radius > radius_) {
    throw Error(ErrorKind::InvalidArgument, "core radius must lie in [core_radius(), radius()]");
  }
  if (core_radius == core_radius_) return *this;
  std::vector<cplx> core(checked_explicit_size(core_radius, params_));
  std::copy(core_.begin(), core_.end(), core.begin());
  // Depth n vertices below the old core inherit from the class of their depth-M ancestor.
  std::int64_t offset = static_cast<std::int64_t>(core_.size());
  for (int n = core_radius_ + 1; n <= core_radius; ++n) {
    const std::int64_t count = sphere_size(n, params_);
    const std::int64_t per_class = count / class_count();
    for (std::int64_t r = 0; r < count; ++r) {
      core[static_cast<std::size_t>(offset + r)] =
          tail(r / per_class)[static_cast<std::size_t>(n - core_radius_ - 1)];
    }
    offset += count;
  }
  const int len = radius_ - core_radius;
  const std::int64_t new_classes = sphere_size(core_radius, params_);
  const std::int64_t per_class = new_classes / class_count();
  std::vector<cplx> tails;
  tails.reserve(static_cast<std::size_t>(new_classes * len));
  for (std::int64_t r = 0; r < new_classes; ++r) {
    const auto t = tail(r / per_class);
    const auto shift = static_cast<std::size_t>(core_radius - core_radius_);
    tails.insert(tails.end(), t.begin() + static_cast<std::ptrdiff_t>(shift), t.end());
  }
  return TreeFunction(params_, core_radius, radius_, std::move(core), std::move(tails));
}

TreeFunction TreeFunction::extended_by_zero(int new_radius) const {
  if (new_radius < radius_) throw Error(ErrorKind::InvalidArgument, "cannot extend to a smaller radius");
  const int len = new_radius - core_radius_;
  std::vector<cplx> tails;
  tails.reserve(static_cast<std::size_t>(class_count() * len));
  for (std::int64_t cls = 0; cls < class_count(); ++cls) {
    const auto t = tail(cls);
    tails.insert(tails.end(), t.begin(), t.end());
    tails.insert(tails.end(), static_cast<std::size_t>(new_radius - radius_), cplx(0.0));
  }
  return TreeFunction(params_, core_radius_, new_radius, core_, std::move(tails));
}

std::vector<std::pair<Vertex, cplx>> TreeFunction::nonzero_entries(int max_radius) const {
  // Stop below the deepest tail level that holds a nonzero value.
  int deepest = core_radius_;
  const int len = tail_length();
  for (std::size_t i = 0; i < tails_.size(); ++i) {
    if (tails_[i] != cplx(0.0)) deepest = std::max(deepest, core_radius_ + 1 + static_cast<int>(i) % len);
  }
  const int r = std::min({max_radius, radius_, deepest});
  std::vector<std::pair<Vertex, cplx>> out;
  if (r < 0) return out;
  if (r > core_radius_) checked_explicit_size(r, params_);
  for (int n = 0; n <= r; ++n) {
    for (const auto& v : enumerate_sphere(n, params_)) {
      const cplx c = value(v);
      if (c != cplx(0.0)) out.emplace_back(v, c);
    }
  }
  return out;
}

TreeFunction TreeFunction::scaled(cplx factor) const {
  auto core = core_;
  auto tails = tails_;
  for (auto& c : core) c *= factor;
  for (auto& c : tails) c *= factor;
  return TreeFunction(params_, core_radius_, radius_, std::move(core), std::move(tails));
}

namespace {

std::pair<TreeFunction, TreeFunction> aligned(const TreeFunction& f, const TreeFunction& g) {
  if (!(f.params() == g.params())) throw Error(ErrorKind::InvalidArgument, "tree parameters differ");
  const int r = std::min(f.radius(), g.radius());
  auto fa = f.restricted(r);
  auto ga = g.restricted(r);
  const int m = std::max(fa.core_radius(), ga.core_radius());
  return {fa.with_core_radius(m), ga.with_core_radius(m)};
}

template <typename Op>
TreeFunction combine(const TreeFunction& f, const TreeFunction& g, Op op) {
  auto [fa, ga] = aligned(f, g);
  std::vector<cplx> core(fa.core_values().size());
  std::vector<cplx> tails(fa.tail_values().size());
  std::transform(fa.core_values().begin(), fa.core_values().end(), ga.core_values().begin(), core.begin(), op);
  std::transform(fa.tail_values().begin(), fa.tail_values().end(), ga.tail_values().begin(), tails.begin(), op);
  return TreeFunction(fa.params(), fa.core_radius(), fa.radius(), std::move(core), std::move(tails));
}

}  // namespace

TreeFunction operator+(const TreeFunction& f, const TreeFunction& g) {
  return combine(f, g, std::plus<cplx>{});
}

TreeFunction operator-(const TreeFunction& f, const TreeFunction& g) {
  return combine(f, g, std::minus<cplx>{});
}

RadialSequence radialize(const TreeFunction& f) {
  const auto& params = f.params();
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(f.radius() + 1));
  const auto core = f.core_values();
  std::size_t idx = 0;
  for (int n = 0; n <= f.core_radius(); ++n) {
    const auto count = sphere_size(n, params);
    cplx sum = 0.0;
    for (std::int64_t r = 0; r < count; ++r) sum += core[idx++];
    out.push_back(sum / static_cast<double>(count));
  }
  // Each class at relative depth j has the same number of members, so the
  // sphere average is the mean over classes.
  const auto classes = f.class_count();
  for (int j = 1; j <= f.tail_length(); ++j) {
    cplx sum = 0.0;
    for (std::int64_t cls = 0; cls < classes; ++cls) sum += f.tail(cls)[static_cast<std::size_t>(j - 1)];
    out.push_back(sum / static_cast<double>(classes));
  }
  return RadialSequence(params, std::move(out));
}

}  // namespace treedyn
