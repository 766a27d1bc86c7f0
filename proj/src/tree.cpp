#include "treedyn/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace treedyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorKind::ConeTooShallow: return "ConeTooShallow";
    case ErrorKind::PoleAtHalfPeriod: return "PoleAtHalfPeriod";
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::RadiusExhausted: return "RadiusExhausted";
    case ErrorKind::KernelTooShort: return "KernelTooShort";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::ConstantComposition: return "ConstantComposition";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorKind kind) {
  return kind == ErrorKind::NoConvergence || kind == ErrorKind::QuadratureNotConverged ||
         kind == ErrorKind::NoRootFound;
}

TreeParams::TreeParams(int q) : q_(q) {
  if (q < 2) {
    throw Error(ErrorKind::InvalidArgument, "branching parameter q must be >= 2, got " + std::to_string(q));
  }
  log_q_ = std::log(static_cast<double>(q));
  tau_ = 2.0 * std::numbers::pi / log_q_;
}

Vertex Vertex::prefix(int length) const {
  if (length < 0 || length > depth()) {
    throw Error(ErrorKind::InvalidArgument, "prefix length out of range");
  }
  return Vertex(std::vector<int>(word_.begin(), word_.begin() + length));
}

Vertex Vertex::child(int symbol) const {
  auto w = word_;
  w.push_back(symbol);
  return Vertex(std::move(w));
}

Vertex parse_vertex(std::span<const int> word, const TreeParams& params) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int limit = (i == 0) ? params.q() : params.q() - 1;
    if (word[i] < 0 || word[i] > limit) {
      throw Error(ErrorKind::SymbolOutOfRange,
                  "symbol " + std::to_string(word[i]) + " at position " + std::to_string(i) +
                      " outside [0, " + std::to_string(limit) + "]");
    }
  }
  return Vertex(std::vector<int>(word.begin(), word.end()));
}

int common_prefix(const Vertex& x, const Vertex& y) {
  const auto wx = x.word();
  const auto wy = y.word();
  const auto mism = std::mismatch(wx.begin(), wx.end(), wy.begin(), wy.end());
  return static_cast<int>(mism.first - wx.begin());
}

int distance(const Vertex& x, const Vertex& y) {
  return x.depth() + y.depth() - 2 * common_prefix(x, y);
}

std::int64_t sphere_size(int n, const TreeParams& params) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  std::int64_t s = params.q() + 1;
  for (int k = 1; k < n; ++k) {
    if (s > (std::int64_t{1} << 62) / params.q()) {
      throw Error(ErrorKind::InvalidArgument, "sphere size overflows 64-bit integers");
    }
    s *= params.q();
  }
  return s;
}

std::int64_t ball_size(int radius, const TreeParams& params) {
  std::int64_t total = 0;
  for (int n = 0; n <= radius; ++n) total += sphere_size(n, params);
  return total;
}

std::int64_t sphere_rank(const Vertex& v, const TreeParams& params) {
  std::int64_t rank = 0;
  for (int i = 0; i < v.depth(); ++i) {
    rank = (i == 0) ? v.symbol(0) : rank * params.q() + v.symbol(i);
  }
  return rank;
}

Vertex vertex_at(int depth, std::int64_t rank, const TreeParams& params) {
  if (depth < 0 || rank < 0 || rank >= sphere_size(depth, params)) {
    throw Error(ErrorKind::InvalidArgument, "sphere rank out of range");
  }
  std::vector<int> word(static_cast<std::size_t>(depth));
  for (int i = depth - 1; i >= 1; --i) {
    word[static_cast<std::size_t>(i)] = static_cast<int>(rank % params.q());
    rank /= params.q();
  }
  if (depth > 0) word[0] = static_cast<int>(rank);
  return parse_vertex(word, params);
}

std::vector<Vertex> enumerate_sphere(int n, const TreeParams& params) {
  std::vector<Vertex> out;
  if (n < 0) return out;
  const auto count = sphere_size(n, params);
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) out.push_back(vertex_at(n, r, params));
  return out;
}

std::vector<Vertex> enumerate_ball(int radius, const TreeParams& params) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(ball_size(radius, params)));
  for (int n = 0; n <= radius; ++n) {
    auto sphere = enumerate_sphere(n, params);
    std::move(sphere.begin(), sphere.end(), std::back_inserter(out));
  }
  return out;
}

BoundaryCone::BoundaryCone(Vertex anchor) : anchor_(std::move(anchor)) {
  if (anchor_.is_root()) {
    throw Error(ErrorKind::InvalidArgument, "a boundary cone needs a non-root anchor");
  }
}

int horocycle_height(const Vertex& x, const BoundaryCone& cone) {
  if (cone.depth() <= x.depth()) {
    throw Error(ErrorKind::ConeTooShallow, "cone depth " + std::to_string(cone.depth()) +
                                               " must exceed |x| = " + std::to_string(x.depth()));
  }
  return 2 * common_prefix(x, cone.anchor()) - x.depth();
}

Rational cone_measure(const BoundaryCone& cone, const TreeParams& params) {
  return Rational(1, sphere_size(cone.depth(), params));
}

ConeFunction::ConeFunction(TreeParams params, int depth, std::vector<cplx> values)
    : params_(params), depth_(depth), values_(std::move(values)) {
  if (depth_ < 1) throw Error(ErrorKind::InvalidArgument, "cone depth must be >= 1");
  if (static_cast<std::int64_t>(values_.size()) != sphere_size(depth_, params_)) {
    throw Error(ErrorKind::InvalidArgument, "cone function needs one value per depth-" +
                                                std::to_string(depth_) + " anchor");
  }
}

ConeFunction ConeFunction::constant(TreeParams params, int depth, cplx value) {
  return ConeFunction(params, depth,
                      std::vector<cplx>(static_cast<std::size_t>(sphere_size(depth, params)), value));
}

ConeFunction ConeFunction::indicator(TreeParams params, const BoundaryCone& cone) {
  auto f = std::vector<cplx>(static_cast<std::size_t>(sphere_size(cone.depth(), params)), 0.0);
  f[static_cast<std::size_t>(sphere_rank(cone.anchor(), params))] = 1.0;
  return ConeFunction(params, cone.depth(), std::move(f));
}

ConeFunction ConeFunction::sample(TreeParams params, int depth,
                                  const std::function<cplx(const Vertex&)>& fn) {
  std::vector<cplx> values;
  for (const auto& v : enumerate_sphere(depth, params)) values.push_back(fn(v));
  return ConeFunction(params, depth, std::move(values));
}

cplx ConeFunction::value(const Vertex& anchor) const {
  if (anchor.depth() != depth_) {
    throw Error(ErrorKind::InvalidArgument, "anchor depth does not match cone function depth");
  }
  return at(sphere_rank(anchor, params_));
}

cplx integrate_boundary(const ConeFunction& f) {
  // Every cone of one depth carries the same mass 1/N, so the integral is a mean.
  cplx sum = 0.0;
  for (const auto v : f.values()) sum += v;
  return sum * f.cell_measure();
}

ConeFunction refine_cone_function(const ConeFunction& f, int depth) {
  if (depth < f.depth()) {
    throw Error(ErrorKind::InvalidArgument, "refinement depth must be >= current depth");
  }
  const auto& params = f.params();
  const std::int64_t n = sphere_size(depth, params);
  std::int64_t stride = 1;
  for (int k = f.depth(); k < depth; ++k) stride *= params.q();
  std::vector<cplx> values(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) values[static_cast<std::size_t>(r)] = f.at(r / stride);
  return ConeFunction(params, depth, std::move(values));
}

RadialSequence::RadialSequence(TreeParams params, std::vector<cplx> entries)
    : params_(params), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidArgument, "radial sequence needs >= 1 entry");
}

}  // namespace treedyn
