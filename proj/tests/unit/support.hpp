#pragma once

#include <complex>
#include <random>
#include <vector>

#include "treedyn/tree.hpp"

namespace support {

using treedyn::cplx;

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000u + salt); }

inline double err(cplx a, cplx b) { return std::abs(a - b); }

// Random finitely supported function on B(o, radius), about 40% of vertices nonzero.
inline treedyn::TreeFunction random_function(const treedyn::TreeParams& params, int radius, std::mt19937_64& g,
                                             bool real_only = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), keep(0.0, 1.0);
  std::vector<std::pair<treedyn::Vertex, cplx>> entries;
  for (const auto& v : treedyn::enumerate_ball(radius, params)) {
    if (keep(g) < 0.4) entries.emplace_back(v, cplx(u(g), real_only ? 0.0 : u(g)));
  }
  if (entries.empty()) entries.emplace_back(treedyn::Vertex::root(), 1.0);
  return treedyn::TreeFunction::from_entries(params, radius, entries);
}

// Radial eigenfunction recurrence for phi_z: phi(0) = 1, phi(1) = 1 - gamma,
// q phi(n+1) = (1 - gamma)(q + 1) phi(n) - phi(n-1).
inline std::vector<cplx> phi_by_recurrence(cplx gamma_value, int q, int n_max) {
  std::vector<cplx> out{1.0, 1.0 - gamma_value};
  while (static_cast<int>(out.size()) <= n_max) {
    const std::size_t n = out.size() - 1;
    out.push_back(((1.0 - gamma_value) * (q + 1.0) * out[n] - out[n - 1]) / static_cast<double>(q));
  }
  out.resize(static_cast<std::size_t>(n_max + 1));
  return out;
}

}  // namespace support
