#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "troprank/trop_matrix.hpp"

namespace testutil {

using troprank::Rational;
using troprank::TropMatrix;

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline TropMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  TropMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = uniform(rng, lo, hi);
  return a;
}

// Each cell is inf with probability inf_pct/100; no row or column is left all inf.
inline TropMatrix random_proper_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi,
                                       int inf_pct) {
  TropMatrix a = random_matrix(rng, m, n, lo, hi);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (uniform(rng, 0, 99) < inf_pct) a(i, j) = troprank::kInf;
  for (std::size_t i = 0; i < m; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) any |= a(i, j).is_finite();
    if (!any) a(i, static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1))) = uniform(rng, lo, hi);
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) any |= a(i, j).is_finite();
    if (!any) a(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(m) - 1)), j) = uniform(rng, lo, hi);
  }
  return a;
}

inline Rational random_rational(std::mt19937& rng, int lo, int hi) {
  return Rational(uniform(rng, lo, hi), uniform(rng, 1, 4));
}

inline troprank::Scaling random_scaling(std::mt19937& rng, std::size_t m, std::size_t n) {
  troprank::Scaling s;
  for (std::size_t i = 0; i < m; ++i) s.row_offsets.push_back(random_rational(rng, -20, 20));
  for (std::size_t j = 0; j < n; ++j) s.col_offsets.push_back(random_rational(rng, -20, 20));
  return s;
}

template <class Rng>
std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testutil
