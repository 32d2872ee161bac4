#include "troprank/counterexamples.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "troprank/reductions.hpp"

namespace troprank {

namespace {

void require_nu(std::int64_t nu) {
  if (nu < 2) throw std::invalid_argument("nu must be at least 2, got " + std::to_string(nu));
  if (nu > 100000) throw std::invalid_argument("nu too large");
}

std::size_t ix(std::int64_t one_based) { return static_cast<std::size_t>(one_based - 1); }

}  // namespace

TropMatrix gen_cnu(std::int64_t nu) {
  require_nu(nu);
  const std::size_t size = static_cast<std::size_t>(nu + 6);
  TropMatrix c(size, size);
  // (1), (2)
  for (std::int64_t u = 1; u <= nu + 1; ++u)
    for (std::int64_t v = 1; v <= nu + 2; ++v)
      c(ix(u), ix(v)) = std::min({10 * u + 10 * v - 10, 20 * u + 1, 20 * v - 9});
  c(ix(nu), ix(nu + 1)) = 20 * nu - 1;
  c(ix(nu + 1), ix(nu + 1)) = 20 * nu + 11;
  // (3)
  for (std::int64_t u = 1; u <= nu + 1; ++u) {
    c(ix(u), ix(nu + 3)) = 0;
    for (std::int64_t t = nu + 4; t <= nu + 6; ++t) c(ix(u), ix(t)) = 2;
  }
  // (4)
  for (std::int64_t u = 1; u <= nu + 1; ++u) {
    c(ix(nu + 2), ix(u)) = 10 * u - 3;
    c(ix(nu + 3), ix(u)) = 11;
    c(ix(nu + 4), ix(u)) = 2;
    c(ix(nu + 5), ix(u)) = 2;
    c(ix(nu + 6), ix(u)) = 0;
  }
  // (5)
  static const int corner[5][5] = {
      {0, 0, 0, 0, 2}, {0, 0, 2, 0, 2}, {2, 2, 0, 2, 2}, {0, 2, 2, 0, 2}, {0, 2, 2, 2, 0}};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t s = 0; s < 5; ++s) c(ix(nu + 2) + r, ix(nu + 2) + s) = corner[r][s];
  return c;
}

Factorization deleted_column_witness(std::int64_t nu, std::int64_t mu) {
  require_nu(nu);
  if (mu < 1 || mu > nu + 1)
    throw std::invalid_argument("mu must lie in 1.." + std::to_string(nu + 1) + ", got " + std::to_string(mu));
  const std::size_t rows = static_cast<std::size_t>(nu + 6);
  Factorization f{TropMatrix(rows, 4), TropMatrix(4, rows - 1)};
  TropMatrix& A = f.left;
  TropMatrix& B = f.right;

  for (std::int64_t i = 1; i <= nu + 1; ++i) {
    A(ix(i), 0) = 0;
    A(ix(i), 2) = 20 * i + 1;
    A(ix(i), 3) = 20 * i + 1;
    if (i == nu + 1) A(ix(i), 1) = 20 * nu + 21;
    else if (i < mu) A(ix(i), 1) = 10 * i - 7;
    else A(ix(i), 1) = 10 * i - 8;
  }
  const std::int64_t a_corner[5][4] = {
      {0, 0, 0, 10 * nu + 7}, {0, 11, 0, 11}, {2, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t q = 0; q < 4; ++q) A(ix(nu + 2) + r, q) = a_corner[r][q];

  // Column index in the reduced matrix of original column j.
  auto col = [&](std::int64_t j) { return j < mu ? ix(j) : ix(j) - 1; };
  for (std::int64_t j = 1; j <= nu + 1; ++j) {
    if (j == mu) continue;
    B(0, col(j)) = 20 * j - 9;
    B(3, col(j)) = 0;
    B(2, col(j)) = j == 1 ? 11 : 10 * j - 3;
    B(1, col(j)) = (j < mu || j == nu + 1) ? 10 * j - 3 : 10 * j - 2;
  }
  const std::int64_t b_corner[4][5] = {
      {20 * nu + 20, 0, 2, 2, 2}, {20 * nu + 20, 2, 0, 2, 2}, {0, 2, 2, 0, 2}, {0, 2, 2, 2, 0}};
  for (std::size_t q = 0; q < 4; ++q)
    for (std::size_t s = 0; s < 5; ++s) B(q, col(nu + 2) + s) = b_corner[q][s];
  return f;
}

bool MinorCheckReport::all_passed() const {
  return std::all_of(per_mu.begin(), per_mu.end(), [](bool b) { return b; }) && samples_passed == samples;
}

MinorCheckReport minor_rank_le4_check(std::int64_t nu, std::size_t samples, std::uint64_t seed) {
  require_nu(nu);
  const TropMatrix c = gen_cnu(nu);
  MinorCheckReport rep;
  rep.nu = nu;
  std::vector<Factorization> wit;
  for (std::int64_t mu = 1; mu <= nu + 1; ++mu) {
    wit.push_back(deleted_column_witness(nu, mu));
    rep.per_mu.push_back(verify_product(c.without_column(ix(mu)), wit.back()));
  }
  std::mt19937_64 rng(seed);
  const std::size_t size = c.rows();
  std::vector<std::size_t> all(size);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<std::size_t> rows = all, cols = all;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    rows.resize(static_cast<std::size_t>(nu));
    cols.resize(static_cast<std::size_t>(nu));
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    // nu columns cannot cover all of 1..nu+1
    std::int64_t mu = 1;
    while (std::find(cols.begin(), cols.end(), ix(mu)) != cols.end()) ++mu;
    const Factorization& w = wit[ix(mu)];
    std::vector<std::size_t> wcols;
    for (std::size_t j : cols) wcols.push_back(j < ix(mu) ? j : j - 1);
    Factorization restricted{w.left.submatrix(rows, {0, 1, 2, 3}), w.right.submatrix({0, 1, 2, 3}, wcols)};
    ++rep.samples;
    if (verify_product(c.submatrix(rows, cols), restricted)) ++rep.samples_passed;
  }
  return rep;
}

TropMatrix gen_family(std::size_t k, std::int64_t nu) {
  if (k < 4) throw std::invalid_argument("k must be at least 4, got " + std::to_string(k));
  TropMatrix c = gen_cnu(nu);
  if (k == 4) return c;
  for (std::size_t s = 4; s < k; ++s) c = border(c);
  return eliminate_infinity(scale_normalize(c).first);
}

}  // namespace troprank
